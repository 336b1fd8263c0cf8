// Copyright 2026 The Noise Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NOISE_LAB_CODE_H
#define NOISE_LAB_CODE_H

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "noise_lab/alphabet.h"
#include "noise_lab/pauli.h"
#include "noise_lab/subgroup.h"

namespace noise_lab {

enum class CodeKind { kStabilizer, kSubsystem, kDataSyndrome };

std::string to_string(CodeKind kind);
CodeKind parse_code_kind(const std::string &text);

/// The four groups describing a code:
///
///     gauge  ⊆ undetectable        (undetectable = meas^⊥)
///     logical ⊇ meas               (logical = gauge^⊥)
///
/// `meas_generators` are the elements whose outcomes are actually read out in
/// each round, in readout order.
struct CodeGroups {
    CodeKind kind = CodeKind::kStabilizer;
    std::string name;
    Ambient ambient;
    SubgroupBasis meas;
    SubgroupBasis gauge;
    SubgroupBasis logical;
    SubgroupBasis undetectable;
    std::vector<GroupElement> meas_generators;
    std::optional<size_t> distance;
    /// Human readable description of the qubit ordering, copied into reports.
    std::string layout;
};

/// Redundant measurement pattern over an underlying stabilizer code. Slot i
/// measures the product of the base generators listed in selection[i].
struct DataSyndromeSpec {
    std::vector<GroupElement> base_generators;
    std::vector<std::vector<size_t>> selection;
};

CodeGroups build_stabilizer_code(std::span<const GroupElement> generators);
CodeGroups build_subsystem_code(std::span<const GroupElement> gauge_generators);
CodeGroups build_data_syndrome_code(const DataSyndromeSpec &spec);

/// True iff every undetectable error supported on `region` is in the gauge group.
bool is_correctable_region(const CodeGroups &code, const Region &region);

/// Same test restricted to errors drawn from `alphabet` (errors in K_R).
/// Reduces to the plain test for the full alphabet.
bool is_correctable_region(const CodeGroups &code, const Region &region, const ErrorAlphabet &alphabet);

/// Minimum weight of an undetectable element outside the gauge group.
/// Returns 0 if there is none.
size_t distance(const CodeGroups &code, size_t cap_log2 = kDefaultEnumerationCapLog2);

/// Known codes: "repetition" (n), "four-qubit" ([[4,1,2]]), "five-qubit"
/// ([[5,1,3]]), "steane", "shor", "bacon-shor" (d), "toric" (d).
CodeGroups builtin_code(const std::string &name, const std::map<std::string, int> &params = {});

/// Qubit index of the horizontal edge leaving vertex (r, c) to the right on
/// the d x d torus. Horizontal edges occupy 0 .. d^2-1, row-major.
size_t toric_h_edge(size_t d, size_t r, size_t c);
/// Qubit index of the vertical edge leaving vertex (r, c) downwards;
/// occupies d^2 .. 2d^2-1, row-major.
size_t toric_v_edge(size_t d, size_t r, size_t c);
/// The four edges bounding face (r, c).
Region toric_plaquette(size_t d, size_t r, size_t c);

}  // namespace noise_lab

#endif
