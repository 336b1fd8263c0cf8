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

#ifndef NOISE_LAB_ORACLE_H
#define NOISE_LAB_ORACLE_H

#include <cstdint>
#include <vector>

#include "noise_lab/noise.h"
#include "noise_lab/pauli.h"
#include "noise_lab/subgroup.h"
#include "noise_lab/transforms.h"

namespace noise_lab {
namespace oracle {

/// Brute-force reference computations on dense tables. Nothing here calls the
/// transform or moment code of the main pipeline.

inline constexpr size_t kOracleCapLog2 = 20;

/// P = ⊛ P_γ by explicit repeated convolution of the impulsive extensions.
DistributionTable full_distribution(const NoiseModel &model);

/// E(a) = Σ_e ⟨a,e⟩ P(e) by direct summation.
double brute_fourier(const DistributionTable &p, const GroupElement &a);

/// P_L(e) = (1/|G|) Σ_{s ∈ G} P(e s), by enumerating the gauge group.
double coset_logical_channel(const DistributionTable &p, const SubgroupBasis &gauge, const GroupElement &e);

/// Distribution of one paired row: data part of the second round together with
/// the XOR of both rounds' measurement bits, by enumerating both rounds.
DistributionTable paired_round_distribution(const NoiseModel &model);

/// (1/|A|) Σ_{l ∈ L} ⟨l,e⟩ E(l) with E given by brute_fourier, for each query.
std::vector<double> logical_channel_from_moments(
    const DistributionTable &p, const SubgroupBasis &logical, const std::vector<GroupElement> &queries);

}  // namespace oracle
}  // namespace noise_lab

#endif
