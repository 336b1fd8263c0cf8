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

#ifndef NOISE_LAB_ALPHABET_H
#define NOISE_LAB_ALPHABET_H

#include <array>
#include <cstdint>
#include <vector>

#include "noise_lab/pauli.h"
#include "noise_lab/subgroup.h"

namespace noise_lab {

/// Per-site error alphabet: a subgroup K_i of each single-site group such that
/// every error of a noise model lies in K = prod_i K_i.
///
/// Moments of a distribution supported on K are invariant under multiplication
/// by K^⊥, so every moment index can be replaced by a canonical representative
/// of its K^⊥ coset (`project`). For the full alphabet the projection is the
/// identity map.
///
/// Letters are site codes: 0=I, 1=X, 2=Z, 3=Y on Pauli sites and 0/1 on bit sites.
class ErrorAlphabet {
   public:
    ErrorAlphabet() = default;
    /// Trivial alphabet: K_i = {identity} everywhere.
    explicit ErrorAlphabet(Ambient ambient);
    static ErrorAlphabet full(Ambient ambient);

    const Ambient &ambient() const { return ambient_; }

    /// Adds `code` at `site` and closes K_site under multiplication.
    void include(size_t site, uint8_t code);
    /// Adds every site letter of `e`.
    void include_element(const GroupElement &e);

    /// Bitmask over letter codes contained in K_site.
    uint8_t letters(size_t site) const { return masks_[site]; }
    bool is_full() const;

    /// Canonical representative of code modulo K_site^⊥ (smallest code in the coset).
    uint8_t project_code(size_t site, uint8_t code) const;
    GroupElement project(const GroupElement &e) const;
    bool is_projected(const GroupElement &e) const;
    /// Non-identity canonical representatives available at `site`.
    std::vector<uint8_t> representatives(size_t site) const;

    /// K_R: errors with letters in the alphabet supported on `region`.
    SubgroupBasis group_on(const Region &region) const;

    bool operator==(const ErrorAlphabet &other) const = default;

   private:
    void rebuild(size_t site);

    Ambient ambient_;
    std::vector<uint8_t> masks_;
    std::vector<std::array<uint8_t, 4>> reps_;
};

}  // namespace noise_lab

#endif
