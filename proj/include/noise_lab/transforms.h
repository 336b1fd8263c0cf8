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

#ifndef NOISE_LAB_TRANSFORMS_H
#define NOISE_LAB_TRANSFORMS_H

#include <cstdint>
#include <functional>
#include <vector>

#include "noise_lab/noise.h"
#include "noise_lab/pauli.h"
#include "noise_lab/subgroup.h"

namespace noise_lab {

inline constexpr size_t kDenseCapLog2 = 24;

/// Dense real function on the whole group. Index bits: X block in [0, n),
/// Z block in [n, 2n), bit block in [2n, 2n+m). Used for distributions and
/// for their transforms alike.
class DistributionTable {
   public:
    DistributionTable() = default;
    /// All-zero table. Throws CapExceeded if the group has more than 2^24 elements.
    explicit DistributionTable(Ambient ambient);

    const Ambient &ambient() const { return ambient_; }
    size_t size() const { return values_.size(); }
    std::vector<double> &values() { return values_; }
    const std::vector<double> &values() const { return values_; }

    uint64_t index_of(const GroupElement &e) const;
    GroupElement element_at(uint64_t index) const;
    double operator[](const GroupElement &e) const { return values_[index_of(e)]; }
    double &operator[](const GroupElement &e) { return values_[index_of(e)]; }

    double total() const;

    static DistributionTable delta(Ambient ambient, const GroupElement &at);
    /// U_B: uniform distribution on the subgroup B.
    static DistributionTable uniform_on(const SubgroupBasis &b);
    /// Φ_B: indicator function of the subgroup B.
    static DistributionTable indicator_of(const SubgroupBasis &b);
    /// Impulsive extension of a local channel (zero off its outcomes).
    static DistributionTable from_channel(Ambient ambient, const LocalChannel &ch);

    /// Entries as a moment table (every element, in index order).
    MomentTable to_moment_table() const;

   private:
    Ambient ambient_;
    std::vector<double> values_;
};

/// f̂(a) = Σ_b ⟨a,b⟩ f(b), unnormalized. Fast butterfly; for groups with at
/// most 2^10 elements the result is also checked against the direct sum.
DistributionTable fourier(const DistributionTable &f);
/// f̌(a) = (1/|A|) Σ_b ⟨a,b⟩ f(b).
DistributionTable inverse_fourier(const DistributionTable &f);
/// O(|A|^2) direct sums.
DistributionTable fourier_naive(const DistributionTable &f);
DistributionTable inverse_fourier_naive(const DistributionTable &f);

/// (f ⊛ g)(a) = Σ_b f(b) g(a b).
DistributionTable convolve(const DistributionTable &f, const DistributionTable &g);
DistributionTable convolve_naive(const DistributionTable &f, const DistributionTable &g);

/// In-place Walsh-Hadamard butterfly: v(u) <- Σ_w (-1)^{u·w} v(w).
void walsh_hadamard(std::vector<double> &v);

/// μ(b, a) = (-1)^{|a|-|b|} if b ≤ a, else 0.
int mobius(const GroupElement &b, const GroupElement &a);

/// Canonical moments F(a) for every a in Γ′, stored linearly.
struct CanonicalMomentVector {
    GammaPrime gamma;
    std::vector<double> values;

    double value(const GroupElement &a) const;
};

/// F(a) = Π_{b ≤ a} E(b)^{μ(b,a)} with E supplied as a callback on projected
/// elements. Throws NonPositiveMoment if some needed E(b) is below 1e-12.
CanonicalMomentVector canonical_from_moments(
    const std::function<double(const GroupElement &)> &moment, const GammaPrime &gp);
/// Same, reading E from a table; every projected substring of Γ′ must be present
/// (the identity may be omitted).
CanonicalMomentVector canonical_from_moments(const MomentTable &moments, const GammaPrime &gp);

/// E(a) = Π F(b) over Γ′ elements b ≤ project(a).
double moments_from_canonical(const CanonicalMomentVector &f, const GroupElement &a);

/// Calls f(b) for every substring b ≤ a (including the identity and a).
void for_each_substring(const GroupElement &a, const std::function<void(const GroupElement &)> &f);

}  // namespace noise_lab

#endif
