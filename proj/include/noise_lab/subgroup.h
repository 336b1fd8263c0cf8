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

#ifndef NOISE_LAB_SUBGROUP_H
#define NOISE_LAB_SUBGROUP_H

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "noise_lab/errors.h"
#include "noise_lab/pauli.h"

namespace noise_lab {

/// Default cap on log2 of the number of enumerated elements.
inline constexpr size_t kDefaultEnumerationCapLog2 = 24;

/// A subgroup of the ambient group given by an F2 basis in reduced row-echelon
/// form. Columns are ordered X block, Z block, bit block, so two bases span
/// the same subgroup iff they are equal.
class SubgroupBasis {
   public:
    SubgroupBasis() = default;
    explicit SubgroupBasis(Ambient ambient) : ambient_(ambient) {}

    /// Row reduces `generators` into normal form.
    static SubgroupBasis span(Ambient ambient, std::span<const GroupElement> generators);
    /// The whole ambient group.
    static SubgroupBasis full(Ambient ambient);

    const Ambient &ambient() const { return ambient_; }
    const std::vector<GroupElement> &rows() const { return rows_; }
    size_t rank() const { return rows_.size(); }

    bool contains(const GroupElement &e) const;
    /// True iff every row of this basis lies in `other`.
    bool is_subgroup_of(const SubgroupBasis &other) const;
    /// Coefficients c with e = prod_i rows[i]^c_i, or nullopt if e is not in the subgroup.
    std::optional<std::vector<bool>> coefficients(const GroupElement &e) const;

    /// Product of the rows selected by `coeffs`.
    GroupElement element_at(std::span<const bool> coeffs) const;
    GroupElement element_at(uint64_t coeffs) const;

    /// Calls f(element) for all 2^rank elements in Gray-code order, starting at
    /// the identity. Throws CapExceeded when rank exceeds `cap_log2`.
    template <typename F>
    void for_each(F &&f, size_t cap_log2 = kDefaultEnumerationCapLog2) const {
        check_cap(cap_log2);
        GroupElement cur(ambient_);
        f(static_cast<const GroupElement &>(cur));
        uint64_t total = uint64_t{1} << rank();
        for (uint64_t k = 1; k < total; k++) {
            cur *= rows_[std::countr_zero(k)];
            f(static_cast<const GroupElement &>(cur));
        }
    }

    /// Materialized enumeration (same order as for_each).
    std::vector<GroupElement> enumerate(size_t cap_log2 = kDefaultEnumerationCapLog2) const;

    bool operator==(const SubgroupBasis &other) const = default;

   private:
    void check_cap(size_t cap_log2) const;

    Ambient ambient_;
    std::vector<GroupElement> rows_;
};

/// Reduced basis of the subgroup generated by `generators`.
SubgroupBasis span(Ambient ambient, std::span<const GroupElement> generators);

/// All elements pairing to +1 with every element of `b`.
SubgroupBasis annihilator(const SubgroupBasis &b);

/// b ∩ c, computed as the annihilator of span(b^⊥ ∪ c^⊥).
SubgroupBasis intersect(const SubgroupBasis &b, const SubgroupBasis &c);

/// {e in b : supp(e) ⊆ region}, by elimination of the coordinates outside the region.
SubgroupBasis restrict_to_region(const SubgroupBasis &b, const Region &region);

/// The subgroup A_R of all elements supported in `region`.
SubgroupBasis region_group(const Ambient &ambient, const Region &region);

}  // namespace noise_lab

#endif
