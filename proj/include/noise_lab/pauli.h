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

#ifndef NOISE_LAB_PAULI_H
#define NOISE_LAB_PAULI_H

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace noise_lab {

/// Shape of the group Pauli^n x F2^m. Pauli sites come first in the flat site
/// index space, bit sites follow at indices n_pauli .. n_pauli + n_bits - 1.
struct Ambient {
    size_t n_pauli = 0;
    size_t n_bits = 0;

    size_t num_sites() const { return n_pauli + n_bits; }
    /// Dimension of the group as an F2 vector space.
    size_t dim() const { return 2 * n_pauli + n_bits; }
    bool operator==(const Ambient &other) const = default;
    std::string str() const;
};

/// Sign of the bicharacter pairing; +1 for commuting elements.
class BicharacterSign {
   public:
    constexpr BicharacterSign() = default;
    constexpr explicit BicharacterSign(bool negative) : negative_(negative) {}

    constexpr int value() const { return negative_ ? -1 : +1; }
    constexpr bool is_negative() const { return negative_; }
    constexpr BicharacterSign operator*(BicharacterSign other) const {
        return BicharacterSign(negative_ != other.negative_);
    }
    constexpr bool operator==(const BicharacterSign &other) const = default;

   private:
    bool negative_ = false;
};

/// A sorted set of flat site indices.
struct Region {
    std::vector<size_t> sites;

    Region() = default;
    Region(std::vector<size_t> sites);
    Region(std::initializer_list<size_t> sites);

    bool contains(size_t site) const;
    bool empty() const { return sites.empty(); }
    size_t size() const { return sites.size(); }
    bool is_subset_of(const Region &other) const;
    Region unite(const Region &other) const;
    Region complement(const Ambient &ambient) const;
    bool operator==(const Region &other) const = default;
    std::string str() const;
};

/// An element of the effective Pauli group extended by syndrome bits.
///
/// Storage is one flat word vector laid out as [x block | z block | bit block],
/// each block word aligned. Phases are never tracked, so the group is abelian
/// and every element is its own inverse.
class GroupElement {
   public:
    GroupElement() = default;
    explicit GroupElement(Ambient ambient);

    /// Parses "XIZZY" or "XIZZY|0110". Characters I,X,Y,Z (and '_' for I) are
    /// accepted on Pauli sites, '0'/'1' on bit sites.
    static GroupElement from_str(std::string_view text);
    /// Same as from_str, but the parsed shape must equal `expected`.
    static GroupElement from_str(std::string_view text, const Ambient &expected);

    /// Single-site element.
    static GroupElement single_pauli(const Ambient &ambient, size_t site, char pauli);
    static GroupElement single_bit(const Ambient &ambient, size_t bit);

    const Ambient &ambient() const { return ambient_; }
    size_t n_pauli() const { return ambient_.n_pauli; }
    size_t n_bits() const { return ambient_.n_bits; }

    bool x(size_t q) const { return get(q); }
    bool z(size_t q) const { return get(x_words_ * 64 + q); }
    bool bit(size_t j) const { return get(2 * x_words_ * 64 + j); }
    void set_x(size_t q, bool v) { set(q, v); }
    void set_z(size_t q, bool v) { set(x_words_ * 64 + q, v); }
    void set_bit(size_t j, bool v) { set(2 * x_words_ * 64 + j, v); }

    /// 'I', 'X', 'Y' or 'Z' on Pauli site q.
    char pauli(size_t q) const;
    void set_pauli(size_t q, char p);
    /// Letter code of a flat site: 0=I,1=X,2=Z,3=Y for Pauli sites; 0/1 for bits.
    uint8_t site_code(size_t site) const;
    void set_site_code(size_t site, uint8_t code);

    /// Coordinate c of the F2 vector, ordered X block, Z block, bit block.
    bool coord(size_t c) const;
    void flip_coord(size_t c);

    bool is_identity() const;
    size_t weight() const;

    std::string str() const;

    GroupElement &operator*=(const GroupElement &other);
    GroupElement operator*(const GroupElement &other) const;
    bool operator==(const GroupElement &other) const;
    bool operator!=(const GroupElement &other) const { return !(*this == other); }
    /// Fast total order on the raw words (for container keys only).
    bool operator<(const GroupElement &other) const;

    std::span<const uint64_t> words() const { return words_; }
    std::span<uint64_t> words() { return words_; }
    std::span<const uint64_t> x_words() const { return {words_.data(), x_words_}; }
    std::span<const uint64_t> z_words() const { return {words_.data() + x_words_, x_words_}; }
    std::span<const uint64_t> bit_words() const {
        return {words_.data() + 2 * x_words_, words_.size() - 2 * x_words_};
    }
    size_t hash() const;

   private:
    bool get(size_t raw) const { return (words_[raw >> 6] >> (raw & 63)) & 1; }
    void set(size_t raw, bool v) {
        uint64_t m = uint64_t{1} << (raw & 63);
        if (v) {
            words_[raw >> 6] |= m;
        } else {
            words_[raw >> 6] &= ~m;
        }
    }

    Ambient ambient_;
    size_t x_words_ = 0;
    std::vector<uint64_t> words_;
};

/// Group product (componentwise XOR). Throws std::invalid_argument on ambient mismatch.
GroupElement multiply(const GroupElement &a, const GroupElement &b);

/// Product bicharacter: commutation sign on Pauli sites times (-1)^(bits_a . bits_e).
BicharacterSign bicharacter(const GroupElement &a, const GroupElement &e);

/// True iff `b` is a substring of `a`: every site of b is identity or equals a's site.
bool is_substring(const GroupElement &b, const GroupElement &a);

/// Flat indices of the non-identity sites.
Region support(const GroupElement &a);

/// True iff supp(a) is contained in `region`.
bool supported_in(const GroupElement &a, const Region &region);

/// Restriction a_R: equal to a on R and identity elsewhere.
GroupElement restrict_element(const GroupElement &a, const Region &region);

/// Canonical presentation order: by weight, then lexicographically on the
/// string form with I < X < Y < Z and 0 < 1.
bool canonical_less(const GroupElement &a, const GroupElement &b);

void check_same_ambient(const GroupElement &a, const GroupElement &b);

}  // namespace noise_lab

template <>
struct std::hash<noise_lab::GroupElement> {
    size_t operator()(const noise_lab::GroupElement &e) const { return e.hash(); }
};

#endif
