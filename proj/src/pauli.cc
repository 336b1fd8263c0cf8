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

#include "noise_lab/pauli.h"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace noise_lab {

std::string Ambient::str() const {
    std::stringstream ss;
    ss << "(n_pauli=" << n_pauli << ", n_bits=" << n_bits << ")";
    return ss.str();
}

Region::Region(std::vector<size_t> s) : sites(std::move(s)) {
    std::sort(sites.begin(), sites.end());
    sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
}

Region::Region(std::initializer_list<size_t> s) : Region(std::vector<size_t>(s)) {}

bool Region::contains(size_t site) const {
    return std::binary_search(sites.begin(), sites.end(), site);
}

bool Region::is_subset_of(const Region &other) const {
    return std::includes(other.sites.begin(), other.sites.end(), sites.begin(), sites.end());
}

Region Region::unite(const Region &other) const {
    Region out;
    std::set_union(
        sites.begin(), sites.end(), other.sites.begin(), other.sites.end(), std::back_inserter(out.sites));
    return out;
}

Region Region::complement(const Ambient &ambient) const {
    Region out;
    for (size_t k = 0; k < ambient.num_sites(); k++) {
        if (!contains(k)) {
            out.sites.push_back(k);
        }
    }
    return out;
}

std::string Region::str() const {
    std::stringstream ss;
    ss << "{";
    for (size_t k = 0; k < sites.size(); k++) {
        if (k) {
            ss << ",";
        }
        ss << sites[k];
    }
    ss << "}";
    return ss.str();
}

GroupElement::GroupElement(Ambient ambient)
    : ambient_(ambient),
      x_words_((ambient.n_pauli + 63) / 64),
      words_(2 * x_words_ + (ambient.n_bits + 63) / 64, 0) {
}

GroupElement GroupElement::from_str(std::string_view text) {
    auto bar = text.find('|');
    std::string_view paulis = text.substr(0, bar);
    std::string_view bits = bar == std::string_view::npos ? std::string_view{} : text.substr(bar + 1);
    if (bits.find('|') != std::string_view::npos) {
        throw std::invalid_argument("More than one '|' in group element '" + std::string(text) + "'.");
    }
    GroupElement out(Ambient{paulis.size(), bits.size()});
    for (size_t q = 0; q < paulis.size(); q++) {
        char c = paulis[q];
        if (c == '_') {
            c = 'I';
        }
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
            throw std::invalid_argument(
                "Invalid Pauli character '" + std::string(1, paulis[q]) + "' at position " + std::to_string(q) +
                " in '" + std::string(text) + "'.");
        }
        out.set_pauli(q, c);
    }
    for (size_t j = 0; j < bits.size(); j++) {
        if (bits[j] != '0' && bits[j] != '1') {
            throw std::invalid_argument(
                "Invalid bit character '" + std::string(1, bits[j]) + "' at bit " + std::to_string(j) + " in '" +
                std::string(text) + "'.");
        }
        out.set_bit(j, bits[j] == '1');
    }
    return out;
}

GroupElement GroupElement::from_str(std::string_view text, const Ambient &expected) {
    GroupElement out = from_str(text);
    if (out.ambient() == expected) {
        return out;
    }
    // A bare Pauli string is accepted in an extended ambient as (a, 0).
    if (out.n_bits() == 0 && out.n_pauli() == expected.n_pauli) {
        GroupElement widened(expected);
        for (size_t q = 0; q < expected.n_pauli; q++) {
            widened.set_pauli(q, out.pauli(q));
        }
        return widened;
    }
    throw std::invalid_argument(
        "Length mismatch for '" + std::string(text) + "': expected " + std::to_string(expected.n_pauli) +
        " Pauli sites and " + std::to_string(expected.n_bits) + " bits.");
}

GroupElement GroupElement::single_pauli(const Ambient &ambient, size_t site, char p) {
    GroupElement out(ambient);
    out.set_pauli(site, p);
    return out;
}

GroupElement GroupElement::single_bit(const Ambient &ambient, size_t j) {
    GroupElement out(ambient);
    out.set_bit(j, true);
    return out;
}

char GroupElement::pauli(size_t q) const {
    return "IXZY"[x(q) + 2 * z(q)];
}

void GroupElement::set_pauli(size_t q, char p) {
    switch (p) {
        case 'I':
            set_x(q, false);
            set_z(q, false);
            return;
        case 'X':
            set_x(q, true);
            set_z(q, false);
            return;
        case 'Y':
            set_x(q, true);
            set_z(q, true);
            return;
        case 'Z':
            set_x(q, false);
            set_z(q, true);
            return;
    }
    throw std::invalid_argument("Invalid Pauli character '" + std::string(1, p) + "'.");
}

uint8_t GroupElement::site_code(size_t site) const {
    if (site < ambient_.n_pauli) {
        return x(site) + 2 * z(site);
    }
    return bit(site - ambient_.n_pauli);
}

void GroupElement::set_site_code(size_t site, uint8_t code) {
    if (site < ambient_.n_pauli) {
        set_x(site, code & 1);
        set_z(site, code & 2);
    } else {
        set_bit(site - ambient_.n_pauli, code & 1);
    }
}

bool GroupElement::coord(size_t c) const {
    size_t n = ambient_.n_pauli;
    if (c < n) {
        return x(c);
    }
    if (c < 2 * n) {
        return z(c - n);
    }
    return bit(c - 2 * n);
}

void GroupElement::flip_coord(size_t c) {
    size_t n = ambient_.n_pauli;
    size_t raw = c < n ? c : c < 2 * n ? x_words_ * 64 + (c - n) : 2 * x_words_ * 64 + (c - 2 * n);
    words_[raw >> 6] ^= uint64_t{1} << (raw & 63);
}

bool GroupElement::is_identity() const {
    for (auto w : words_) {
        if (w) {
            return false;
        }
    }
    return true;
}

size_t GroupElement::weight() const {
    size_t total = 0;
    for (size_t k = 0; k < x_words_; k++) {
        total += std::popcount(words_[k] | words_[k + x_words_]);
    }
    for (size_t k = 2 * x_words_; k < words_.size(); k++) {
        total += std::popcount(words_[k]);
    }
    return total;
}

std::string GroupElement::str() const {
    std::string out;
    out.reserve(ambient_.n_pauli + ambient_.n_bits + 1);
    for (size_t q = 0; q < ambient_.n_pauli; q++) {
        out.push_back(pauli(q));
    }
    if (ambient_.n_bits) {
        out.push_back('|');
        for (size_t j = 0; j < ambient_.n_bits; j++) {
            out.push_back(bit(j) ? '1' : '0');
        }
    }
    return out;
}

GroupElement &GroupElement::operator*=(const GroupElement &other) {
    check_same_ambient(*this, other);
    for (size_t k = 0; k < words_.size(); k++) {
        words_[k] ^= other.words_[k];
    }
    return *this;
}

GroupElement GroupElement::operator*(const GroupElement &other) const {
    GroupElement out = *this;
    out *= other;
    return out;
}

bool GroupElement::operator==(const GroupElement &other) const {
    return ambient_ == other.ambient_ && words_ == other.words_;
}

bool GroupElement::operator<(const GroupElement &other) const {
    if (ambient_.n_pauli != other.ambient_.n_pauli) {
        return ambient_.n_pauli < other.ambient_.n_pauli;
    }
    if (ambient_.n_bits != other.ambient_.n_bits) {
        return ambient_.n_bits < other.ambient_.n_bits;
    }
    return words_ < other.words_;
}

size_t GroupElement::hash() const {
    uint64_t h = 0xcbf29ce484222325ULL ^ (ambient_.n_pauli * 0x9E3779B97F4A7C15ULL) ^ ambient_.n_bits;
    for (auto w : words_) {
        h ^= w + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

void check_same_ambient(const GroupElement &a, const GroupElement &b) {
    if (a.ambient() != b.ambient()) {
        throw std::invalid_argument(
            "Ambient mismatch: " + a.ambient().str() + " vs " + b.ambient().str() + ".");
    }
}

GroupElement multiply(const GroupElement &a, const GroupElement &b) {
    return a * b;
}

BicharacterSign bicharacter(const GroupElement &a, const GroupElement &e) {
    check_same_ambient(a, e);
    auto ax = a.x_words(), az = a.z_words(), ex = e.x_words(), ez = e.z_words();
    uint64_t acc = 0;
    for (size_t k = 0; k < ax.size(); k++) {
        acc ^= (ax[k] & ez[k]) ^ (az[k] & ex[k]);
    }
    auto ab = a.bit_words(), eb = e.bit_words();
    for (size_t k = 0; k < ab.size(); k++) {
        acc ^= ab[k] & eb[k];
    }
    return BicharacterSign(std::popcount(acc) & 1);
}

bool is_substring(const GroupElement &b, const GroupElement &a) {
    check_same_ambient(a, b);
    auto bx = b.x_words(), bz = b.z_words(), ax = a.x_words(), az = a.z_words();
    for (size_t k = 0; k < bx.size(); k++) {
        uint64_t sb = bx[k] | bz[k];
        if (((bx[k] ^ ax[k]) | (bz[k] ^ az[k])) & sb) {
            return false;
        }
    }
    auto bb = b.bit_words(), ab = a.bit_words();
    for (size_t k = 0; k < bb.size(); k++) {
        if (bb[k] & ~ab[k]) {
            return false;
        }
    }
    return true;
}

Region support(const GroupElement &a) {
    Region out;
    for (size_t q = 0; q < a.n_pauli(); q++) {
        if (a.x(q) || a.z(q)) {
            out.sites.push_back(q);
        }
    }
    for (size_t j = 0; j < a.n_bits(); j++) {
        if (a.bit(j)) {
            out.sites.push_back(a.n_pauli() + j);
        }
    }
    return out;
}

bool supported_in(const GroupElement &a, const Region &region) {
    for (size_t s : support(a).sites) {
        if (!region.contains(s)) {
            return false;
        }
    }
    return true;
}

GroupElement restrict_element(const GroupElement &a, const Region &region) {
    GroupElement out(a.ambient());
    for (size_t s : region.sites) {
        if (s < a.ambient().num_sites()) {
            out.set_site_code(s, a.site_code(s));
        }
    }
    return out;
}

bool canonical_less(const GroupElement &a, const GroupElement &b) {
    size_t wa = a.weight(), wb = b.weight();
    if (wa != wb) {
        return wa < wb;
    }
    // Rank of each letter in I < X < Y < Z order, indexed by site code (I,X,Z,Y).
    static constexpr uint8_t kRank[4] = {0, 1, 3, 2};
    size_t sites = std::min(a.ambient().num_sites(), b.ambient().num_sites());
    size_t n = std::min(a.n_pauli(), b.n_pauli());
    for (size_t s = 0; s < sites; s++) {
        uint8_t ca = a.site_code(s), cb = b.site_code(s);
        if (s < n) {
            ca = kRank[ca];
            cb = kRank[cb];
        }
        if (ca != cb) {
            return ca < cb;
        }
    }
    return a.ambient().num_sites() < b.ambient().num_sites();
}

}  // namespace noise_lab
