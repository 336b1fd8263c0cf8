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

#include "noise_lab/subgroup.h"

#include <stdexcept>
#include <string>

namespace noise_lab {

namespace {

// In-place reduced row echelon form over F2. Returns the pivot column of each
// surviving row; zero rows are removed.
std::vector<size_t> rref(std::vector<GroupElement> &rows, size_t dim) {
    std::vector<size_t> pivots;
    size_t next = 0;
    for (size_t c = 0; c < dim && next < rows.size(); c++) {
        size_t found = next;
        while (found < rows.size() && !rows[found].coord(c)) {
            found++;
        }
        if (found == rows.size()) {
            continue;
        }
        std::swap(rows[next], rows[found]);
        for (size_t r = 0; r < rows.size(); r++) {
            if (r != next && rows[r].coord(c)) {
                rows[r] *= rows[next];
            }
        }
        pivots.push_back(c);
        next++;
    }
    rows.resize(next);
    return pivots;
}

// Swaps the X and Z blocks, so that the symplectic pairing becomes a dot product.
GroupElement twist(const GroupElement &e) {
    GroupElement out(e.ambient());
    for (size_t q = 0; q < e.n_pauli(); q++) {
        out.set_x(q, e.z(q));
        out.set_z(q, e.x(q));
    }
    for (size_t j = 0; j < e.n_bits(); j++) {
        out.set_bit(j, e.bit(j));
    }
    return out;
}

}  // namespace

SubgroupBasis SubgroupBasis::span(Ambient ambient, std::span<const GroupElement> generators) {
    SubgroupBasis out(ambient);
    for (const auto &g : generators) {
        if (g.ambient() != ambient) {
            throw std::invalid_argument(
                "Generator " + g.str() + " does not live in ambient " + ambient.str() + ".");
        }
        out.rows_.push_back(g);
    }
    rref(out.rows_, ambient.dim());
    return out;
}

SubgroupBasis SubgroupBasis::full(Ambient ambient) {
    std::vector<GroupElement> gens;
    for (size_t c = 0; c < ambient.dim(); c++) {
        GroupElement e(ambient);
        e.flip_coord(c);
        gens.push_back(std::move(e));
    }
    return span(ambient, gens);
}

bool SubgroupBasis::contains(const GroupElement &e) const {
    return coefficients(e).has_value();
}

bool SubgroupBasis::is_subgroup_of(const SubgroupBasis &other) const {
    for (const auto &r : rows_) {
        if (!other.contains(r)) {
            return false;
        }
    }
    return true;
}

std::optional<std::vector<bool>> SubgroupBasis::coefficients(const GroupElement &e) const {
    if (e.ambient() != ambient_) {
        throw std::invalid_argument("Ambient mismatch in SubgroupBasis::coefficients.");
    }
    // Rows are in RREF: the pivot of each row is its lowest set coordinate and
    // no other row has that coordinate set.
    std::vector<bool> coeffs(rows_.size(), false);
    GroupElement rem = e;
    for (size_t i = 0; i < rows_.size(); i++) {
        size_t pivot = 0;
        while (!rows_[i].coord(pivot)) {
            pivot++;
        }
        if (rem.coord(pivot)) {
            rem *= rows_[i];
            coeffs[i] = true;
        }
    }
    if (!rem.is_identity()) {
        return std::nullopt;
    }
    return coeffs;
}

GroupElement SubgroupBasis::element_at(std::span<const bool> coeffs) const {
    GroupElement out(ambient_);
    for (size_t i = 0; i < rows_.size() && i < coeffs.size(); i++) {
        if (coeffs[i]) {
            out *= rows_[i];
        }
    }
    return out;
}

GroupElement SubgroupBasis::element_at(uint64_t coeffs) const {
    GroupElement out(ambient_);
    for (size_t i = 0; i < rows_.size() && i < 64; i++) {
        if ((coeffs >> i) & 1) {
            out *= rows_[i];
        }
    }
    return out;
}

void SubgroupBasis::check_cap(size_t cap_log2) const {
    if (rank() > cap_log2) {
        throw CapExceeded(
            "Enumerating a subgroup of rank " + std::to_string(rank()) + " exceeds the cap of 2^" +
            std::to_string(cap_log2) + " elements.");
    }
}

std::vector<GroupElement> SubgroupBasis::enumerate(size_t cap_log2) const {
    std::vector<GroupElement> out;
    check_cap(cap_log2);
    out.reserve(size_t{1} << rank());
    for_each([&](const GroupElement &e) { out.push_back(e); }, cap_log2);
    return out;
}

SubgroupBasis span(Ambient ambient, std::span<const GroupElement> generators) {
    return SubgroupBasis::span(ambient, generators);
}

SubgroupBasis annihilator(const SubgroupBasis &b) {
    const Ambient &amb = b.ambient();
    size_t dim = amb.dim();
    std::vector<GroupElement> t;
    for (const auto &r : b.rows()) {
        t.push_back(twist(r));
    }
    auto pivots = rref(t, dim);
    std::vector<bool> is_pivot(dim, false);
    for (size_t p : pivots) {
        is_pivot[p] = true;
    }
    std::vector<GroupElement> kernel;
    for (size_t f = 0; f < dim; f++) {
        if (is_pivot[f]) {
            continue;
        }
        GroupElement v(amb);
        v.flip_coord(f);
        for (size_t i = 0; i < t.size(); i++) {
            if (t[i].coord(f)) {
                v.flip_coord(pivots[i]);
            }
        }
        kernel.push_back(std::move(v));
    }
    return span(amb, kernel);
}

SubgroupBasis intersect(const SubgroupBasis &b, const SubgroupBasis &c) {
    if (b.ambient() != c.ambient()) {
        throw std::invalid_argument("Ambient mismatch in intersect.");
    }
    auto bp = annihilator(b);
    auto cp = annihilator(c);
    std::vector<GroupElement> gens = bp.rows();
    gens.insert(gens.end(), cp.rows().begin(), cp.rows().end());
    return annihilator(span(b.ambient(), gens));
}

SubgroupBasis restrict_to_region(const SubgroupBasis &b, const Region &region) {
    const Ambient &amb = b.ambient();
    size_t n = amb.n_pauli;
    std::vector<GroupElement> rows = b.rows();
    std::vector<bool> used(rows.size(), false);
    for (size_t c = 0; c < amb.dim(); c++) {
        size_t site = c < n ? c : c < 2 * n ? c - n : c - n;
        if (region.contains(site)) {
            continue;
        }
        size_t pivot = rows.size();
        for (size_t r = 0; r < rows.size(); r++) {
            if (!used[r] && rows[r].coord(c)) {
                pivot = r;
                break;
            }
        }
        if (pivot == rows.size()) {
            continue;
        }
        used[pivot] = true;
        for (size_t r = 0; r < rows.size(); r++) {
            if (!used[r] && rows[r].coord(c)) {
                rows[r] *= rows[pivot];
            }
        }
    }
    std::vector<GroupElement> kept;
    for (size_t r = 0; r < rows.size(); r++) {
        if (!used[r]) {
            kept.push_back(std::move(rows[r]));
        }
    }
    return span(amb, kept);
}

SubgroupBasis region_group(const Ambient &ambient, const Region &region) {
    std::vector<GroupElement> gens;
    for (size_t s : region.sites) {
        if (s >= ambient.num_sites()) {
            throw std::invalid_argument("Region site " + std::to_string(s) + " outside ambient " + ambient.str());
        }
        if (s < ambient.n_pauli) {
            gens.push_back(GroupElement::single_pauli(ambient, s, 'X'));
            gens.push_back(GroupElement::single_pauli(ambient, s, 'Z'));
        } else {
            gens.push_back(GroupElement::single_bit(ambient, s - ambient.n_pauli));
        }
    }
    return span(ambient, gens);
}

}  // namespace noise_lab
