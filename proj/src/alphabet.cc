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

#include "noise_lab/alphabet.h"

#include <algorithm>
#include <stdexcept>

namespace noise_lab {

namespace {

// Commutation of single-site letters: Pauli letters use the symplectic form,
// bit letters the ordinary product.
bool anticommute(bool pauli_site, uint8_t a, uint8_t b) {
    if (!pauli_site) {
        return (a & b & 1) != 0;
    }
    return (((a & 1) & (b >> 1)) ^ ((a >> 1) & (b & 1))) != 0;
}

}  // namespace

ErrorAlphabet::ErrorAlphabet(Ambient ambient)
    : ambient_(ambient), masks_(ambient.num_sites(), 1), reps_(ambient.num_sites()) {
    for (size_t s = 0; s < ambient.num_sites(); s++) {
        rebuild(s);
    }
}

ErrorAlphabet ErrorAlphabet::full(Ambient ambient) {
    ErrorAlphabet out(ambient);
    for (size_t s = 0; s < ambient.num_sites(); s++) {
        out.masks_[s] = s < ambient.n_pauli ? 0xF : 0x3;
        out.rebuild(s);
    }
    return out;
}

void ErrorAlphabet::include(size_t site, uint8_t code) {
    if (site >= masks_.size()) {
        throw std::out_of_range("ErrorAlphabet::include: site out of range.");
    }
    uint8_t mask = masks_[site];
    uint8_t closed = mask;
    for (uint8_t c = 0; c < 4; c++) {
        if (mask & (1 << c)) {
            closed |= 1 << (c ^ code);
        }
    }
    masks_[site] = closed;
    rebuild(site);
}

void ErrorAlphabet::include_element(const GroupElement &e) {
    for (size_t s : support(e).sites) {
        include(s, e.site_code(s));
    }
}

bool ErrorAlphabet::is_full() const {
    for (size_t s = 0; s < masks_.size(); s++) {
        if (masks_[s] != (s < ambient_.n_pauli ? 0xF : 0x3)) {
            return false;
        }
    }
    return true;
}

void ErrorAlphabet::rebuild(size_t site) {
    bool pauli_site = site < ambient_.n_pauli;
    uint8_t ncodes = pauli_site ? 4 : 2;
    uint8_t perp = 0;
    for (uint8_t c = 0; c < ncodes; c++) {
        bool ok = true;
        for (uint8_t k = 0; k < ncodes; k++) {
            if ((masks_[site] >> k & 1) && anticommute(pauli_site, c, k)) {
                ok = false;
            }
        }
        if (ok) {
            perp |= 1 << c;
        }
    }
    for (uint8_t c = 0; c < 4; c++) {
        uint8_t best = c;
        if (c < ncodes) {
            for (uint8_t k = 0; k < ncodes; k++) {
                if (perp >> k & 1) {
                    best = std::min<uint8_t>(best, c ^ k);
                }
            }
        }
        reps_[site][c] = best;
    }
}

uint8_t ErrorAlphabet::project_code(size_t site, uint8_t code) const {
    return reps_[site][code];
}

GroupElement ErrorAlphabet::project(const GroupElement &e) const {
    GroupElement out(e.ambient());
    for (size_t s : support(e).sites) {
        out.set_site_code(s, reps_[s][e.site_code(s)]);
    }
    return out;
}

bool ErrorAlphabet::is_projected(const GroupElement &e) const {
    return project(e) == e;
}

std::vector<uint8_t> ErrorAlphabet::representatives(size_t site) const {
    std::vector<uint8_t> out;
    uint8_t ncodes = site < ambient_.n_pauli ? 4 : 2;
    for (uint8_t c = 1; c < ncodes; c++) {
        if (reps_[site][c] == c) {
            out.push_back(c);
        }
    }
    return out;
}

SubgroupBasis ErrorAlphabet::group_on(const Region &region) const {
    std::vector<GroupElement> gens;
    for (size_t s : region.sites) {
        uint8_t ncodes = s < ambient_.n_pauli ? 4 : 2;
        for (uint8_t c = 1; c < ncodes; c++) {
            if (masks_[s] >> c & 1) {
                GroupElement e(ambient_);
                e.set_site_code(s, c);
                gens.push_back(std::move(e));
            }
        }
    }
    return span(ambient_, gens);
}

}  // namespace noise_lab
