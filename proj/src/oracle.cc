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

#include "noise_lab/oracle.h"

#include <stdexcept>
#include <string>

#include "noise_lab/errors.h"

namespace noise_lab {
namespace oracle {

namespace {

void check_cap(const Ambient &amb) {
    if (amb.dim() > kOracleCapLog2) {
        throw CapExceeded(
            "Oracle needs a dense table of 2^" + std::to_string(amb.dim()) + " entries; the cap is 2^" +
            std::to_string(kOracleCapLog2) + ".");
    }
}

// Dense index from the printed form of the element, so the oracle does not
// depend on the word layout of GroupElement.
uint64_t dense_index(const GroupElement &e) {
    std::string s = e.str();
    size_t n = e.n_pauli();
    uint64_t idx = 0;
    for (size_t q = 0; q < n; q++) {
        char c = s[q];
        if (c == 'X' || c == 'Y') {
            idx |= uint64_t{1} << q;
        }
        if (c == 'Z' || c == 'Y') {
            idx |= uint64_t{1} << (n + q);
        }
    }
    for (size_t j = 0; j < e.n_bits(); j++) {
        if (s[n + 1 + j] == '1') {
            idx |= uint64_t{1} << (2 * n + j);
        }
    }
    return idx;
}

// +1/-1 pairing of two dense indices, computed site by site.
int sign(uint64_t a, uint64_t b, size_t n, size_t m) {
    int parity = 0;
    for (size_t q = 0; q < n; q++) {
        int ax = (a >> q) & 1, az = (a >> (n + q)) & 1;
        int bx = (b >> q) & 1, bz = (b >> (n + q)) & 1;
        parity ^= (ax & bz) ^ (az & bx);
    }
    for (size_t j = 0; j < m; j++) {
        parity ^= ((a >> (2 * n + j)) & 1) & ((b >> (2 * n + j)) & 1);
    }
    return parity ? -1 : 1;
}

std::vector<uint64_t> group_indices(const SubgroupBasis &b) {
    std::vector<uint64_t> rows;
    for (const auto &r : b.rows()) {
        rows.push_back(dense_index(r));
    }
    if (rows.size() > kOracleCapLog2) {
        throw CapExceeded("Oracle group enumeration exceeds 2^" + std::to_string(kOracleCapLog2) + " elements.");
    }
    std::vector<uint64_t> out;
    for (uint64_t mask = 0; mask < (uint64_t{1} << rows.size()); mask++) {
        uint64_t acc = 0;
        for (size_t k = 0; k < rows.size(); k++) {
            if ((mask >> k) & 1) {
                acc ^= rows[k];
            }
        }
        out.push_back(acc);
    }
    return out;
}

}  // namespace

DistributionTable full_distribution(const NoiseModel &model) {
    const Ambient &amb = model.ambient();
    check_cap(amb);
    DistributionTable cur(amb);
    cur.values()[0] = 1.0;
    for (const auto &ch : model.channels()) {
        DistributionTable next(amb);
        for (const auto &[e, p] : ch.probs) {
            uint64_t shift = dense_index(e);
            for (uint64_t a = 0; a < cur.size(); a++) {
                next.values()[a ^ shift] += p * cur.values()[a];
            }
        }
        cur = std::move(next);
    }
    return cur;
}

double brute_fourier(const DistributionTable &p, const GroupElement &a) {
    const Ambient &amb = p.ambient();
    if (a.ambient() != amb) {
        throw std::invalid_argument("brute_fourier: ambient mismatch.");
    }
    uint64_t ai = dense_index(a);
    double total = 0;
    for (uint64_t b = 0; b < p.size(); b++) {
        double v = p.values()[b];
        if (v != 0.0) {
            total += sign(ai, b, amb.n_pauli, amb.n_bits) * v;
        }
    }
    return total;
}

double coset_logical_channel(const DistributionTable &p, const SubgroupBasis &gauge, const GroupElement &e) {
    if (gauge.ambient() != p.ambient() || e.ambient() != p.ambient()) {
        throw std::invalid_argument("coset_logical_channel: ambient mismatch.");
    }
    auto members = group_indices(gauge);
    uint64_t ei = dense_index(e);
    double total = 0;
    for (uint64_t s : members) {
        total += p.values()[ei ^ s];
    }
    return total / static_cast<double>(members.size());
}

DistributionTable paired_round_distribution(const NoiseModel &model) {
    const Ambient &amb = model.ambient();
    check_cap(amb);
    DistributionTable single = full_distribution(model);
    DistributionTable out(amb);
    uint64_t bit_mask = ((uint64_t{1} << amb.n_bits) - 1) << (2 * amb.n_pauli);
    for (uint64_t first = 0; first < single.size(); first++) {
        double p1 = single.values()[first];
        if (p1 == 0.0) {
            continue;
        }
        for (uint64_t second = 0; second < single.size(); second++) {
            double p2 = single.values()[second];
            if (p2 == 0.0) {
                continue;
            }
            out.values()[second ^ (first & bit_mask)] += p1 * p2;
        }
    }
    return out;
}

std::vector<double> logical_channel_from_moments(
    const DistributionTable &p, const SubgroupBasis &logical, const std::vector<GroupElement> &queries) {
    const Ambient &amb = p.ambient();
    auto members = group_indices(logical);
    std::vector<double> moments;
    moments.reserve(members.size());
    for (uint64_t l : members) {
        double total = 0;
        for (uint64_t b = 0; b < p.size(); b++) {
            if (p.values()[b] != 0.0) {
                total += sign(l, b, amb.n_pauli, amb.n_bits) * p.values()[b];
            }
        }
        moments.push_back(total);
    }
    std::vector<double> out;
    for (const auto &e : queries) {
        uint64_t ei = dense_index(e);
        double total = 0;
        for (size_t k = 0; k < members.size(); k++) {
            total += sign(members[k], ei, amb.n_pauli, amb.n_bits) * moments[k];
        }
        out.push_back(total / static_cast<double>(p.size()));
    }
    return out;
}

}  // namespace oracle
}  // namespace noise_lab
