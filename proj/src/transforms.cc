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

#include "noise_lab/transforms.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "noise_lab/errors.h"

namespace noise_lab {

namespace {

constexpr size_t kSelfCheckLog2 = 10;

void check_dense(const Ambient &ambient) {
    if (ambient.dim() > kDenseCapLog2) {
        throw CapExceeded(
            "Dense table over " + ambient.str() + " needs 2^" + std::to_string(ambient.dim()) +
            " entries; the cap is 2^" + std::to_string(kDenseCapLog2) + ".");
    }
}

// Exchanges the X and Z blocks of a dense index.
uint64_t swap_xz(uint64_t idx, size_t n) {
    uint64_t low = (uint64_t{1} << n) - 1;
    uint64_t x = idx & low;
    uint64_t z = (idx >> n) & low;
    return (idx & ~((low << n) | low)) | (x << n) | z;
}

int pairing_sign(uint64_t a, uint64_t b, size_t n) {
    return std::popcount(swap_xz(a, n) & b) & 1 ? -1 : 1;
}

void require_same(const DistributionTable &f, const DistributionTable &g) {
    if (f.ambient() != g.ambient()) {
        throw std::invalid_argument("Tables over different ambients.");
    }
}

void self_check(const DistributionTable &fast, const DistributionTable &naive) {
    double scale = 1.0;
    for (double v : naive.values()) {
        scale = std::max(scale, std::abs(v));
    }
    for (size_t k = 0; k < fast.size(); k++) {
        if (std::abs(fast.values()[k] - naive.values()[k]) > 1e-12 * scale) {
            throw std::logic_error("Fast and direct transforms disagree.");
        }
    }
}

}  // namespace

DistributionTable::DistributionTable(Ambient ambient) : ambient_(ambient) {
    check_dense(ambient);
    values_.assign(size_t{1} << ambient.dim(), 0.0);
}

uint64_t DistributionTable::index_of(const GroupElement &e) const {
    if (e.ambient() != ambient_) {
        throw std::invalid_argument("Element " + e.str() + " does not match table ambient " + ambient_.str() + ".");
    }
    uint64_t idx = 0;
    for (size_t c = 0; c < ambient_.dim(); c++) {
        if (e.coord(c)) {
            idx |= uint64_t{1} << c;
        }
    }
    return idx;
}

GroupElement DistributionTable::element_at(uint64_t index) const {
    GroupElement e(ambient_);
    for (size_t c = 0; c < ambient_.dim(); c++) {
        if ((index >> c) & 1) {
            e.flip_coord(c);
        }
    }
    return e;
}

double DistributionTable::total() const {
    double t = 0;
    for (double v : values_) {
        t += v;
    }
    return t;
}

DistributionTable DistributionTable::delta(Ambient ambient, const GroupElement &at) {
    DistributionTable out(ambient);
    out[at] = 1.0;
    return out;
}

DistributionTable DistributionTable::uniform_on(const SubgroupBasis &b) {
    DistributionTable out(b.ambient());
    double w = std::ldexp(1.0, -static_cast<int>(b.rank()));
    b.for_each([&](const GroupElement &e) { out[e] = w; });
    return out;
}

DistributionTable DistributionTable::indicator_of(const SubgroupBasis &b) {
    DistributionTable out(b.ambient());
    b.for_each([&](const GroupElement &e) { out[e] = 1.0; });
    return out;
}

DistributionTable DistributionTable::from_channel(Ambient ambient, const LocalChannel &ch) {
    DistributionTable out(ambient);
    for (const auto &[e, p] : ch.probs) {
        out[e] += p;
    }
    return out;
}

MomentTable DistributionTable::to_moment_table() const {
    MomentTable out;
    for (size_t k = 0; k < values_.size(); k++) {
        out.set(element_at(k), values_[k]);
    }
    return out;
}

void walsh_hadamard(std::vector<double> &v) {
    size_t n = v.size();
    if (n & (n - 1)) {
        throw std::invalid_argument("walsh_hadamard: length must be a power of two.");
    }
    for (size_t h = 1; h < n; h <<= 1) {
        for (size_t i = 0; i < n; i += h << 1) {
            for (size_t j = i; j < i + h; j++) {
                double a = v[j];
                double b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
    }
}

DistributionTable fourier_naive(const DistributionTable &f) {
    DistributionTable out(f.ambient());
    size_t n = f.ambient().n_pauli;
    for (uint64_t a = 0; a < f.size(); a++) {
        double t = 0;
        for (uint64_t b = 0; b < f.size(); b++) {
            t += pairing_sign(a, b, n) * f.values()[b];
        }
        out.values()[a] = t;
    }
    return out;
}

DistributionTable inverse_fourier_naive(const DistributionTable &f) {
    DistributionTable out = fourier_naive(f);
    double inv = 1.0 / static_cast<double>(f.size());
    for (double &v : out.values()) {
        v *= inv;
    }
    return out;
}

DistributionTable fourier(const DistributionTable &f) {
    std::vector<double> w = f.values();
    walsh_hadamard(w);
    DistributionTable out(f.ambient());
    size_t n = f.ambient().n_pauli;
    for (uint64_t a = 0; a < out.size(); a++) {
        out.values()[a] = w[swap_xz(a, n)];
    }
    if (f.ambient().dim() <= kSelfCheckLog2) {
        self_check(out, fourier_naive(f));
    }
    return out;
}

DistributionTable inverse_fourier(const DistributionTable &f) {
    DistributionTable out = fourier(f);
    double inv = 1.0 / static_cast<double>(f.size());
    for (double &v : out.values()) {
        v *= inv;
    }
    return out;
}

DistributionTable convolve_naive(const DistributionTable &f, const DistributionTable &g) {
    require_same(f, g);
    DistributionTable out(f.ambient());
    for (uint64_t a = 0; a < f.size(); a++) {
        double t = 0;
        for (uint64_t b = 0; b < f.size(); b++) {
            t += f.values()[b] * g.values()[a ^ b];
        }
        out.values()[a] = t;
    }
    return out;
}

DistributionTable convolve(const DistributionTable &f, const DistributionTable &g) {
    require_same(f, g);
    std::vector<double> wf = f.values();
    std::vector<double> wg = g.values();
    walsh_hadamard(wf);
    walsh_hadamard(wg);
    for (size_t k = 0; k < wf.size(); k++) {
        wf[k] *= wg[k];
    }
    walsh_hadamard(wf);
    DistributionTable out(f.ambient());
    double inv = 1.0 / static_cast<double>(wf.size());
    for (size_t k = 0; k < wf.size(); k++) {
        out.values()[k] = wf[k] * inv;
    }
    if (f.ambient().dim() <= kSelfCheckLog2) {
        self_check(out, convolve_naive(f, g));
    }
    return out;
}

int mobius(const GroupElement &b, const GroupElement &a) {
    if (!is_substring(b, a)) {
        return 0;
    }
    return ((a.weight() - b.weight()) & 1) ? -1 : 1;
}

void for_each_substring(const GroupElement &a, const std::function<void(const GroupElement &)> &f) {
    auto sites = support(a).sites;
    if (sites.size() >= 63) {
        throw CapExceeded("Too many substrings to enumerate.");
    }
    GroupElement cur(a.ambient());
    f(cur);
    uint64_t total = uint64_t{1} << sites.size();
    for (uint64_t g = 1; g < total; g++) {
        size_t s = sites[std::countr_zero(g)];
        cur.set_site_code(s, cur.site_code(s) ? 0 : a.site_code(s));
        f(cur);
    }
}

double CanonicalMomentVector::value(const GroupElement &a) const {
    auto idx = gamma.index_of(a);
    return idx.has_value() ? values[*idx] : 1.0;
}

CanonicalMomentVector canonical_from_moments(
    const std::function<double(const GroupElement &)> &moment, const GammaPrime &gp) {
    CanonicalMomentVector out;
    out.gamma = gp;
    out.values.reserve(gp.size());
    for (const auto &a : gp.elements()) {
        double log_f = 0;
        size_t wa = a.weight();
        for_each_substring(a, [&](const GroupElement &b) {
            if (b.is_identity()) {
                return;
            }
            double e = moment(b);
            if (!(e >= 1e-12)) {
                throw NonPositiveMoment(
                    "Moment of " + b.str() + " is " + std::to_string(e) +
                    "; canonical moments need positive moments (is the noise correctable?).");
            }
            log_f += ((wa - b.weight()) & 1 ? -1.0 : 1.0) * std::log(e);
        });
        out.values.push_back(std::exp(log_f));
    }
    return out;
}

CanonicalMomentVector canonical_from_moments(const MomentTable &moments, const GammaPrime &gp) {
    return canonical_from_moments([&](const GroupElement &b) { return moments.value(b); }, gp);
}

double moments_from_canonical(const CanonicalMomentVector &f, const GroupElement &a) {
    double out = 1.0;
    for (uint32_t col : f.gamma.columns_below(a)) {
        out *= f.values[col];
    }
    return out;
}

}  // namespace noise_lab
