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

#include "noise_lab/syndrome_sim.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>

#include "noise_lab/parallel.h"
#include "noise_lab/rng.h"

namespace noise_lab {

namespace {

constexpr uint64_t kChunkRows = 1 << 15;

std::vector<uint64_t> syndrome_words(const CodeGroups &code, const GroupElement &e) {
    size_t m = code.meas_generators.size();
    std::vector<uint64_t> out((m + 63) / 64, 0);
    for (size_t j = 0; j < m; j++) {
        if (bicharacter(code.meas_generators[j], e).is_negative()) {
            out[j / 64] |= uint64_t{1} << (j % 64);
        }
    }
    return out;
}

GroupElement bits_only(const GroupElement &e) {
    GroupElement out(e.ambient());
    for (size_t j = 0; j < e.n_bits(); j++) {
        out.set_bit(j, e.bit(j));
    }
    return out;
}

struct ChannelMasks {
    const LocalChannel *channel;
    std::vector<std::vector<uint64_t>> full;
    std::vector<std::vector<uint64_t>> bits;
};

void put_u32(std::ostream &out, uint32_t v) {
    unsigned char b[4];
    for (int k = 0; k < 4; k++) {
        b[k] = static_cast<unsigned char>(v >> (8 * k));
    }
    out.write(reinterpret_cast<const char *>(b), 4);
}

void put_u64(std::ostream &out, uint64_t v) {
    unsigned char b[8];
    for (int k = 0; k < 8; k++) {
        b[k] = static_cast<unsigned char>(v >> (8 * k));
    }
    out.write(reinterpret_cast<const char *>(b), 8);
}

uint64_t get_le(std::istream &in, int bytes) {
    unsigned char b[8] = {};
    in.read(reinterpret_cast<char *>(b), bytes);
    if (!in) {
        throw std::runtime_error("Truncated dataset.");
    }
    uint64_t v = 0;
    for (int k = 0; k < bytes; k++) {
        v |= uint64_t{b[k]} << (8 * k);
    }
    return v;
}

}  // namespace

SyndromeDataset run_rounds(
    const CodeGroups &code, const NoiseModel &model, uint64_t rounds, uint64_t seed, std::optional<bool> paired) {
    if (code.ambient != model.ambient()) {
        throw std::invalid_argument("run_rounds: code and noise model ambients differ.");
    }
    SyndromeDataset ds;
    ds.n_pauli = static_cast<uint32_t>(code.ambient.n_pauli);
    ds.m = static_cast<uint32_t>(code.meas_generators.size());
    ds.seed = seed;
    ds.paired = paired.value_or(code.kind == CodeKind::kDataSyndrome);
    ds.code_name = code.name;
    ds.rows = ds.paired ? rounds / 2 : rounds;
    size_t wpr = ds.words_per_row();
    ds.words.assign(ds.rows * wpr, 0);

    std::vector<ChannelMasks> masks;
    for (const auto &ch : model.channels()) {
        ChannelMasks cm{&ch, {}, {}};
        for (const auto &[e, p] : ch.probs) {
            cm.full.push_back(syndrome_words(code, e));
            cm.bits.push_back(syndrome_words(code, bits_only(e)));
        }
        masks.push_back(std::move(cm));
    }

    auto add_round = [&](uint64_t round, bool bit_part_only, uint64_t *row) {
        CounterRng rng(seed, round);
        for (const auto &cm : masks) {
            double u = rng.uniform();
            if (cm.channel->probs.empty()) {
                continue;
            }
            size_t k = draw_outcome(*cm.channel, u);
            const auto &w = bit_part_only ? cm.bits[k] : cm.full[k];
            for (size_t i = 0; i < wpr; i++) {
                row[i] ^= w[i];
            }
        }
    };

    uint64_t chunks = (ds.rows + kChunkRows - 1) / kChunkRows;
    parallel_chunks(chunks, [&](size_t c) {
        uint64_t begin = c * kChunkRows;
        uint64_t end = std::min(ds.rows, begin + kChunkRows);
        for (uint64_t r = begin; r < end; r++) {
            uint64_t *row = ds.words.data() + r * wpr;
            if (ds.paired) {
                add_round(2 * r, true, row);
                add_round(2 * r + 1, false, row);
            } else {
                add_round(r, false, row);
            }
        }
    });
    return ds;
}

SyndromeHistogram histogram(const SyndromeDataset &ds) {
    if (ds.m > 64) {
        throw std::invalid_argument("Histogram needs at most 64 measured generators.");
    }
    SyndromeHistogram h;
    h.m = ds.m;
    h.total = ds.rows;
    if (ds.m <= 20) {
        std::vector<uint64_t> dense(size_t{1} << ds.m, 0);
        for (uint64_t r = 0; r < ds.rows; r++) {
            dense[ds.m == 0 ? 0 : ds.words[r]]++;
        }
        for (uint64_t k = 0; k < dense.size(); k++) {
            if (dense[k]) {
                h.counts.emplace_back(k, dense[k]);
            }
        }
        return h;
    }
    std::unordered_map<uint64_t, uint64_t> counts;
    for (uint64_t r = 0; r < ds.rows; r++) {
        counts[ds.words[r]]++;
    }
    h.counts.assign(counts.begin(), counts.end());
    std::sort(h.counts.begin(), h.counts.end());
    return h;
}

GeneratorSolver::GeneratorSolver(const CodeGroups &code) : m_(code.meas_generators.size()) {
    for (size_t j = 0; j < m_; j++) {
        GroupElement row = code.meas_generators[j];
        std::vector<bool> combo(m_, false);
        combo[j] = true;
        for (size_t i = 0; i < rows_.size(); i++) {
            if (row.coord(pivots_[i])) {
                row *= rows_[i];
                for (size_t k = 0; k < m_; k++) {
                    combo[k] = combo[k] != combos_[i][k];
                }
            }
        }
        if (row.is_identity()) {
            continue;
        }
        size_t pivot = 0;
        while (!row.coord(pivot)) {
            pivot++;
        }
        rows_.push_back(std::move(row));
        pivots_.push_back(pivot);
        combos_.push_back(std::move(combo));
    }
}

std::optional<std::vector<size_t>> GeneratorSolver::solve(const GroupElement &s) const {
    GroupElement rem = s;
    std::vector<bool> combo(m_, false);
    for (size_t i = 0; i < rows_.size(); i++) {
        if (rem.coord(pivots_[i])) {
            rem *= rows_[i];
            for (size_t k = 0; k < m_; k++) {
                combo[k] = combo[k] != combos_[i][k];
            }
        }
    }
    if (!rem.is_identity()) {
        return std::nullopt;
    }
    std::vector<size_t> out;
    for (size_t k = 0; k < m_; k++) {
        if (combo[k]) {
            out.push_back(k);
        }
    }
    return out;
}

std::optional<uint64_t> GeneratorSolver::solve_mask(const GroupElement &s) const {
    if (m_ > 64) {
        throw std::invalid_argument("solve_mask needs at most 64 measured generators.");
    }
    auto j = solve(s);
    if (!j) {
        return std::nullopt;
    }
    uint64_t mask = 0;
    for (size_t k : *j) {
        mask |= uint64_t{1} << k;
    }
    return mask;
}

MomentTable empirical_moments(const SyndromeDataset &ds, const CodeGroups &code, const std::vector<GroupElement> &elements) {
    if (ds.m != code.meas_generators.size()) {
        throw std::invalid_argument("Dataset has " + std::to_string(ds.m) + " generator bits but the code measures " +
                                    std::to_string(code.meas_generators.size()) + ".");
    }
    GeneratorSolver solver(code);
    std::vector<std::vector<uint64_t>> masks;
    size_t wpr = ds.words_per_row();
    for (const auto &s : elements) {
        auto j = solver.solve(s);
        if (!j) {
            throw std::invalid_argument("Element " + s.str() + " is not in the measurement group.");
        }
        std::vector<uint64_t> mask(wpr, 0);
        for (size_t k : *j) {
            mask[k / 64] |= uint64_t{1} << (k % 64);
        }
        masks.push_back(std::move(mask));
    }

    std::vector<int64_t> sums(elements.size(), 0);
    if (ds.m <= 64) {
        auto h = histogram(ds);
        for (size_t k = 0; k < elements.size(); k++) {
            uint64_t mk = wpr ? masks[k][0] : 0;
            int64_t t = 0;
            for (const auto &[pattern, count] : h.counts) {
                t += (std::popcount(pattern & mk) & 1) ? -static_cast<int64_t>(count) : static_cast<int64_t>(count);
            }
            sums[k] = t;
        }
    } else {
        for (uint64_t r = 0; r < ds.rows; r++) {
            const uint64_t *row = ds.row(r);
            for (size_t k = 0; k < elements.size(); k++) {
                int parity = 0;
                for (size_t i = 0; i < wpr; i++) {
                    parity ^= std::popcount(row[i] & masks[k][i]) & 1;
                }
                sums[k] += parity ? -1 : 1;
            }
        }
    }

    MomentTable out(MomentKind::kEmpirical);
    double n = static_cast<double>(ds.rows);
    for (size_t k = 0; k < elements.size(); k++) {
        if (ds.rows == 0) {
            throw std::invalid_argument("Cannot estimate moments from an empty dataset.");
        }
        double mean = static_cast<double>(sums[k]) / n;
        double se = ds.rows > 1 ? std::sqrt(std::max(0.0, 1.0 - mean * mean) / (n - 1.0)) : 0.0;
        out.set(elements[k], mean, se);
    }
    return out;
}

void write_dataset(const SyndromeDataset &ds, std::ostream &out) {
    out.write(kDatasetMagic, 8);
    put_u32(out, ds.n_pauli);
    put_u32(out, ds.m);
    put_u64(out, ds.rows);
    put_u64(out, ds.seed);
    for (uint64_t w : ds.words) {
        put_u64(out, w);
    }
    if (!out) {
        throw std::runtime_error("Failed to write dataset.");
    }
}

void write_dataset(const SyndromeDataset &ds, const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("Cannot open '" + path + "' for writing.");
    }
    write_dataset(ds, out);
}

SyndromeDataset read_dataset(std::istream &in) {
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kDatasetMagic, 8) != 0) {
        throw std::runtime_error("Not a syndrome dataset (bad magic).");
    }
    SyndromeDataset ds;
    ds.n_pauli = static_cast<uint32_t>(get_le(in, 4));
    ds.m = static_cast<uint32_t>(get_le(in, 4));
    ds.rows = get_le(in, 8);
    ds.seed = get_le(in, 8);
    ds.words.resize(ds.rows * ds.words_per_row());
    for (auto &w : ds.words) {
        w = get_le(in, 8);
    }
    return ds;
}

SyndromeDataset read_dataset(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("Cannot open dataset '" + path + "'.");
    }
    return read_dataset(in);
}

void write_dataset_csv(const SyndromeDataset &ds, std::ostream &out) {
    for (size_t j = 0; j < ds.m; j++) {
        out << (j ? "," : "") << "s" << j;
    }
    out << "\n";
    for (uint64_t r = 0; r < ds.rows; r++) {
        for (size_t j = 0; j < ds.m; j++) {
            out << (j ? "," : "") << (ds.bit(r, j) ? '1' : '0');
        }
        out << "\n";
    }
}

}  // namespace noise_lab
