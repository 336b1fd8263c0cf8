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

#ifndef NOISE_LAB_SYNDROME_SIM_H
#define NOISE_LAB_SYNDROME_SIM_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "noise_lab/code.h"
#include "noise_lab/noise.h"

namespace noise_lab {

/// Relative syndrome rows, one per (paired) round. Bit j of a row is 1 when
/// measured generator j reads -1. Rows are packed little-endian into 64-bit words.
struct SyndromeDataset {
    uint32_t n_pauli = 0;
    uint32_t m = 0;
    uint64_t rows = 0;
    uint64_t seed = 0;
    bool paired = false;
    std::string code_name;
    std::vector<uint64_t> words;

    size_t words_per_row() const { return (m + 63) / 64; }
    bool bit(uint64_t row, size_t j) const { return (words[row * words_per_row() + j / 64] >> (j % 64)) & 1; }
    const uint64_t *row(uint64_t r) const { return words.data() + r * words_per_row(); }
};

inline constexpr char kDatasetMagic[8] = {'S', 'Y', 'N', 'D', '1', 0, 0, 0};
inline constexpr size_t kDatasetHeaderBytes = 32;

/// Simulates `rounds` rounds. Unpaired: one row per round holding the syndrome
/// of that round's fresh error. Paired (data-syndrome codes): consecutive
/// rounds (2k, 2k+1) form one row, the syndrome of the second round's data
/// error together with the XOR of both rounds' measurement flips; an odd final
/// round is dropped. Round r always draws from stream (seed, r).
SyndromeDataset run_rounds(
    const CodeGroups &code, const NoiseModel &model, uint64_t rounds, uint64_t seed, std::optional<bool> paired = {});

/// Counts of distinct rows. Requires m <= 64.
struct SyndromeHistogram {
    uint32_t m = 0;
    uint64_t total = 0;
    std::vector<std::pair<uint64_t, uint64_t>> counts;  // (row pattern, count), sorted by pattern
};
SyndromeHistogram histogram(const SyndromeDataset &ds);

/// Expresses elements of the measurement group as products of the measured
/// generators.
class GeneratorSolver {
   public:
    explicit GeneratorSolver(const CodeGroups &code);
    /// Generator indices J with s = prod_{j in J} f_j, or nullopt if s is not in M.
    std::optional<std::vector<size_t>> solve(const GroupElement &s) const;
    /// Same as a bit mask (requires m <= 64).
    std::optional<uint64_t> solve_mask(const GroupElement &s) const;
    size_t num_generators() const { return m_; }

   private:
    size_t m_ = 0;
    std::vector<GroupElement> rows_;
    std::vector<size_t> pivots_;
    std::vector<std::vector<bool>> combos_;
};

/// Mean of (-1)^(XOR of bits J) per element with stderr = sample std / sqrt(N).
/// Throws std::invalid_argument naming the first element not in M.
MomentTable empirical_moments(const SyndromeDataset &ds, const CodeGroups &code, const std::vector<GroupElement> &elements);

void write_dataset(const SyndromeDataset &ds, std::ostream &out);
void write_dataset(const SyndromeDataset &ds, const std::string &path);
SyndromeDataset read_dataset(std::istream &in);
SyndromeDataset read_dataset(const std::string &path);
/// One line per row, m comma separated 0/1 fields, preceded by a header s0..s{m-1}.
void write_dataset_csv(const SyndromeDataset &ds, std::ostream &out);

}  // namespace noise_lab

#endif
