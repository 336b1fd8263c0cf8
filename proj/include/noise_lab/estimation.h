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

#ifndef NOISE_LAB_ESTIMATION_H
#define NOISE_LAB_ESTIMATION_H

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "noise_lab/code.h"
#include "noise_lab/noise.h"
#include "noise_lab/subgroup.h"
#include "noise_lab/syndrome_sim.h"

namespace noise_lab {

inline constexpr size_t kDefaultRowCapLog2 = 20;
inline constexpr double kRankTolerance = 1e-9;
inline constexpr size_t kDenseSolverLimit = 2000;
inline constexpr size_t kDenseRankLimit = 4096;

/// Sparse 0/1 matrix with D[r, c] = 1 iff column element c ≤ project(row r).
struct DesignMatrix {
    std::vector<GroupElement> rows;
    std::vector<uint32_t> offsets{0};
    std::vector<uint32_t> cols;
    size_t num_cols = 0;
    /// Rows are random group elements rather than the whole group.
    bool sampled = false;

    size_t num_rows() const { return rows.size(); }
    std::span<const uint32_t> row_cols(size_t r) const { return {cols.data() + offsets[r], offsets[r + 1] - offsets[r]}; }
    bool entry(size_t r, size_t c) const;
    void append(const GroupElement &row, const GammaPrime &gp, GammaPrime::ColumnScratch &scratch);
};

/// Whole group when 2^rank <= 2^row_cap_log2, otherwise 4·rank·|Γ′| uniformly
/// random group elements drawn from stream `sample_stream` of `seed`.
DesignMatrix build_design_matrix(
    const SubgroupBasis &group, const GammaPrime &gp, size_t row_cap_log2 = kDefaultRowCapLog2, uint64_t seed = 0,
    uint64_t sample_stream = 0);

/// Exact integer DᵀD, row-major.
struct GramMatrix {
    size_t n = 0;
    std::vector<uint64_t> entries;

    uint64_t at(size_t a, size_t b) const { return entries[a * n + b]; }
};

GramMatrix gram(const DesignMatrix &d);
/// Gram matrix of the design matrix over every element of `group`, streamed
/// without storing the rows.
GramMatrix group_gram(const SubgroupBasis &group, const GammaPrime &gp, size_t cap_log2 = kDefaultRowCapLog2);

/// Number of Gram eigenvalues above kRankTolerance times the largest one.
size_t numerical_rank(const GramMatrix &g);

struct IdentifiabilityOptions {
    GammaPrimeMode mode = GammaPrimeMode::kAlphabet;
    size_t row_cap_log2 = kDefaultRowCapLog2;
    uint64_t seed = 0;
    /// Verify gram(D_L) = |L/M| gram(D_M) on column pairs with correctable union.
    bool check_gram_ratio = true;
};

struct IdentifiabilityReport {
    size_t num_columns = 0;
    size_t rank_meas = 0;
    size_t rank_logical = 0;
    bool identifiable = false;
    /// |L/M|, present when the Gram proportionality held on every correctable pair.
    std::optional<double> gram_ratio;
    CorrectabilityWitness correctable;
    bool sampled = false;
    std::vector<std::string> notes;
};

IdentifiabilityReport identifiability_check(
    const CodeGroups &code, const NoiseModel &model, const IdentifiabilityOptions &options = {});

/// A quantity exp(Σ_k coeff_k · log E(element_k)) with every element in L.
struct LogTarget {
    std::string name;
    std::vector<std::pair<GroupElement, double>> terms;
    double scale = 1.0;
};

struct SolveOptions {
    /// Weight equations by E²/var and drop |E| < drop_sigma·stderr. Ignored for exact tables.
    double drop_sigma = 4.0;
    /// Dataset behind an empirical table, used for the full covariance of the
    /// log-moments. Without it the covariance is taken as diagonal.
    const SyndromeHistogram *histogram = nullptr;
    size_t dense_limit = kDenseSolverLimit;
    /// Forces the iterative path regardless of size.
    bool force_iterative = false;
};

struct LogicalEstimate {
    MomentTable moments{MomentKind::kExact};
    /// Minimum-norm log canonical moments, one per Γ′ column.
    std::vector<double> log_canonical;
    std::vector<GroupElement> dropped;
    std::vector<std::string> warnings;
    std::string method;
    size_t equations_used = 0;
};

/// Least-squares solve of D_M x = log E over the rows supplied in `meas_moments`
/// (identity rows ignored), then exp(r · x) for each target. Every target row
/// must lie in the row space of the kept equations, otherwise NotIdentifiable.
LogicalEstimate solve_log_targets(
    const MomentTable &meas_moments, const CodeGroups &code, const GammaPrime &gp,
    const std::vector<LogTarget> &targets, const SolveOptions &options = {});

LogicalEstimate solve_logical_moments(
    const MomentTable &meas_moments, const CodeGroups &code, const GammaPrime &gp,
    const std::vector<GroupElement> &targets, const SolveOptions &options = {});

/// E(a) = exp(Σ_{c ≤ project(a)} x_c) from a solved log-canonical vector.
double moment_from_solution(const GammaPrime &gp, const std::vector<double> &log_canonical, const GroupElement &a);

/// Logical channel as masses of the cosets of the gauge group. Coset σ ∈ F2^k
/// collects the errors e with ⟨l_i, e⟩ = (-1)^{σ_i} for the logical basis l_i.
struct LogicalChannelTable {
    std::vector<GroupElement> logical_basis;
    std::vector<double> mass;
    std::vector<GroupElement> representatives;
    double gauge_size = 1;

    uint64_t coset_of(const GroupElement &e) const;
    /// P_L(e) = mass of e's coset / |G|.
    double probability(const GroupElement &e) const;
};

/// P_L from E on all of L via a Walsh-Hadamard transform over the logical
/// basis coordinates. Throws CapExceeded if rank(L) exceeds the cap.
LogicalChannelTable logical_channel_probabilities(
    const std::function<double(const GroupElement &)> &logical_moment, const CodeGroups &code,
    size_t cap_log2 = kDefaultRowCapLog2);

/// Minimum-weight representatives of the cosets of M in L (ties broken by
/// canonical order), identity first.
std::vector<GroupElement> logical_transversal(const CodeGroups &code, size_t cap_log2 = kDefaultRowCapLog2);

/// Constant c in E(l) = c · Ẽ(l) / sqrt(Ẽ(0, l_m)), fixed by comparing with the
/// brute-force two-round oracle on a one-qubit, one-bit instance.
double calibrate_ds_constant();

/// Paired-round correction as log-linear targets (used with solve_log_targets).
std::vector<LogTarget> ds_targets(const std::vector<GroupElement> &targets, double calibration);

/// Applies the paired-round correction to a table of adjusted moments, which
/// must contain (0, l_m) for each target with l_m != 0.
MomentTable ds_postprocess(const MomentTable &adjusted, const CodeGroups &code, double calibration);

struct CleaningCount {
    uint64_t count_meas = 0;
    uint64_t count_logical = 0;
    double ratio = 0;
};

/// Counts of group elements s with a ≤ project(s) and b ≤ project(s), over M and over L.
CleaningCount cleaning_count_check(
    const CodeGroups &code, const GroupElement &a, const GroupElement &b, const ErrorAlphabet *alphabet = nullptr,
    size_t cap_log2 = kDefaultRowCapLog2);

}  // namespace noise_lab

#endif
