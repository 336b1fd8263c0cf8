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

#include "noise_lab/estimation.h"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "noise_lab/errors.h"
#include "noise_lab/oracle.h"
#include "noise_lab/parallel.h"
#include "noise_lab/rng.h"
#include "noise_lab/transforms.h"

namespace noise_lab {

namespace {

GroupElement random_element(const SubgroupBasis &group, CounterRng &rng) {
    GroupElement out(group.ambient());
    uint64_t bits = 0;
    for (size_t i = 0; i < group.rank(); i++) {
        if (i % 64 == 0) {
            bits = rng.next();
        }
        if ((bits >> (i % 64)) & 1) {
            out *= group.rows()[i];
        }
    }
    return out;
}

void accumulate_pairs(const std::vector<uint32_t> &cols, size_t n, uint64_t *entries) {
    for (uint32_t a : cols) {
        uint64_t *row = entries + static_cast<size_t>(a) * n;
        for (uint32_t b : cols) {
            row[b]++;
        }
    }
}

GramMatrix sampled_gram(const SubgroupBasis &group, const GammaPrime &gp, uint64_t seed, uint64_t stream) {
    return gram(build_design_matrix(group, gp, 0, seed, stream));
}

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

// Elements d_j with ⟨rows_i, d_j⟩ = -1 exactly when i = j. Rows must be independent.
std::vector<GroupElement> dual_basis(const std::vector<GroupElement> &rows) {
    size_t k = rows.size();
    if (k == 0) {
        return {};
    }
    const Ambient &amb = rows[0].ambient();
    std::vector<GroupElement> r;
    std::vector<std::vector<bool>> t;
    for (size_t i = 0; i < k; i++) {
        r.push_back(twist(rows[i]));
        std::vector<bool> unit(k, false);
        unit[i] = true;
        t.push_back(std::move(unit));
    }
    std::vector<size_t> pivots;
    size_t next = 0;
    for (size_t c = 0; c < amb.dim() && next < k; c++) {
        size_t found = next;
        while (found < k && !r[found].coord(c)) {
            found++;
        }
        if (found == k) {
            continue;
        }
        std::swap(r[next], r[found]);
        std::swap(t[next], t[found]);
        for (size_t i = 0; i < k; i++) {
            if (i != next && r[i].coord(c)) {
                r[i] *= r[next];
                for (size_t j = 0; j < k; j++) {
                    t[i][j] = t[i][j] != t[next][j];
                }
            }
        }
        pivots.push_back(c);
        next++;
    }
    if (next != k) {
        throw std::invalid_argument("dual_basis: rows are dependent.");
    }
    std::vector<GroupElement> out;
    for (size_t j = 0; j < k; j++) {
        GroupElement d(amb);
        for (size_t i = 0; i < k; i++) {
            if (t[i][j]) {
                d.flip_coord(pivots[i]);
            }
        }
        out.push_back(std::move(d));
    }
    return out;
}

GroupElement bit_part(const GroupElement &e) {
    GroupElement out(e.ambient());
    for (size_t j = 0; j < e.n_bits(); j++) {
        out.set_bit(j, e.bit(j));
    }
    return out;
}

}  // namespace

bool DesignMatrix::entry(size_t r, size_t c) const {
    auto cs = row_cols(r);
    return std::find(cs.begin(), cs.end(), static_cast<uint32_t>(c)) != cs.end();
}

void DesignMatrix::append(const GroupElement &row, const GammaPrime &gp, GammaPrime::ColumnScratch &scratch) {
    std::vector<uint32_t> found;
    gp.columns_below(row, scratch, found);
    std::sort(found.begin(), found.end());
    rows.push_back(row);
    cols.insert(cols.end(), found.begin(), found.end());
    offsets.push_back(static_cast<uint32_t>(cols.size()));
}

DesignMatrix build_design_matrix(
    const SubgroupBasis &group, const GammaPrime &gp, size_t row_cap_log2, uint64_t seed, uint64_t sample_stream) {
    DesignMatrix d;
    d.num_cols = gp.size();
    GammaPrime::ColumnScratch scratch;
    if (group.rank() <= row_cap_log2) {
        group.for_each([&](const GroupElement &s) { d.append(s, gp, scratch); }, row_cap_log2);
        return d;
    }
    d.sampled = true;
    size_t count = 4 * group.rank() * std::max<size_t>(1, gp.size());
    CounterRng rng(seed, 0x5A3D1E0000000000ULL + sample_stream);
    for (size_t k = 0; k < count; k++) {
        d.append(random_element(group, rng), gp, scratch);
    }
    return d;
}

GramMatrix gram(const DesignMatrix &d) {
    GramMatrix g;
    g.n = d.num_cols;
    g.entries.assign(g.n * g.n, 0);
    std::vector<uint32_t> cols;
    for (size_t r = 0; r < d.num_rows(); r++) {
        auto cs = d.row_cols(r);
        cols.assign(cs.begin(), cs.end());
        accumulate_pairs(cols, g.n, g.entries.data());
    }
    return g;
}

GramMatrix group_gram(const SubgroupBasis &group, const GammaPrime &gp, size_t cap_log2) {
    if (group.rank() > cap_log2) {
        throw CapExceeded("Group of rank " + std::to_string(group.rank()) + " exceeds the row cap 2^" +
                          std::to_string(cap_log2) + ".");
    }
    GramMatrix g;
    g.n = gp.size();
    g.entries.assign(g.n * g.n, 0);
    if (g.n == 0) {
        return g;
    }
    size_t rank = group.rank();
    size_t split = 0;
    while ((size_t{1} << split) < num_threads() && split < rank && split < 6) {
        split++;
    }
    size_t low = rank - split;
    size_t chunks = size_t{1} << split;
    std::vector<std::vector<uint64_t>> partial(chunks);
    parallel_chunks(chunks, [&](size_t c) {
        auto &acc = partial[c];
        acc.assign(g.n * g.n, 0);
        GammaPrime::ColumnScratch scratch;
        std::vector<uint32_t> cols;
        GroupElement cur = group.element_at(static_cast<uint64_t>(c) << low);
        gp.columns_below(cur, scratch, cols);
        accumulate_pairs(cols, g.n, acc.data());
        uint64_t total = uint64_t{1} << low;
        for (uint64_t k = 1; k < total; k++) {
            cur *= group.rows()[std::countr_zero(k)];
            gp.columns_below(cur, scratch, cols);
            accumulate_pairs(cols, g.n, acc.data());
        }
    });
    for (const auto &acc : partial) {
        for (size_t i = 0; i < acc.size(); i++) {
            g.entries[i] += acc[i];
        }
    }
    return g;
}

size_t numerical_rank(const GramMatrix &g) {
    if (g.n == 0) {
        return 0;
    }
    if (g.n > kDenseRankLimit) {
        throw CapExceeded("Rank computation over " + std::to_string(g.n) + " columns exceeds the limit of " +
                          std::to_string(kDenseRankLimit) + ".");
    }
    Eigen::MatrixXd m(g.n, g.n);
    for (size_t a = 0; a < g.n; a++) {
        for (size_t b = 0; b < g.n; b++) {
            m(a, b) = static_cast<double>(g.at(a, b));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    const auto &ev = es.eigenvalues();
    double top = ev.cwiseAbs().maxCoeff();
    if (top == 0.0) {
        return 0;
    }
    size_t rank = 0;
    for (Eigen::Index i = 0; i < ev.size(); i++) {
        if (ev(i) > kRankTolerance * top) {
            rank++;
        }
    }
    return rank;
}

IdentifiabilityReport identifiability_check(
    const CodeGroups &code, const NoiseModel &model, const IdentifiabilityOptions &options) {
    if (code.ambient != model.ambient()) {
        throw std::invalid_argument("identifiability_check: code and noise model ambients differ.");
    }
    IdentifiabilityReport rep;
    GammaPrime gp = gamma_prime(model, options.mode);
    rep.num_columns = gp.size();
    rep.correctable = is_correctable_noise(model, code, options.mode);
    if (!rep.correctable.ok) {
        rep.notes.push_back("Noise is not certified correctable: " + rep.correctable.message);
    }

    auto rank_of = [&](const SubgroupBasis &group, uint64_t stream, const char *label, GramMatrix *keep) {
        if (group.rank() <= options.row_cap_log2) {
            GramMatrix g = group_gram(group, gp, options.row_cap_log2);
            size_t r = numerical_rank(g);
            if (keep) {
                *keep = std::move(g);
            }
            return r;
        }
        rep.sampled = true;
        size_t r1 = numerical_rank(sampled_gram(group, gp, options.seed, stream));
        size_t r2 = numerical_rank(sampled_gram(group, gp, options.seed, stream + 1));
        if (r1 != r2) {
            std::stringstream ss;
            ss << "Sampled design matrices for the " << label << " group disagree on rank (" << r1 << " vs " << r2
               << "); the sample is too small to decide.";
            throw std::runtime_error(ss.str());
        }
        rep.notes.push_back(std::string("Rank of the ") + label + " design matrix estimated from random group elements.");
        return r1;
    };

    GramMatrix g_meas, g_logical;
    rep.rank_meas = rank_of(code.meas, 1, "measurement", &g_meas);
    rep.rank_logical = rank_of(code.logical, 3, "logical", &g_logical);
    rep.identifiable = rep.rank_meas == rep.rank_logical;
    if (rep.correctable.ok && !rep.identifiable) {
        rep.notes.push_back("Correctable noise with a rank gap; expected full rank for correctable noise.");
    }

    if (options.check_gram_ratio && !rep.sampled && gp.size() <= kDenseSolverLimit) {
        double alpha = std::ldexp(1.0, static_cast<int>(code.logical.rank()) - static_cast<int>(code.meas.rank()));
        std::map<std::vector<size_t>, bool> cache;
        std::vector<Region> supports;
        for (const auto &a : gp.elements()) {
            supports.push_back(support(a));
        }
        bool holds = true;
        std::string failure;
        for (size_t a = 0; a < gp.size() && holds; a++) {
            for (size_t b = a; b < gp.size() && holds; b++) {
                Region u = supports[a].unite(supports[b]);
                auto it = cache.find(u.sites);
                if (it == cache.end()) {
                    it = cache.emplace(u.sites, is_correctable_region(code, u, gp.alphabet())).first;
                }
                if (!it->second) {
                    continue;
                }
                if (static_cast<double>(g_logical.at(a, b)) != alpha * static_cast<double>(g_meas.at(a, b))) {
                    holds = false;
                    failure = gp.elements()[a].str() + ", " + gp.elements()[b].str();
                }
            }
        }
        if (holds) {
            rep.gram_ratio = alpha;
        } else {
            rep.notes.push_back("Gram proportionality fails on the correctable pair (" + failure + ").");
        }
    }
    return rep;
}

double moment_from_solution(const GammaPrime &gp, const std::vector<double> &log_canonical, const GroupElement &a) {
    double t = 0;
    for (uint32_t c : gp.columns_below(a)) {
        t += log_canonical[c];
    }
    return std::exp(t);
}

namespace {

struct Equation {
    GroupElement element;
    double value;
    double std_error;
    double weight;
};

// Matrix-free conjugate gradient on D^T W D x = rhs, started from zero.
Eigen::VectorXd conjugate_gradient(
    const DesignMatrix &d, const Eigen::VectorXd &w, const Eigen::VectorXd &rhs, double rel_tol, double *residual) {
    size_t n = d.num_cols;
    auto apply = [&](const Eigen::VectorXd &p) {
        Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
        for (size_t r = 0; r < d.num_rows(); r++) {
            double s = 0;
            for (uint32_t c : d.row_cols(r)) {
                s += p(c);
            }
            s *= w(r);
            for (uint32_t c : d.row_cols(r)) {
                out(c) += s;
            }
        }
        return out;
    };
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd r = rhs;
    Eigen::VectorXd p = r;
    double rr = r.squaredNorm();
    double target = rel_tol * rel_tol * std::max(1e-300, rhs.squaredNorm());
    size_t max_iter = 10 * n + 100;
    for (size_t it = 0; it < max_iter && rr > target; it++) {
        Eigen::VectorXd ap = apply(p);
        double pap = p.dot(ap);
        if (pap <= 0) {
            break;
        }
        double alpha = rr / pap;
        x += alpha * p;
        r -= alpha * ap;
        double rr_new = r.squaredNorm();
        p = r + (rr_new / rr) * p;
        rr = rr_new;
    }
    *residual = (apply(x) - rhs).norm() / std::max(1e-300, rhs.norm());
    return x;
}

}  // namespace

LogicalEstimate solve_log_targets(
    const MomentTable &meas_moments, const CodeGroups &code, const GammaPrime &gp,
    const std::vector<LogTarget> &targets, const SolveOptions &options) {
    if (gp.alphabet().ambient() != code.ambient) {
        throw std::invalid_argument("solve: Gamma-prime and code ambients differ.");
    }
    bool empirical = meas_moments.kind() == MomentKind::kEmpirical;
    double var_floor = 1e-16;
    if (options.histogram != nullptr && options.histogram->total > 0) {
        double n = static_cast<double>(options.histogram->total);
        var_floor = 1.0 / (n * n);
    }

    LogicalEstimate out;
    out.moments = MomentTable(empirical ? MomentKind::kEmpirical : MomentKind::kExact);
    std::vector<Equation> eqs;
    for (size_t k = 0; k < meas_moments.size(); k++) {
        const GroupElement &s = meas_moments.elements()[k];
        if (s.ambient() != code.ambient) {
            throw std::invalid_argument("Measured element " + s.str() + " does not match the code ambient.");
        }
        if (!code.meas.contains(s)) {
            throw std::invalid_argument("Element " + s.str() + " is not in the measurement group.");
        }
        if (s.is_identity()) {
            continue;
        }
        double e = meas_moments.values()[k];
        double se = meas_moments.std_errors()[k];
        if (empirical) {
            if (std::abs(e) < options.drop_sigma * se) {
                out.dropped.push_back(s);
                continue;
            }
            if (e <= 0) {
                throw NonPositiveMoment("Estimated moment of " + s.str() + " is significantly negative.");
            }
            double var = std::max(se * se, var_floor);
            eqs.push_back({s, e, se, e * e / var});
        } else {
            if (!(e >= 1e-12)) {
                throw NonPositiveMoment("Moment of " + s.str() + " is " + std::to_string(e) + "; it must be positive.");
            }
            eqs.push_back({s, e, 0.0, 1.0});
        }
    }
    if (!out.dropped.empty()) {
        out.warnings.push_back(std::to_string(out.dropped.size()) + " measured moments dropped as too noisy (|E| < " +
                               std::to_string(options.drop_sigma) + " stderr).");
    }
    out.equations_used = eqs.size();

    size_t n = gp.size();
    DesignMatrix d;
    d.num_cols = n;
    GammaPrime::ColumnScratch scratch;
    for (const auto &eq : eqs) {
        d.append(eq.element, gp, scratch);
    }
    Eigen::VectorXd w(eqs.size()), y(eqs.size());
    for (size_t r = 0; r < eqs.size(); r++) {
        w(r) = eqs[r].weight;
        y(r) = std::log(eqs[r].value);
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    for (size_t r = 0; r < eqs.size(); r++) {
        for (uint32_t c : d.row_cols(r)) {
            rhs(c) += w(r) * y(r);
        }
    }

    std::vector<Eigen::VectorXd> target_rows;
    for (const auto &t : targets) {
        Eigen::VectorXd row = Eigen::VectorXd::Zero(n);
        for (const auto &[elem, coeff] : t.terms) {
            if (elem.ambient() != code.ambient || !code.logical.contains(elem)) {
                throw std::invalid_argument("Target " + elem.str() + " is not a logical element.");
            }
            for (uint32_t c : gp.columns_below(elem)) {
                row(c) += coeff;
            }
        }
        target_rows.push_back(std::move(row));
    }

    Eigen::VectorXd x;
    std::vector<Eigen::VectorXd> z(targets.size());
    std::vector<bool> determined(targets.size(), true);
    bool dense = n <= options.dense_limit && !options.force_iterative;
    if (dense) {
        out.method = "eigen";
        Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
        for (size_t r = 0; r < eqs.size(); r++) {
            auto cs = d.row_cols(r);
            for (uint32_t a : cs) {
                for (uint32_t b : cs) {
                    g(a, b) += w(r);
                }
            }
        }
        x = Eigen::VectorXd::Zero(n);
        if (n > 0) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
            const auto &ev = es.eigenvalues();
            const auto &vecs = es.eigenvectors();
            double top = ev.cwiseAbs().maxCoeff();
            Eigen::VectorXd inv = Eigen::VectorXd::Zero(n);
            for (size_t i = 0; i < n; i++) {
                if (top > 0 && ev(i) > kRankTolerance * top) {
                    inv(i) = 1.0 / ev(i);
                }
            }
            auto pinv_apply = [&](const Eigen::VectorXd &v) -> Eigen::VectorXd {
                return vecs * inv.cwiseProduct(vecs.transpose() * v);
            };
            x = pinv_apply(rhs);
            for (size_t t = 0; t < targets.size(); t++) {
                z[t] = pinv_apply(target_rows[t]);
                Eigen::VectorXd back = g * z[t];
                determined[t] = (back - target_rows[t]).norm() <= 1e-7 * std::max(1.0, target_rows[t].norm());
            }
        } else {
            for (size_t t = 0; t < targets.size(); t++) {
                z[t] = Eigen::VectorXd::Zero(0);
            }
        }
    } else {
        out.method = "conjugate-gradient";
        double res = 0;
        x = conjugate_gradient(d, w, rhs, 1e-12, &res);
        if (res > 1e-8) {
            out.warnings.push_back("Conjugate gradient stopped at relative residual " + std::to_string(res) + ".");
        }
        for (size_t t = 0; t < targets.size(); t++) {
            if (target_rows[t].norm() == 0) {
                z[t] = Eigen::VectorXd::Zero(n);
                continue;
            }
            double rt = 0;
            z[t] = conjugate_gradient(d, w, target_rows[t], 1e-12, &rt);
            determined[t] = rt <= 1e-7;
        }
    }
    out.log_canonical.assign(x.data(), x.data() + x.size());

    for (size_t t = 0; t < targets.size(); t++) {
        if (!determined[t]) {
            throw NotIdentifiable("Target " + targets[t].name +
                                  " is not determined by the measured moments (rank deficiency).");
        }
    }

    // Coefficients v with log(target) = Σ_r v_r log E_r.
    std::optional<GeneratorSolver> solver;
    std::vector<uint64_t> masks;
    bool full_cov = empirical && options.histogram != nullptr && code.meas_generators.size() <= 64;
    if (full_cov) {
        solver.emplace(code);
        for (const auto &eq : eqs) {
            masks.push_back(*solver->solve_mask(eq.element));
        }
    }
    for (size_t t = 0; t < targets.size(); t++) {
        double log_value = n ? target_rows[t].dot(x) : 0.0;
        double value = targets[t].scale * std::exp(log_value);
        double se = 0;
        if (empirical && n > 0) {
            std::vector<double> v(eqs.size(), 0.0);
            for (size_t r = 0; r < eqs.size(); r++) {
                double s = 0;
                for (uint32_t c : d.row_cols(r)) {
                    s += z[t](c);
                }
                v[r] = w(r) * s / eqs[r].value;
            }
            double var = 0;
            if (full_cov) {
                const auto &h = *options.histogram;
                double n_rows = static_cast<double>(h.total);
                double mean = 0, mean_sq = 0;
                if (h.m <= 22 && h.counts.size() > 64) {
                    std::vector<double> dense(size_t{1} << h.m, 0.0);
                    for (size_t r = 0; r < eqs.size(); r++) {
                        dense[masks[r]] += v[r];
                    }
                    walsh_hadamard(dense);
                    for (const auto &[pattern, count] : h.counts) {
                        double q = dense[pattern];
                        mean += q * static_cast<double>(count);
                        mean_sq += q * q * static_cast<double>(count);
                    }
                } else {
                    for (const auto &[pattern, count] : h.counts) {
                        double q = 0;
                        for (size_t r = 0; r < eqs.size(); r++) {
                            q += (std::popcount(pattern & masks[r]) & 1) ? -v[r] : v[r];
                        }
                        mean += q * static_cast<double>(count);
                        mean_sq += q * q * static_cast<double>(count);
                    }
                }
                mean /= n_rows;
                mean_sq /= n_rows;
                var = std::max(0.0, mean_sq - mean * mean) / n_rows;
            } else {
                for (size_t r = 0; r < eqs.size(); r++) {
                    var += v[r] * v[r] * eqs[r].std_error * eqs[r].std_error;
                }
            }
            se = std::abs(value) * std::sqrt(var);
        }
        out.moments.set(targets[t].terms.empty() ? GroupElement(code.ambient) : targets[t].terms[0].first, value, se);
    }
    return out;
}

LogicalEstimate solve_logical_moments(
    const MomentTable &meas_moments, const CodeGroups &code, const GammaPrime &gp,
    const std::vector<GroupElement> &targets, const SolveOptions &options) {
    std::vector<LogTarget> lt;
    for (const auto &t : targets) {
        lt.push_back(LogTarget{t.str(), {{t, 1.0}}, 1.0});
    }
    return solve_log_targets(meas_moments, code, gp, lt, options);
}

uint64_t LogicalChannelTable::coset_of(const GroupElement &e) const {
    uint64_t sigma = 0;
    for (size_t i = 0; i < logical_basis.size(); i++) {
        if (bicharacter(logical_basis[i], e).is_negative()) {
            sigma |= uint64_t{1} << i;
        }
    }
    return sigma;
}

double LogicalChannelTable::probability(const GroupElement &e) const {
    return mass[coset_of(e)] / gauge_size;
}

LogicalChannelTable logical_channel_probabilities(
    const std::function<double(const GroupElement &)> &logical_moment, const CodeGroups &code, size_t cap_log2) {
    const SubgroupBasis &logical = code.logical;
    size_t k = logical.rank();
    if (k > cap_log2) {
        throw CapExceeded("Logical group of rank " + std::to_string(k) + " exceeds the cap 2^" +
                          std::to_string(cap_log2) + "; only moments can be reported.");
    }
    LogicalChannelTable out;
    out.logical_basis = logical.rows();
    out.gauge_size = std::ldexp(1.0, static_cast<int>(code.gauge.rank()));
    std::vector<double> values(size_t{1} << k, 0.0);
    uint64_t step = 0;
    logical.for_each(
        [&](const GroupElement &l) {
            values[step ^ (step >> 1)] = logical_moment(l);
            step++;
        },
        cap_log2);
    walsh_hadamard(values);
    double inv = std::ldexp(1.0, -static_cast<int>(k));
    for (double &v : values) {
        v *= inv;
    }
    out.mass = std::move(values);

    auto dual = dual_basis(out.logical_basis);
    out.representatives.reserve(out.mass.size());
    bool min_weight = k + code.gauge.rank() <= 16;
    for (uint64_t sigma = 0; sigma < out.mass.size(); sigma++) {
        GroupElement rep(code.ambient);
        for (size_t j = 0; j < k; j++) {
            if ((sigma >> j) & 1) {
                rep *= dual[j];
            }
        }
        if (min_weight) {
            GroupElement best = rep;
            code.gauge.for_each([&](const GroupElement &g) {
                GroupElement cand = rep * g;
                if (canonical_less(cand, best)) {
                    best = cand;
                }
            });
            rep = best;
        }
        out.representatives.push_back(std::move(rep));
    }
    return out;
}

std::vector<GroupElement> logical_transversal(const CodeGroups &code, size_t cap_log2) {
    const auto &mrows = code.meas.rows();
    std::vector<size_t> pivots;
    for (const auto &r : mrows) {
        size_t p = 0;
        while (!r.coord(p)) {
            p++;
        }
        pivots.push_back(p);
    }
    std::unordered_map<GroupElement, GroupElement> best;
    code.logical.for_each(
        [&](const GroupElement &l) {
            GroupElement key = l;
            for (size_t i = 0; i < mrows.size(); i++) {
                if (key.coord(pivots[i])) {
                    key *= mrows[i];
                }
            }
            auto it = best.find(key);
            if (it == best.end()) {
                best.emplace(std::move(key), l);
            } else if (canonical_less(l, it->second)) {
                it->second = l;
            }
        },
        cap_log2);
    std::vector<GroupElement> out;
    for (auto &[key, rep] : best) {
        out.push_back(rep);
    }
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

double calibrate_ds_constant() {
    Ambient amb{1, 1};
    DataSyndromeSpec spec{{GroupElement::from_str("Z")}, {{0}}};
    CodeGroups code = build_data_syndrome_code(spec);
    std::vector<LocalChannel> chs;
    chs.push_back(LocalChannel::from_local(amb, Region{0}, {{"I", 0.8}, {"X", 0.15}, {"Y", 0.05}}));
    chs.push_back(LocalChannel::from_local(amb, Region{1}, {{"0", 0.9}, {"1", 0.1}}));
    chs.push_back(LocalChannel::from_local(amb, Region{0, 1}, {{"I0", 0.95}, {"X1", 0.05}}));
    NoiseModel model(amb, std::move(chs));
    auto single = oracle::full_distribution(model);
    auto paired = oracle::paired_round_distribution(model);
    GroupElement l = GroupElement::from_str("Z|1");
    GroupElement lm = GroupElement::from_str("I|1");
    double truth = oracle::brute_fourier(single, l);
    double adjusted = oracle::brute_fourier(paired, l);
    double marginal = oracle::brute_fourier(paired, lm);
    double c = truth * std::sqrt(marginal) / adjusted;
    double c_bits = oracle::brute_fourier(single, lm) / std::sqrt(marginal);
    if (std::abs(c - c_bits) > 1e-12 || !code.logical.contains(l)) {
        throw std::logic_error("Data-syndrome calibration is inconsistent across elements.");
    }
    return c;
}

std::vector<LogTarget> ds_targets(const std::vector<GroupElement> &targets, double calibration) {
    std::vector<LogTarget> out;
    for (const auto &t : targets) {
        GroupElement m = bit_part(t);
        if (m.is_identity()) {
            out.push_back(LogTarget{t.str(), {{t, 1.0}}, 1.0});
        } else if (m == t) {
            out.push_back(LogTarget{t.str(), {{t, 0.5}}, calibration});
        } else {
            out.push_back(LogTarget{t.str(), {{t, 1.0}, {m, -0.5}}, calibration});
        }
    }
    return out;
}

MomentTable ds_postprocess(const MomentTable &adjusted, const CodeGroups &code, double calibration) {
    if (code.kind != CodeKind::kDataSyndrome) {
        throw std::invalid_argument("ds_postprocess needs a data-syndrome code.");
    }
    MomentTable out(adjusted.kind());
    for (size_t k = 0; k < adjusted.size(); k++) {
        const GroupElement &l = adjusted.elements()[k];
        GroupElement m = bit_part(l);
        double v = adjusted.values()[k];
        if (m.is_identity()) {
            out.set(l, v, adjusted.std_errors()[k]);
            continue;
        }
        if (!adjusted.contains(m)) {
            throw std::invalid_argument("Adjusted table lacks the measurement marginal " + m.str() + ".");
        }
        double marginal = adjusted.value(m);
        if (!(marginal > 0)) {
            throw NonPositiveMoment("Measurement marginal moment of " + m.str() + " is not positive.");
        }
        double se = adjusted.std_errors()[k] / std::sqrt(marginal);
        out.set(l, calibration * v / std::sqrt(marginal), calibration * se);
    }
    return out;
}

CleaningCount cleaning_count_check(
    const CodeGroups &code, const GroupElement &a, const GroupElement &b, const ErrorAlphabet *alphabet,
    size_t cap_log2) {
    auto count = [&](const SubgroupBasis &group) {
        uint64_t c = 0;
        group.for_each(
            [&](const GroupElement &s) {
                if (alphabet != nullptr) {
                    GroupElement p = alphabet->project(s);
                    c += is_substring(a, p) && is_substring(b, p);
                } else {
                    c += is_substring(a, s) && is_substring(b, s);
                }
            },
            cap_log2);
        return c;
    };
    CleaningCount out;
    out.count_meas = count(code.meas);
    out.count_logical = count(code.logical);
    out.ratio = out.count_meas ? static_cast<double>(out.count_logical) / static_cast<double>(out.count_meas) : 0.0;
    return out;
}

}  // namespace noise_lab
