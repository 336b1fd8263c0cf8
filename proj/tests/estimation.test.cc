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

#include <cmath>
#include <numeric>

#include "gtest/gtest.h"
#include "noise_lab/errors.h"
#include "noise_lab/oracle.h"
#include "suite.test.h"
#include "test_util.test.h"

using namespace noise_lab;

namespace {

MomentTable exact_meas_table(const CodeGroups &code, const NoiseModel &model) {
    MomentTable t;
    code.meas.for_each([&](const GroupElement &s) { t.set(s, exact_moment(model, s)); });
    return t;
}

std::vector<GroupElement> all_logical(const CodeGroups &code) {
    return code.logical.enumerate();
}

size_t column_of(const GammaPrime &gp, const char *text) {
    return *gp.index_of(E(text));
}

}  // namespace

TEST(estimation, design_matrix_repetition) {
    auto rep = builtin_code("repetition", {{"n", 3}});
    auto model = bit_flip_model(rep.ambient, {0.1, 0.2, 0.05});
    auto gp = gamma_prime(model);
    ASSERT_EQ(gp.size(), 3u);
    auto d = build_design_matrix(rep.meas, gp);
    ASSERT_EQ(d.num_rows(), 4u);
    ASSERT_FALSE(d.sampled);
    size_t z1 = column_of(gp, "ZII"), z2 = column_of(gp, "IZI"), z3 = column_of(gp, "IIZ");
    std::set<std::vector<int>> rows;
    for (size_t r = 0; r < d.num_rows(); r++) {
        rows.insert({d.entry(r, z1), d.entry(r, z2), d.entry(r, z3)});
        if (d.rows[r].is_identity()) {
            ASSERT_TRUE(d.row_cols(r).empty());
        }
    }
    ASSERT_EQ(rows, (std::set<std::vector<int>>{{0, 0, 0}, {1, 1, 0}, {0, 1, 1}, {1, 0, 1}}));

    auto g = gram(d);
    for (size_t a = 0; a < 3; a++) {
        for (size_t b = 0; b < 3; b++) {
            ASSERT_EQ(g.at(a, b), a == b ? 2u : 1u);
        }
    }
    ASSERT_EQ(numerical_rank(g), 3u);
    auto streamed = group_gram(rep.meas, gp);
    ASSERT_EQ(streamed.entries, g.entries);
}

TEST(estimation, design_matrix_five_qubit) {
    auto five = builtin_code("five-qubit");
    auto model = singleton_depolarizing(five.ambient, {0, 1, 2, 3, 4}, {0.05});
    auto gp = gamma_prime(model);
    auto d = build_design_matrix(five.meas, gp);
    ASSERT_EQ(d.num_rows(), 16u);
    ASSERT_EQ(d.num_cols, 15u);
    ASSERT_EQ(numerical_rank(gram(d)), 15u);
}

TEST(estimation, empty_noise) {
    auto five = builtin_code("five-qubit");
    NoiseModel none(five.ambient, {});
    auto gp = gamma_prime(none);
    ASSERT_EQ(gp.size(), 0u);
    auto g = gram(build_design_matrix(five.meas, gp));
    ASSERT_EQ(g.n, 0u);
    auto rep = identifiability_check(five, none);
    ASSERT_EQ(rep.rank_meas, 0u);
    ASSERT_EQ(rep.rank_logical, 0u);
    ASSERT_TRUE(rep.identifiable);
}

TEST(estimation, identifiability_examples) {
    auto five = builtin_code("five-qubit");
    auto rep = identifiability_check(five, singleton_depolarizing(five.ambient, {0, 1, 2, 3, 4}, {0.1}));
    ASSERT_TRUE(rep.identifiable);
    ASSERT_EQ(rep.rank_meas, rep.rank_logical);
    ASSERT_EQ(rep.gram_ratio, std::optional<double>(4.0));

    auto toric = builtin_code("toric", {{"d", 3}});
    Region string{toric_h_edge(3, 0, 0), toric_h_edge(3, 0, 1), toric_h_edge(3, 0, 2)};
    std::map<std::string, double> probs{{"III", 0.8}, {"XXX", 0.1}, {"ZZZ", 0.1}};
    NoiseModel bad(toric.ambient, {LocalChannel::from_local(toric.ambient, string, probs)});
    auto r2 = identifiability_check(toric, bad);
    ASSERT_LT(r2.rank_meas, r2.rank_logical);
    ASSERT_FALSE(r2.identifiable);
    ASSERT_FALSE(r2.correctable.ok);
}

TEST(estimation, literal_mode_repetition_not_identifiable) {
    auto rep = builtin_code("repetition", {{"n", 3}});
    auto model = bit_flip_model(rep.ambient, {0.1, 0.2, 0.05});
    IdentifiabilityOptions lit;
    lit.mode = GammaPrimeMode::kSupport;
    auto r = identifiability_check(rep, model, lit);
    ASSERT_FALSE(r.identifiable);
    ASSERT_TRUE(identifiability_check(rep, model).identifiable);
}

TEST(estimation, suite_identifiable) {
    for (const auto &inst : identifiability_suite()) {
        if (inst.code.ambient.n_pauli > 10) {
            continue;
        }
        ASSERT_TRUE(is_correctable_noise(inst.model, inst.code).ok) << inst.label;
        auto r = identifiability_check(inst.code, inst.model);
        ASSERT_TRUE(r.identifiable) << inst.label;
        ASSERT_TRUE(r.gram_ratio.has_value()) << inst.label;
        ASSERT_DOUBLE_EQ(*r.gram_ratio, std::ldexp(1.0, int(inst.code.logical.rank() - inst.code.meas.rank())))
            << inst.label;
    }
}

TEST(estimation, gram_proportional_on_correctable_pairs) {
    for (auto name : {"four-qubit", "five-qubit", "repetition-5"}) {
        auto code = builtin_code(name);
        auto model = greedy_correlated(code, 3);
        auto gp = gamma_prime(model);
        auto gm = group_gram(code.meas, gp);
        auto gl = group_gram(code.logical, gp);
        uint64_t alpha = uint64_t{1} << (code.logical.rank() - code.meas.rank());
        size_t checked = 0;
        for (size_t a = 0; a < gp.size(); a++) {
            for (size_t b = 0; b < gp.size(); b++) {
                Region u = support(gp.elements()[a]).unite(support(gp.elements()[b]));
                if (!is_correctable_region(code, u, gp.alphabet())) {
                    continue;
                }
                checked++;
                ASSERT_EQ(gl.at(a, b), alpha * gm.at(a, b)) << name;
            }
        }
        ASSERT_GT(checked, 0u);
    }
}

TEST(estimation, solve_repetition_closed_form) {
    auto rep = builtin_code("repetition", {{"n", 3}});
    auto model = bit_flip_model(rep.ambient, {0.1, 0.2, 0.05});
    auto gp = gamma_prime(model);
    MomentTable meas;
    meas.set(E("ZZI"), 0.48);
    meas.set(E("IZZ"), 0.54);
    meas.set(E("ZIZ"), 0.72);
    auto est = solve_logical_moments(meas, rep, gp, {E("ZII"), E("IZZ"), E("III"), E("IIZ")});
    ASSERT_NEAR(est.moments.value(E("ZII")), std::sqrt(0.48 * 0.72 / 0.54), 1e-12);
    ASSERT_NEAR(est.moments.value(E("ZII")), 0.8, 1e-12);
    ASSERT_NEAR(est.moments.value(E("IZZ")), 0.54, 1e-12);
    ASSERT_EQ(est.moments.value(E("III")), 1.0);
    ASSERT_NEAR(est.moments.value(E("IIZ")), 0.9, 1e-12);
    ASSERT_EQ(est.method, "eigen");

    ASSERT_THROW(solve_logical_moments(meas, rep, gp, {E("XII")}), std::invalid_argument);
    try {
        solve_logical_moments(meas, rep, gp, {E("XII")});
    } catch (const std::invalid_argument &ex) {
        ASSERT_NE(std::string(ex.what()).find("XII"), std::string::npos);
    }
}

TEST(estimation, solve_not_identifiable) {
    auto rep = builtin_code("repetition", {{"n", 3}});
    auto model = bit_flip_model(rep.ambient, {0.1, 0.2, 0.05});
    auto gp = gamma_prime(model);
    MomentTable meas;
    meas.set(E("ZZI"), 0.48);
    ASSERT_THROW(solve_logical_moments(meas, rep, gp, {E("ZII")}), NotIdentifiable);
}

TEST(estimation, exact_recovery_matches_oracle) {
    for (const auto &inst : identifiability_suite()) {
        if (inst.code.ambient.n_pauli > 9) {
            continue;
        }
        auto gp = gamma_prime(inst.model);
        auto targets = all_logical(inst.code);
        auto est = solve_logical_moments(exact_meas_table(inst.code, inst.model), inst.code, gp, targets);
        auto p = oracle::full_distribution(inst.model);
        for (const auto &t : targets) {
            double truth = oracle::brute_fourier(p, t);
            ASSERT_LE(std::abs(est.moments.value(t) - truth), 1e-9 * std::abs(truth)) << inst.label << " " << t.str();
        }
    }
}

TEST(estimation, consistency_on_measured_rows) {
    auto code = builtin_code("steane");
    auto model = greedy_correlated(code, 5);
    auto gp = gamma_prime(model);
    auto meas = exact_meas_table(code, model);
    auto est = solve_logical_moments(meas, code, gp, meas.elements());
    for (size_t k = 0; k < meas.size(); k++) {
        ASSERT_NEAR(est.moments.value(meas.elements()[k]), meas.values()[k], 1e-12);
    }
}

TEST(estimation, solution_invariant_under_column_order) {
    auto code = builtin_code("five-qubit");
    auto model = greedy_correlated(code, 9);
    auto gp = gamma_prime(model);
    std::vector<size_t> perm(gp.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), test_rng());
    auto gq = gp.permuted(perm);
    auto meas = exact_meas_table(code, model);
    auto targets = all_logical(code);
    auto a = solve_logical_moments(meas, code, gp, targets);
    auto b = solve_logical_moments(meas, code, gq, targets);
    for (const auto &t : targets) {
        double la = std::log(a.moments.value(t));
        double lb = std::log(b.moments.value(t));
        ASSERT_LE(std::abs(la - lb), 1e-9) << t.str();
        ASSERT_NEAR(moment_from_solution(gp, a.log_canonical, t), a.moments.value(t), 1e-12);
    }
}

TEST(estimation, dense_and_iterative_agree) {
    auto code = builtin_code("steane");
    auto model = greedy_correlated(code, 21);
    auto gp = gamma_prime(model);
    auto meas = exact_meas_table(code, model);
    auto targets = all_logical(code);
    SolveOptions it;
    it.force_iterative = true;
    auto a = solve_logical_moments(meas, code, gp, targets);
    auto b = solve_logical_moments(meas, code, gp, targets, it);
    ASSERT_EQ(b.method, "conjugate-gradient");
    for (const auto &t : targets) {
        ASSERT_NEAR(a.moments.value(t), b.moments.value(t), 1e-9);
    }
}

TEST(estimation, logical_channel_identity_and_repetition) {
    auto rep = builtin_code("repetition", {{"n", 3}});
    auto ch = logical_channel_probabilities([](const GroupElement &) { return 1.0; }, rep);
    ASSERT_NEAR(ch.mass[0], 1.0, 1e-15);
    for (size_t s = 1; s < ch.mass.size(); s++) {
        ASSERT_NEAR(ch.mass[s], 0.0, 1e-15);
    }

    std::vector<double> p{0.1, 0.2, 0.05};
    auto model = bit_flip_model(rep.ambient, p);
    auto table = logical_channel_probabilities([&](const GroupElement &l) { return exact_moment(model, l); }, rep);
    double total = std::accumulate(table.mass.begin(), table.mass.end(), 0.0);
    ASSERT_NEAR(total, 1.0, 1e-12);
    // The gauge coset of XII holds exactly one X-only error.
    auto x1 = E("XII");
    double want = p[0] * (1 - p[1]) * (1 - p[2]);
    auto full = oracle::full_distribution(model);
    ASSERT_NEAR(table.mass[table.coset_of(x1)], want, 1e-12);
    ASSERT_NEAR(table.probability(x1), oracle::coset_logical_channel(full, rep.gauge, x1), 1e-12);
}

TEST(estimation, logical_transversal) {
    auto five = builtin_code("five-qubit");
    auto t = logical_transversal(five);
    ASSERT_EQ(t.size(), 4u);
    ASSERT_TRUE(t[0].is_identity());
    for (size_t k = 1; k < t.size(); k++) {
        ASSERT_TRUE(five.logical.contains(t[k]));
        ASSERT_EQ(t[k].weight(), 3u);
    }
}

TEST(estimation, ds_calibration_and_postprocess) {
    double c = calibrate_ds_constant();
    ASSERT_NEAR(c, 1.0, 1e-12);

    DataSyndromeSpec spec{{E("ZZI"), E("IZZ")}, {{0}, {1}, {0}, {1}}};
    auto ds = build_data_syndrome_code(spec);
    auto bit0 = GroupElement::single_bit(ds.ambient, 0);
    MomentTable adj;
    adj.set(bit0, 0.64);
    auto data = GroupElement::from_str("ZZI|0000");
    adj.set(data, 0.5);
    auto out = ds_postprocess(adj, ds, c);
    ASSERT_NEAR(out.value(bit0), 0.8, 1e-12);
    ASSERT_EQ(out.value(data), 0.5);

    MomentTable clean;
    clean.set(bit0, 1.0);
    auto same = ds_postprocess(clean, ds, c);
    ASSERT_NEAR(same.value(bit0), 1.0, 1e-12);

    auto lt = ds_targets({data, bit0}, c);
    ASSERT_EQ(lt[0].terms.size(), 1u);
    ASSERT_EQ(lt[1].terms[0].second, 0.5);
}

TEST(estimation, ds_exact_pipeline_matches_oracle) {
    DataSyndromeSpec spec{{E("ZZI"), E("IZZ")}, {{0}, {1}, {0}, {1}}};
    auto ds = build_data_syndrome_code(spec);
    auto data = bit_flip_model(ds.ambient, {0.1, 0.2, 0.05});
    std::vector<size_t> bits{3, 4, 5, 6};
    auto model = merge_models(data, singleton_flips(ds.ambient, bits, {0.1}, 'X'));
    auto paired = oracle::paired_round_distribution(model);
    auto single = oracle::full_distribution(model);
    MomentTable adj;
    ds.meas.for_each([&](const GroupElement &s) { adj.set(s, oracle::brute_fourier(paired, s)); });
    auto gp = gamma_prime(model);
    double c = calibrate_ds_constant();
    auto targets = all_logical(ds);
    auto est = solve_log_targets(adj, ds, gp, ds_targets(targets, c));
    for (const auto &t : targets) {
        ASSERT_NEAR(est.moments.value(t), oracle::brute_fourier(single, t), 1e-10) << t.str();
    }
    ASSERT_NEAR(est.moments.value(GroupElement::single_bit(ds.ambient, 2)), 0.8, 1e-10);
}

TEST(estimation, cleaning_counts) {
    auto five = builtin_code("five-qubit");
    auto z0 = E("ZIIII");
    auto c = cleaning_count_check(five, z0, z0);
    ASSERT_DOUBLE_EQ(c.ratio, 4.0);
    auto id = GroupElement(five.ambient);
    auto ci = cleaning_count_check(five, id, id);
    ASSERT_EQ(ci.count_meas, 16u);
    ASSERT_EQ(ci.count_logical, 64u);
    ASSERT_DOUBLE_EQ(ci.ratio, 4.0);

    // A pair whose union carries a logical string breaks the proportionality.
    auto toric = builtin_code("toric", {{"d", 3}});
    bool deviates = false;
    for (char p : {'X', 'Z'}) {
        GroupElement a(toric.ambient), b(toric.ambient);
        a.set_pauli(toric_h_edge(3, 0, 0), p);
        a.set_pauli(toric_h_edge(3, 0, 1), p);
        b.set_pauli(toric_h_edge(3, 0, 2), p);
        auto r = cleaning_count_check(toric, a, b);
        deviates = deviates || r.ratio != 16.0;
    }
    ASSERT_TRUE(deviates);
}
