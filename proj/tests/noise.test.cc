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

#include "noise_lab/noise.h"

#include <cmath>
#include <sstream>

#include "gtest/gtest.h"
#include "noise_lab/errors.h"
#include "noise_lab/oracle.h"
#include "noise_lab/rng.h"
#include "test_util.test.h"

using namespace noise_lab;

TEST(noise, from_local) {
    Ambient amb{6, 0};
    auto ch = LocalChannel::from_local(amb, Region{2, 5}, {{"II", 0.7}, {"XZ", 0.2}, {"_Y", 0.1}});
    ASSERT_EQ(ch.probs.size(), 3u);
    ASSERT_DOUBLE_EQ(ch.identity_probability(), 0.7);
    bool found = false;
    for (const auto &[e, p] : ch.probs) {
        if (e == E("IIXIIZ")) {
            found = true;
            ASSERT_DOUBLE_EQ(p, 0.2);
        }
    }
    ASSERT_TRUE(found);
    ASSERT_THROW(LocalChannel::from_local(amb, Region{2}, {{"I", 0.5}, {"X", 0.4}}), std::invalid_argument);
    ASSERT_THROW(LocalChannel::from_local(amb, Region{2}, {{"XX", 1.0}}), std::invalid_argument);

    Ambient ds{1, 1};
    auto bit = LocalChannel::from_local(ds, Region{0, 1}, {{"I0", 0.9}, {"X1", 0.1}});
    ASSERT_EQ(bit.probs.size(), 2u);
}

TEST(noise, local_moments) {
    Ambient one{1, 0};
    auto dep = singleton_depolarizing(one, {0}, {0.3});
    auto m = local_moments(dep.channels()[0], one);
    ASSERT_NEAR(m.value(E("I")), 1.0, 1e-15);
    for (auto p : {"X", "Y", "Z"}) {
        ASSERT_NEAR(m.value(E(p)), 0.6, 1e-15);
    }

    auto identity = LocalChannel::from_local(one, Region{0}, {{"I", 1.0}});
    auto mi = local_moments(identity, one);
    for (auto v : mi.values()) {
        ASSERT_EQ(v, 1.0);
    }

    auto flip = singleton_flips(one, {0}, {0.1}, 'X');
    auto mf = local_moments(flip.channels()[0], one);
    ASSERT_NEAR(mf.value(E("Z")), 0.8, 1e-15);
    ASSERT_NEAR(mf.value(E("X")), 1.0, 1e-15);
    ASSERT_NEAR(mf.value(E("Y")), 0.8, 1e-15);
}

TEST(noise, exact_moment) {
    Ambient amb{3, 0};
    auto model = bit_flip_model(amb, {0.1, 0.2, 0.05});
    ASSERT_EQ(exact_moment(model, GroupElement(amb)), 1.0);
    ASSERT_NEAR(exact_moment(model, E("ZZI")), 0.48, 1e-15);
    ASSERT_NEAR(exact_moment(model, E("IZZ")), 0.54, 1e-15);
    ASSERT_NEAR(exact_moment(model, E("ZIZ")), 0.72, 1e-15);
    // Sites without any channel contribute trivially.
    Ambient wide{5, 0};
    auto partial = singleton_flips(wide, {0}, {0.25}, 'X');
    ASSERT_NEAR(exact_moment(partial, E("ZIIZZ")), 0.5, 1e-15);
}

TEST(noise, exact_moment_matches_brute_fourier) {
    auto &rng = test_rng();
    for (int trial = 0; trial < 200; trial++) {
        Ambient amb{static_cast<size_t>(2 + trial % 3), static_cast<size_t>(trial % 2)};
        std::vector<LocalChannel> chs;
        size_t sites = amb.num_sites();
        for (int k = 0; k < 3; k++) {
            size_t a = rng() % sites;
            size_t b = rng() % sites;
            Region r = a == b ? Region{a} : Region{std::min(a, b), std::max(a, b)};
            chs.push_back(random_channel(amb, r, 0.3, 3));
        }
        NoiseModel model(amb, chs);
        auto p = oracle::full_distribution(model);
        auto a = random_element(amb);
        double e = exact_moment(model, a);
        ASSERT_NEAR(e, oracle::brute_fourier(p, a), 1e-12);
        ASSERT_LE(std::abs(e), 1.0 + 1e-12);
    }
}

TEST(noise, gamma_prime_sizes) {
    Ambient amb{3, 0};
    auto dep = singleton_depolarizing(amb, {0, 1, 2}, {0.1});
    ASSERT_EQ(gamma_prime(dep).size(), 9u);
    ASSERT_EQ(gamma_prime(dep, GammaPrimeMode::kSupport).size(), 9u);

    std::map<std::string, double> full2;
    for (auto a : {'I', 'X', 'Y', 'Z'}) {
        for (auto b : {'I', 'X', 'Y', 'Z'}) {
            full2[std::string{a, b}] = 1.0 / 16;
        }
    }
    NoiseModel pair(amb, {LocalChannel::from_local(amb, Region{0, 1}, full2)});
    ASSERT_EQ(gamma_prime(pair).size(), 15u);

    NoiseModel overlap(
        amb, {LocalChannel::from_local(amb, Region{0, 1}, full2), LocalChannel::from_local(amb, Region{1, 2}, full2)});
    ASSERT_EQ(gamma_prime(overlap).size(), 27u);
    ASSERT_EQ(gamma_prime(overlap, GammaPrimeMode::kSupport).size(), 27u);

    // Literal mode ignores the alphabet; alphabet mode keeps one letter per site.
    auto flips = bit_flip_model(amb, {0.1, 0.2, 0.05});
    ASSERT_EQ(gamma_prime(flips, GammaPrimeMode::kSupport).size(), 9u);
    auto gp = gamma_prime(flips);
    ASSERT_EQ(gp.size(), 3u);
    ASSERT_EQ(gp.elements()[0], E("IIZ"));
    ASSERT_EQ(gp.project(E("XYZ")), E("IZZ"));
}

TEST(noise, gamma_prime_order_and_columns) {
    Ambient amb{3, 0};
    auto model = singleton_depolarizing(amb, {0, 1, 2}, {0.1});
    std::map<std::string, double> corr{{"II", 0.9}, {"XX", 0.05}, {"ZY", 0.05}};
    model = merge_models(model, NoiseModel(amb, {LocalChannel::from_local(amb, Region{1, 2}, corr)}));
    auto gp = gamma_prime(model);
    for (size_t k = 1; k < gp.size(); k++) {
        ASSERT_TRUE(canonical_less(gp.elements()[k - 1], gp.elements()[k]));
    }
    for (int trial = 0; trial < 50; trial++) {
        auto row = random_element(amb);
        auto cols = gp.columns_below(row);
        std::set<uint32_t> got(cols.begin(), cols.end());
        ASSERT_EQ(got.size(), cols.size());
        std::set<uint32_t> want;
        for (size_t c = 0; c < gp.size(); c++) {
            if (is_substring(gp.elements()[c], gp.project(row))) {
                want.insert(static_cast<uint32_t>(c));
            }
        }
        ASSERT_EQ(got, want);
    }
}

TEST(noise, gamma_prime_cap) {
    Ambient amb{12, 0};
    std::vector<size_t> all;
    std::string key(12, 'X');
    for (size_t q = 0; q < 12; q++) {
        all.push_back(q);
    }
    NoiseModel big(amb, {LocalChannel::from_local(amb, Region(all), {{std::string(12, 'I'), 0.9}, {key, 0.1}})});
    ASSERT_THROW(gamma_prime(big), CapExceeded);
}

TEST(noise, correctable_noise) {
    auto five = builtin_code("five-qubit");
    auto dep = singleton_depolarizing(five.ambient, {0, 1, 2}, {0.1});
    ASSERT_TRUE(is_correctable_noise(dep, five).ok);

    auto toric = builtin_code("toric", {{"d", 3}});
    Region string{toric_h_edge(3, 0, 0), toric_h_edge(3, 0, 1), toric_h_edge(3, 0, 2)};
    std::vector<LocalChannel> chs = singleton_depolarizing(toric.ambient, {5, 9}, {0.01}).channels();
    chs.push_back(LocalChannel::from_local(toric.ambient, string, {{"III", 0.9}, {"ZZZ", 0.1}}));
    NoiseModel bad(toric.ambient, chs);
    auto w = is_correctable_noise(bad, toric);
    ASSERT_FALSE(w.ok);
    ASSERT_TRUE(w.pair.has_value());
    ASSERT_TRUE(w.pair->first == 2 || w.pair->second == 2);

    Ambient one = five.ambient;
    NoiseModel noisy(one, {LocalChannel::from_local(one, Region{0}, {{"I", 0.4}, {"X", 0.6}})});
    auto w2 = is_correctable_noise(noisy, five);
    ASSERT_FALSE(w2.ok);
    ASSERT_EQ(w2.channel, std::optional<size_t>(0));
    ASSERT_TRUE(w2.moments_positive.has_value());
    ASSERT_FALSE(*w2.moments_positive);
}

TEST(noise, positive_moments_when_identity_dominates) {
    for (auto name : {"five-qubit", "steane", "four-qubit"}) {
        auto code = builtin_code(name);
        std::vector<LocalChannel> chs;
        size_t n = code.ambient.n_pauli;
        for (size_t q = 0; q + 1 < n; q += 2) {
            chs.push_back(random_channel(code.ambient, Region{q, q + 1}, 0.51, 6));
        }
        chs.push_back(random_channel(code.ambient, Region{n - 1}, 0.55, 3));
        NoiseModel model(code.ambient, chs);
        auto gp = gamma_prime(model, GammaPrimeMode::kSupport);
        for (const auto &a : gp.elements()) {
            ASSERT_GT(exact_moment(model, a), 0.0) << name << " " << a.str();
        }
        code.meas.for_each([&](const GroupElement &s) { ASSERT_GT(exact_moment(model, s), 0.0) << name; });
    }
}

TEST(noise, moment_table_csv) {
    MomentTable t(MomentKind::kEmpirical);
    t.set(E("XZ"), 0.25, 0.01);
    t.set(E("II"), 1.0, 0.0);
    std::stringstream ss;
    t.write_csv(ss);
    ASSERT_EQ(ss.str().substr(0, 21), "element,value,stderr\n");
    auto back = MomentTable::read_csv(ss);
    ASSERT_EQ(back.size(), 2u);
    ASSERT_DOUBLE_EQ(back.value(E("XZ")), 0.25);
    ASSERT_DOUBLE_EQ(back.std_error(E("XZ")), 0.01);
    ASSERT_THROW(t.value(E("ZZ")), std::out_of_range);
}

TEST(noise, sample_identity_only) {
    Ambient amb{3, 0};
    NoiseModel model(amb, {LocalChannel::from_local(amb, Region{0, 1}, {{"II", 1.0}})});
    CounterRng rng(5, 0);
    for (int k = 0; k < 1000; k++) {
        ASSERT_TRUE(sample_error(model, rng).is_identity());
    }
}

TEST(noise, sample_frequencies) {
    Ambient amb{2, 0};
    auto ch = LocalChannel::from_local(amb, Region{0, 1}, {{"II", 0.6}, {"XI", 0.25}, {"ZY", 0.1}, {"YY", 0.05}});
    NoiseModel model(amb, {ch});
    const size_t n = 100000;
    std::map<GroupElement, size_t> counts;
    CounterRng rng(11, 3);
    for (size_t k = 0; k < n; k++) {
        counts[sample_error(model, rng)]++;
    }
    for (const auto &[e, p] : ch.probs) {
        double f = static_cast<double>(counts[e]) / n;
        double sigma = std::sqrt(p * (1 - p) / n);
        ASSERT_LE(std::abs(f - p), 5 * sigma) << e.str();
    }
}

TEST(noise, sample_two_coins_same_qubit) {
    Ambient amb{1, 0};
    auto a = singleton_flips(amb, {0}, {0.5}, 'X');
    NoiseModel model(amb, {a.channels()[0], a.channels()[0]});
    const size_t n = 100000;
    double sum = 0;
    CounterRng rng(2, 0);
    for (size_t k = 0; k < n; k++) {
        sum += sample_error(model, rng).x(0) ? -1 : 1;
    }
    ASSERT_LE(std::abs(sum / n), 5 / std::sqrt(double(n)));
    ASSERT_NEAR(exact_moment(model, E("Z")), 0.0, 1e-15);
}

TEST(noise, monte_carlo_moments_converge) {
    Ambient amb{4, 0};
    std::vector<LocalChannel> chs{
        random_channel(amb, Region{0, 1}, 0.7, 4), random_channel(amb, Region{1, 2}, 0.8, 4),
        random_channel(amb, Region{3}, 0.9, 2)};
    NoiseModel model(amb, chs);
    const size_t n = 100000;
    std::vector<GroupElement> elems;
    SubgroupBasis::full(amb).for_each([&](const GroupElement &e) { elems.push_back(e); });
    std::vector<double> sums(elems.size(), 0);
    CounterRng rng(99, 1);
    for (size_t k = 0; k < n; k++) {
        auto e = sample_error(model, rng);
        for (size_t i = 0; i < elems.size(); i++) {
            sums[i] += bicharacter(elems[i], e).value();
        }
    }
    size_t outside = 0;
    for (size_t i = 0; i < elems.size(); i++) {
        double exact = exact_moment(model, elems[i]);
        double est = sums[i] / n;
        double se = std::sqrt(std::max(1e-300, 1 - exact * exact) / n);
        if (exact * exact < 1 && std::abs(est - exact) > 5 * se) {
            outside++;
        }
    }
    ASSERT_LE(outside, elems.size() / 100);
}
