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

#include "noise_lab/pauli.h"

#include <set>

#include "gtest/gtest.h"
#include "noise_lab/code.h"
#include "noise_lab/errors.h"
#include "noise_lab/subgroup.h"
#include "test_util.test.h"

using namespace noise_lab;

namespace {

std::string mask(const GroupElement &e, char block) {
    std::string out;
    for (size_t q = 0; q < e.n_pauli(); q++) {
        out.push_back((block == 'x' ? e.x(q) : e.z(q)) ? '1' : '0');
    }
    return out;
}

std::set<std::string> element_set(const SubgroupBasis &b) {
    std::set<std::string> out;
    b.for_each([&](const GroupElement &e) { out.insert(e.str()); });
    return out;
}

SubgroupBasis random_subgroup(const Ambient &amb, size_t gens) {
    std::vector<GroupElement> g;
    for (size_t k = 0; k < gens; k++) {
        g.push_back(random_element(amb));
    }
    return SubgroupBasis::span(amb, g);
}

}  // namespace

TEST(pauli, parse) {
    auto id = E("IIIII");
    ASSERT_TRUE(id.is_identity());
    ASSERT_EQ(mask(id, 'x'), "00000");

    auto a = E("XZYII");
    ASSERT_EQ(mask(a, 'x'), "10100");
    ASSERT_EQ(mask(a, 'z'), "01100");
    ASSERT_EQ(a.str(), "XZYII");

    auto b = E("XI|01");
    ASSERT_EQ(b.n_pauli(), 2u);
    ASSERT_EQ(b.n_bits(), 2u);
    ASSERT_FALSE(b.bit(0));
    ASSERT_TRUE(b.bit(1));
    ASSERT_EQ(b.str(), "XI|01");

    ASSERT_EQ(E("_X_").str(), "IXI");
    ASSERT_THROW(E("XQ"), std::invalid_argument);
    ASSERT_THROW(E("X|2"), std::invalid_argument);
}

TEST(pauli, multiply) {
    ASSERT_EQ(E("X") * E("Z"), E("Y"));
    ASSERT_EQ(E("XXI") * E("IXX"), E("XIX"));
    ASSERT_EQ(E("XI|01") * E("ZZ|11"), E("YZ|10"));
    for (int k = 0; k < 50; k++) {
        auto a = random_element(Ambient{7, 3});
        ASSERT_TRUE((a * a).is_identity());
    }
    ASSERT_THROW(multiply(E("X"), E("XX")), std::invalid_argument);
}

TEST(pauli, bicharacter) {
    ASSERT_EQ(bicharacter(E("X"), E("Z")).value(), -1);
    ASSERT_EQ(bicharacter(E("XX"), E("ZZ")).value(), +1);
    ASSERT_EQ(bicharacter(E("Y"), E("Y")).value(), +1);
    ASSERT_EQ(bicharacter(E("I|1"), E("I|1")).value(), -1);
    ASSERT_EQ(bicharacter(E("Z|1"), E("X|0")).value(), -1);
    Ambient amb{6, 2};
    GroupElement id(amb);
    for (int k = 0; k < 20; k++) {
        ASSERT_EQ(bicharacter(random_element(amb), id).value(), +1);
    }
}

TEST(pauli, bicharacter_multiplicative) {
    Ambient amb{9, 4};
    for (int k = 0; k < 500; k++) {
        auto a = random_element(amb);
        auto b = random_element(amb);
        auto c = random_element(amb);
        ASSERT_EQ(bicharacter(a * b, c), bicharacter(a, c) * bicharacter(b, c));
        ASSERT_EQ(bicharacter(a, b), bicharacter(b, a));
    }
}

TEST(pauli, is_substring) {
    ASSERT_TRUE(is_substring(E("XI"), E("XZ")));
    ASSERT_FALSE(is_substring(E("XI"), E("ZZ")));
    ASSERT_FALSE(is_substring(E("YI"), E("XZ")));
    ASSERT_TRUE(is_substring(E("XZ"), E("XZ")));
    ASSERT_TRUE(is_substring(E("I|01"), E("X|11")));
    for (int k = 0; k < 20; k++) {
        auto a = random_element(Ambient{5, 2});
        ASSERT_TRUE(is_substring(GroupElement(a.ambient()), a));
    }
}

TEST(pauli, support) {
    ASSERT_EQ(support(E("IXZII")), (Region{1, 2}));
    ASSERT_TRUE(support(E("IIIII")).empty());
    ASSERT_EQ(support(E("YYYYY")), (Region{0, 1, 2, 3, 4}));
    ASSERT_EQ(support(E("XI|01")), (Region{0, 3}));
    ASSERT_EQ(E("XYI|11").weight(), 4u);
    ASSERT_TRUE(supported_in(E("IXZII"), Region{1, 2, 4}));
    ASSERT_FALSE(supported_in(E("IXZII"), Region{1}));
    ASSERT_EQ(restrict_element(E("XYZ|1"), Region{1, 3}), E("IYI|1"));
}

TEST(pauli, canonical_order) {
    ASSERT_TRUE(canonical_less(E("ZII"), E("XXI")));
    ASSERT_TRUE(canonical_less(E("IIX"), E("IIY")));
    ASSERT_TRUE(canonical_less(E("IIY"), E("IIZ")));
    ASSERT_TRUE(canonical_less(E("IX"), E("XI")));
    ASSERT_FALSE(canonical_less(E("XI"), E("XI")));
}

TEST(subgroup, span) {
    auto b = SubgroupBasis::span(Ambient{3, 0}, std::vector{E("ZZI"), E("IZZ"), E("ZIZ")});
    ASSERT_EQ(b.rank(), 2u);
    ASSERT_EQ(SubgroupBasis::span(Ambient{3, 0}, std::vector<GroupElement>{}).rank(), 0u);
    auto five = builtin_code("five-qubit");
    ASSERT_EQ(SubgroupBasis::span(five.ambient, five.meas_generators).rank(), 4u);
    ASSERT_TRUE(b.contains(E("ZIZ")));
    ASSERT_FALSE(b.contains(E("ZII")));
    auto coeffs = b.coefficients(E("ZIZ"));
    ASSERT_TRUE(coeffs.has_value());
    uint64_t m = 0;
    for (size_t i = 0; i < coeffs->size(); i++) {
        m |= uint64_t{(*coeffs)[i]} << i;
    }
    ASSERT_EQ(b.element_at(m), E("ZIZ"));
}

TEST(subgroup, span_normal_form_and_idempotent) {
    Ambient amb{4, 1};
    for (int k = 0; k < 30; k++) {
        auto b = random_subgroup(amb, 1 + k % 6);
        auto again = SubgroupBasis::span(amb, b.enumerate());
        ASSERT_EQ(again.rank(), b.rank());
        ASSERT_EQ(element_set(again), element_set(b));
        ASSERT_EQ(again, b);
        for (size_t i = 0; i < b.rank(); i++) {
            for (size_t j = 0; j < b.rank(); j++) {
                if (i != j) {
                    ASSERT_NE(b.rows()[i], b.rows()[j]);
                }
            }
        }
    }
}

TEST(subgroup, enumerate) {
    Ambient amb{2, 0};
    ASSERT_EQ(SubgroupBasis(amb).enumerate(), std::vector<GroupElement>{GroupElement(amb)});
    auto b = SubgroupBasis::span(amb, std::vector{E("XI"), E("IZ")});
    ASSERT_EQ(b.enumerate().size(), 4u);
    ASSERT_EQ(element_set(b).size(), 4u);

    auto five = builtin_code("five-qubit");
    auto all = five.meas.enumerate();
    ASSERT_EQ(all.size(), 16u);
    ASSERT_EQ(std::set<GroupElement>(all.begin(), all.end()).size(), 16u);
    for (const auto &a : all) {
        for (const auto &c : all) {
            ASSERT_EQ(bicharacter(a, c).value(), +1);
        }
    }
    ASSERT_THROW(SubgroupBasis::full(Ambient{13, 0}).enumerate(24), CapExceeded);
}

TEST(subgroup, annihilator) {
    Ambient one{1, 0};
    auto zb = SubgroupBasis::span(one, std::vector{E("Z")});
    ASSERT_EQ(annihilator(zb), zb);
    ASSERT_EQ(annihilator(SubgroupBasis::full(one)).rank(), 0u);
    for (Ambient amb : {Ambient{3, 0}, Ambient{2, 2}, Ambient{4, 1}}) {
        for (int k = 0; k < 20; k++) {
            auto b = random_subgroup(amb, k % 7);
            auto perp = annihilator(b);
            ASSERT_EQ(b.rank() + perp.rank(), amb.dim());
            ASSERT_EQ(annihilator(perp), b);
            // Enumeration check of the definition.
            std::set<std::string> expected;
            SubgroupBasis::full(amb).for_each([&](const GroupElement &e) {
                bool ok = true;
                b.for_each([&](const GroupElement &s) { ok = ok && !bicharacter(s, e).is_negative(); });
                if (ok) {
                    expected.insert(e.str());
                }
            });
            ASSERT_EQ(element_set(perp), expected);
        }
    }
}

TEST(subgroup, intersect) {
    Ambient one{1, 0};
    auto xb = SubgroupBasis::span(one, std::vector{E("X")});
    auto zb = SubgroupBasis::span(one, std::vector{E("Z")});
    ASSERT_EQ(intersect(xb, zb).rank(), 0u);
    ASSERT_EQ(intersect(xb, xb), xb);
    Ambient amb{3, 1};
    for (int k = 0; k < 20; k++) {
        auto b = random_subgroup(amb, 4);
        auto c = random_subgroup(amb, 5);
        auto i = intersect(b, c);
        std::set<std::string> expected;
        auto cs = element_set(c);
        for (const auto &s : element_set(b)) {
            if (cs.count(s)) {
                expected.insert(s);
            }
        }
        ASSERT_EQ(element_set(i), expected);
    }
    auto bs = builtin_code("bacon-shor", {{"d", 3}});
    auto stab = intersect(annihilator(bs.gauge), bs.gauge);
    ASSERT_EQ(stab.rank(), 4u);
    ASSERT_EQ(stab, bs.meas);
}

TEST(subgroup, restrict_to_region) {
    Ambient amb{2, 0};
    auto xx = SubgroupBasis::span(amb, std::vector{E("XX")});
    ASSERT_EQ(restrict_to_region(xx, Region{0}).rank(), 0u);
    ASSERT_EQ(restrict_to_region(xx, Region{0, 1}), xx);

    auto five = builtin_code("five-qubit");
    for (size_t a = 0; a < 5; a++) {
        for (size_t b = a + 1; b < 5; b++) {
            Region r{a, b};
            ASSERT_EQ(restrict_to_region(five.logical, r), restrict_to_region(five.meas, r));
        }
    }

    Ambient big{5, 1};
    for (int k = 0; k < 20; k++) {
        auto b = random_subgroup(big, 6);
        Region r;
        for (size_t s = 0; s < big.num_sites(); s++) {
            if (test_rng()() & 1) {
                r.sites.push_back(s);
            }
        }
        auto res = restrict_to_region(b, r);
        ASSERT_TRUE(res.is_subgroup_of(b));
        size_t count = 0;
        b.for_each([&](const GroupElement &e) { count += supported_in(e, r); });
        ASSERT_EQ(size_t{1} << res.rank(), count);
        res.for_each([&](const GroupElement &e) { ASSERT_TRUE(supported_in(e, r)); });
    }
}
