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

#include "noise_lab/code.h"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace noise_lab {

std::string to_string(CodeKind kind) {
    switch (kind) {
        case CodeKind::kStabilizer:
            return "stabilizer";
        case CodeKind::kSubsystem:
            return "subsystem";
        case CodeKind::kDataSyndrome:
            return "data-syndrome";
    }
    return "?";
}

CodeKind parse_code_kind(const std::string &text) {
    if (text == "stabilizer") {
        return CodeKind::kStabilizer;
    }
    if (text == "subsystem") {
        return CodeKind::kSubsystem;
    }
    if (text == "data-syndrome") {
        return CodeKind::kDataSyndrome;
    }
    throw std::invalid_argument("Unknown code kind '" + text + "'.");
}

namespace {

Ambient common_ambient(std::span<const GroupElement> gens) {
    if (gens.empty()) {
        throw std::invalid_argument("At least one generator is required.");
    }
    Ambient amb = gens[0].ambient();
    for (const auto &g : gens) {
        if (g.ambient() != amb) {
            throw std::invalid_argument("Generators have inconsistent lengths: " + g.str() + ".");
        }
    }
    return amb;
}

void check_commuting(std::span<const GroupElement> gens) {
    for (size_t i = 0; i < gens.size(); i++) {
        for (size_t j = i + 1; j < gens.size(); j++) {
            if (bicharacter(gens[i], gens[j]).is_negative()) {
                throw std::invalid_argument(
                    "Generators " + gens[i].str() + " and " + gens[j].str() + " anticommute.");
            }
        }
    }
}

}  // namespace

CodeGroups build_stabilizer_code(std::span<const GroupElement> generators) {
    Ambient amb = common_ambient(generators);
    for (const auto &g : generators) {
        if (g.is_identity()) {
            throw std::invalid_argument(
                "Identity among stabilizer generators; signs cannot be checked without phases.");
        }
    }
    check_commuting(generators);
    CodeGroups out;
    out.kind = CodeKind::kStabilizer;
    out.ambient = amb;
    out.meas = span(amb, generators);
    out.gauge = out.meas;
    out.logical = annihilator(out.gauge);
    out.undetectable = out.logical;
    out.meas_generators.assign(generators.begin(), generators.end());
    return out;
}

CodeGroups build_subsystem_code(std::span<const GroupElement> gauge_generators) {
    Ambient amb = common_ambient(gauge_generators);
    CodeGroups out;
    out.kind = CodeKind::kSubsystem;
    out.ambient = amb;
    out.gauge = span(amb, gauge_generators);
    out.logical = annihilator(out.gauge);
    out.meas = intersect(out.logical, out.gauge);
    out.undetectable = annihilator(out.meas);
    out.meas_generators = out.meas.rows();
    return out;
}

CodeGroups build_data_syndrome_code(const DataSyndromeSpec &spec) {
    Ambient base = common_ambient(spec.base_generators);
    if (base.n_bits != 0) {
        throw std::invalid_argument("Data-syndrome base generators must be plain Pauli strings.");
    }
    check_commuting(spec.base_generators);
    size_t m = spec.selection.size();
    if (m == 0) {
        throw std::invalid_argument("Data-syndrome code needs at least one measurement slot.");
    }
    Ambient amb{base.n_pauli, m};
    auto embed = [&](const GroupElement &g) {
        GroupElement out(amb);
        for (size_t q = 0; q < base.n_pauli; q++) {
            out.set_pauli(q, g.pauli(q));
        }
        return out;
    };

    CodeGroups out;
    out.kind = CodeKind::kDataSyndrome;
    out.ambient = amb;
    std::vector<GroupElement> stabs;
    for (const auto &g : spec.base_generators) {
        stabs.push_back(embed(g));
    }
    out.gauge = span(amb, stabs);
    for (size_t i = 0; i < m; i++) {
        GroupElement f(amb);
        for (size_t k : spec.selection[i]) {
            if (k >= spec.base_generators.size()) {
                throw std::invalid_argument(
                    "Redundancy entry " + std::to_string(k) + " does not name a base generator.");
            }
            f *= stabs[k];
        }
        f.set_bit(i, true);
        out.meas_generators.push_back(std::move(f));
    }
    out.meas = span(amb, out.meas_generators);
    out.logical = annihilator(out.gauge);
    out.undetectable = annihilator(out.meas);
    return out;
}

bool is_correctable_region(const CodeGroups &code, const Region &region) {
    return restrict_to_region(code.undetectable, region).rank() == restrict_to_region(code.gauge, region).rank();
}

bool is_correctable_region(const CodeGroups &code, const Region &region, const ErrorAlphabet &alphabet) {
    if (alphabet.ambient() != code.ambient) {
        throw std::invalid_argument("Alphabet ambient does not match the code.");
    }
    if (alphabet.is_full()) {
        return is_correctable_region(code, region);
    }
    auto k_r = alphabet.group_on(region);
    return intersect(code.undetectable, k_r).rank() == intersect(code.gauge, k_r).rank();
}

size_t distance(const CodeGroups &code, size_t cap_log2) {
    // Extend the gauge basis to a basis of the undetectable group, then walk
    // every element whose component outside the gauge group is non-trivial.
    std::vector<GroupElement> extra;
    {
        SubgroupBasis acc = code.gauge;
        for (const auto &u : code.undetectable.rows()) {
            if (!acc.contains(u)) {
                extra.push_back(u);
                std::vector<GroupElement> gens = acc.rows();
                gens.push_back(u);
                acc = span(code.ambient, gens);
            }
        }
    }
    if (extra.empty()) {
        return 0;
    }
    SubgroupBasis gauge_in_u = intersect(code.gauge, code.undetectable);
    if (gauge_in_u.rank() + extra.size() > cap_log2) {
        throw CapExceeded("Distance enumeration exceeds the cap of 2^" + std::to_string(cap_log2) + " elements.");
    }
    size_t best = std::numeric_limits<size_t>::max();
    GroupElement outer(code.ambient);
    uint64_t total = uint64_t{1} << extra.size();
    for (uint64_t k = 1; k < total; k++) {
        outer *= extra[std::countr_zero(k)];
        gauge_in_u.for_each([&](const GroupElement &g) { best = std::min(best, (outer * g).weight()); }, cap_log2);
    }
    return best;
}

size_t toric_h_edge(size_t d, size_t r, size_t c) {
    return (r % d) * d + (c % d);
}

size_t toric_v_edge(size_t d, size_t r, size_t c) {
    return d * d + (r % d) * d + (c % d);
}

Region toric_plaquette(size_t d, size_t r, size_t c) {
    return Region{toric_h_edge(d, r, c), toric_h_edge(d, r + 1, c), toric_v_edge(d, r, c), toric_v_edge(d, r, c + 1)};
}

namespace {

std::vector<GroupElement> parse_all(const std::vector<std::string> &rows) {
    std::vector<GroupElement> out;
    for (const auto &r : rows) {
        out.push_back(GroupElement::from_str(r));
    }
    return out;
}

int param(const std::map<std::string, int> &params, const std::string &key, int fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

std::vector<GroupElement> repetition_generators(size_t n) {
    std::vector<GroupElement> gens;
    Ambient amb{n, 0};
    for (size_t i = 0; i + 1 < n; i++) {
        GroupElement g(amb);
        g.set_pauli(i, 'Z');
        g.set_pauli(i + 1, 'Z');
        gens.push_back(std::move(g));
    }
    return gens;
}

std::vector<GroupElement> toric_generators(size_t d) {
    Ambient amb{2 * d * d, 0};
    std::vector<GroupElement> gens;
    for (size_t r = 0; r < d; r++) {
        for (size_t c = 0; c < d; c++) {
            GroupElement star(amb);
            for (size_t q : {toric_h_edge(d, r, c), toric_h_edge(d, r, c + d - 1), toric_v_edge(d, r, c),
                             toric_v_edge(d, r + d - 1, c)}) {
                star.set_pauli(q, 'X');
            }
            gens.push_back(std::move(star));
        }
    }
    for (size_t r = 0; r < d; r++) {
        for (size_t c = 0; c < d; c++) {
            GroupElement plaq(amb);
            for (size_t q : toric_plaquette(d, r, c).sites) {
                plaq.set_pauli(q, 'Z');
            }
            gens.push_back(std::move(plaq));
        }
    }
    return gens;
}

std::vector<GroupElement> bacon_shor_gauge(size_t d) {
    Ambient amb{d * d, 0};
    std::vector<GroupElement> gens;
    // Qubit (r, c) has index d*r + c. XX on horizontal neighbours, ZZ on vertical ones.
    for (size_t r = 0; r < d; r++) {
        for (size_t c = 0; c + 1 < d; c++) {
            GroupElement g(amb);
            g.set_pauli(d * r + c, 'X');
            g.set_pauli(d * r + c + 1, 'X');
            gens.push_back(std::move(g));
        }
    }
    for (size_t r = 0; r + 1 < d; r++) {
        for (size_t c = 0; c < d; c++) {
            GroupElement g(amb);
            g.set_pauli(d * r + c, 'Z');
            g.set_pauli(d * (r + 1) + c, 'Z');
            gens.push_back(std::move(g));
        }
    }
    return gens;
}

}  // namespace

CodeGroups builtin_code(const std::string &raw_name, const std::map<std::string, int> &params) {
    std::string name = raw_name;
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char ch) { return std::tolower(ch); });
    CodeGroups out;
    std::stringstream label;
    if (name == "repetition" || name.rfind("repetition-", 0) == 0) {
        int n = name == "repetition" ? param(params, "n", 3) : std::stoi(name.substr(11));
        if (n < 2) {
            throw std::invalid_argument("Repetition code needs n >= 2.");
        }
        out = build_stabilizer_code(repetition_generators(n));
        label << "repetition-" << n;
        out.layout = "qubits 0..n-1 along the chain; generators Z_i Z_{i+1}";
    } else if (name == "four-qubit" || name == "[[4,1,2]]") {
        out = build_stabilizer_code(parse_all({"XXXX", "ZZZZ", "ZZII"}));
        label << "[[4,1,2]]";
        out.layout = "generators XXXX, ZZZZ, ZZII";
    } else if (name == "five-qubit" || name == "[[5,1,3]]") {
        out = build_stabilizer_code(parse_all({"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"}));
        label << "[[5,1,3]]";
        out.layout = "cyclic generators XZZXI and shifts";
    } else if (name == "steane") {
        out = build_stabilizer_code(
            parse_all({"IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ"}));
        label << "steane";
        out.layout = "Hamming [7,4] parity checks, X then Z";
    } else if (name == "shor") {
        out = build_stabilizer_code(parse_all({"ZZIIIIIII", "IZZIIIIII", "IIIZZIIII", "IIIIZZIII", "IIIIIIZZI",
                                               "IIIIIIIZZ", "XXXXXXIII", "IIIXXXXXX"}));
        label << "shor";
        out.layout = "three blocks of three qubits";
    } else if (name == "bacon-shor") {
        int d = param(params, "d", 3);
        if (d < 2) {
            throw std::invalid_argument("Bacon-Shor code needs d >= 2.");
        }
        out = build_subsystem_code(bacon_shor_gauge(d));
        label << "bacon-shor-" << d;
        out.layout = "qubit (r,c) at index d*r+c; gauge XX horizontal, ZZ vertical";
    } else if (name == "toric") {
        int d = param(params, "d", 3);
        if (d < 2) {
            throw std::invalid_argument("Toric code needs d >= 2.");
        }
        out = build_stabilizer_code(toric_generators(d));
        label << "toric-" << d;
        out.layout =
            "qubits on edges, row-major, horizontal edges first: h(r,c)=r*d+c, v(r,c)=d*d+r*d+c; "
            "stars X, plaquettes Z";
    } else {
        throw std::invalid_argument("Unknown builtin code '" + raw_name + "'.");
    }
    out.name = label.str();
    return out;
}

}  // namespace noise_lab
