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

#include "noise_lab/config.h"

#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace noise_lab {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string &path, const std::string &what) {
    throw ConfigError(path + ": " + what);
}

void only_keys(const json &j, const std::string &path, const std::set<std::string> &allowed) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!allowed.count(it.key())) {
            fail(path, "unknown key '" + it.key() + "'");
        }
    }
}

const json &require(const json &j, const std::string &path, const std::string &key) {
    if (!j.contains(key)) {
        fail(path, "missing required key '" + key + "'");
    }
    return j.at(key);
}

int as_int(const json &j, const std::string &path, int min_value) {
    if (!j.is_number_integer()) {
        fail(path, "expected an integer");
    }
    int v = j.get<int>();
    if (v < min_value) {
        fail(path, "must be at least " + std::to_string(min_value));
    }
    return v;
}

double as_probability(const json &j, const std::string &path) {
    if (!j.is_number()) {
        fail(path, "expected a number");
    }
    double v = j.get<double>();
    if (!(v >= 0.0 && v <= 1.0)) {
        fail(path, "probability must lie in [0, 1]");
    }
    return v;
}

std::vector<double> probability_list(const json &j, const std::string &path, size_t expected) {
    std::vector<double> out;
    if (j.is_array()) {
        for (size_t k = 0; k < j.size(); k++) {
            out.push_back(as_probability(j[k], path + "/" + std::to_string(k)));
        }
        if (out.size() != expected) {
            fail(path, "expected " + std::to_string(expected) + " rates, got " + std::to_string(out.size()));
        }
    } else {
        out.assign(1, as_probability(j, path));
    }
    return out;
}

std::vector<GroupElement> parse_generators(const json &j, const std::string &path, std::optional<int> n) {
    if (!j.is_array() || j.empty()) {
        fail(path, "expected a non-empty array of Pauli strings");
    }
    std::vector<GroupElement> out;
    for (size_t k = 0; k < j.size(); k++) {
        std::string p = path + "/" + std::to_string(k);
        if (!j[k].is_string()) {
            fail(p, "expected a Pauli string");
        }
        try {
            out.push_back(GroupElement::from_str(j[k].get<std::string>()));
        } catch (const std::exception &ex) {
            fail(p, ex.what());
        }
        if (out.back().n_bits() != 0) {
            fail(p, "generators are plain Pauli strings");
        }
        if (out.back().n_pauli() != out[0].n_pauli()) {
            fail(p, "length differs from the first generator");
        }
        if (n && out.back().n_pauli() != static_cast<size_t>(*n)) {
            fail(p, "length " + std::to_string(out.back().n_pauli()) + " does not match n = " + std::to_string(*n));
        }
    }
    return out;
}

}  // namespace

std::string fnv1a_hex(const std::string &bytes) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

CodeGroups parse_code(const json &j, const std::string &path) {
    if (!j.is_object()) {
        fail(path, "expected an object");
    }
    if (j.contains("builtin")) {
        only_keys(j, path, {"builtin", "n", "d"});
        const json &b = j.at("builtin");
        if (!b.is_string()) {
            fail(path + "/builtin", "expected a string");
        }
        std::map<std::string, int> params;
        if (j.contains("n")) {
            params["n"] = as_int(j.at("n"), path + "/n", 2);
        }
        if (j.contains("d")) {
            params["d"] = as_int(j.at("d"), path + "/d", 2);
        }
        try {
            return builtin_code(b.get<std::string>(), params);
        } catch (const std::exception &ex) {
            fail(path + "/builtin", ex.what());
        }
    }
    only_keys(j, path, {"kind", "n", "generators", "redundancy", "name"});
    const json &k = require(j, path, "kind");
    if (!k.is_string()) {
        fail(path + "/kind", "expected a string");
    }
    CodeKind kind;
    try {
        kind = parse_code_kind(k.get<std::string>());
    } catch (const std::exception &ex) {
        fail(path + "/kind", ex.what());
    }
    std::optional<int> n;
    if (j.contains("n")) {
        n = as_int(j.at("n"), path + "/n", 1);
    }
    auto gens = parse_generators(require(j, path, "generators"), path + "/generators", n);
    CodeGroups code;
    try {
        if (kind == CodeKind::kStabilizer) {
            if (j.contains("redundancy")) {
                fail(path + "/redundancy", "only data-syndrome codes take a redundancy pattern");
            }
            code = build_stabilizer_code(gens);
        } else if (kind == CodeKind::kSubsystem) {
            if (j.contains("redundancy")) {
                fail(path + "/redundancy", "only data-syndrome codes take a redundancy pattern");
            }
            code = build_subsystem_code(gens);
        } else {
            DataSyndromeSpec spec;
            spec.base_generators = gens;
            if (j.contains("redundancy")) {
                const json &r = j.at("redundancy");
                if (!r.is_array() || r.empty()) {
                    fail(path + "/redundancy", "expected a non-empty array of index lists");
                }
                for (size_t s = 0; s < r.size(); s++) {
                    std::string p = path + "/redundancy/" + std::to_string(s);
                    if (!r[s].is_array() || r[s].empty()) {
                        fail(p, "expected a non-empty array of generator indices");
                    }
                    std::vector<size_t> sel;
                    for (size_t q = 0; q < r[s].size(); q++) {
                        int idx = as_int(r[s][q], p + "/" + std::to_string(q), 0);
                        if (static_cast<size_t>(idx) >= gens.size()) {
                            fail(p + "/" + std::to_string(q), "no generator with index " + std::to_string(idx));
                        }
                        sel.push_back(idx);
                    }
                    spec.selection.push_back(std::move(sel));
                }
            } else {
                for (size_t g = 0; g < gens.size(); g++) {
                    spec.selection.push_back({g});
                }
            }
            code = build_data_syndrome_code(spec);
        }
    } catch (const ConfigError &) {
        throw;
    } catch (const std::exception &ex) {
        fail(path + "/generators", ex.what());
    }
    if (j.contains("name")) {
        if (!j.at("name").is_string()) {
            fail(path + "/name", "expected a string");
        }
        code.name = j.at("name").get<std::string>();
    } else {
        code.name = to_string(kind) + "-" + std::to_string(code.ambient.n_pauli);
    }
    return code;
}

NoiseModel parse_noise(const json &root, const CodeGroups &code) {
    const Ambient &amb = code.ambient;
    const json &noise = require(root, "", "noise");
    if (!noise.is_object()) {
        fail("/noise", "expected an object");
    }
    only_keys(noise, "/noise", {"channels", "preset"});
    if (!noise.contains("channels") && !noise.contains("preset")) {
        fail("/noise", "needs 'channels' or 'preset'");
    }
    std::vector<LocalChannel> channels;
    if (noise.contains("channels")) {
        const json &chs = noise.at("channels");
        if (!chs.is_array()) {
            fail("/noise/channels", "expected an array");
        }
        for (size_t k = 0; k < chs.size(); k++) {
            std::string p = "/noise/channels/" + std::to_string(k);
            const json &ch = chs[k];
            if (!ch.is_object()) {
                fail(p, "expected an object");
            }
            only_keys(ch, p, {"support", "probs"});
            const json &sup = require(ch, p, "support");
            if (!sup.is_array() || sup.empty()) {
                fail(p + "/support", "expected a non-empty array of site indices");
            }
            std::vector<size_t> sites;
            for (size_t q = 0; q < sup.size(); q++) {
                int s = as_int(sup[q], p + "/support/" + std::to_string(q), 0);
                if (static_cast<size_t>(s) >= amb.num_sites()) {
                    fail(p + "/support/" + std::to_string(q),
                         "site " + std::to_string(s) + " outside the " + std::to_string(amb.num_sites()) + " sites");
                }
                sites.push_back(s);
            }
            for (size_t q = 1; q < sites.size(); q++) {
                if (sites[q] <= sites[q - 1]) {
                    fail(p + "/support", "sites must be strictly ascending");
                }
            }
            const json &probs = require(ch, p, "probs");
            if (!probs.is_object() || probs.empty()) {
                fail(p + "/probs", "expected a non-empty object");
            }
            std::map<std::string, double> local;
            for (auto it = probs.begin(); it != probs.end(); ++it) {
                local[it.key()] = as_probability(it.value(), p + "/probs/" + it.key());
            }
            try {
                channels.push_back(LocalChannel::from_local(amb, Region(sites), local));
            } catch (const std::exception &ex) {
                fail(p, ex.what());
            }
        }
    }
    if (noise.contains("preset")) {
        const json &pre = noise.at("preset");
        if (!pre.is_object()) {
            fail("/noise/preset", "expected an object");
        }
        only_keys(pre, "/noise/preset", {"type", "p", "sites"});
        const json &type = require(pre, "/noise/preset", "type");
        if (!type.is_string()) {
            fail("/noise/preset/type", "expected a string");
        }
        std::vector<size_t> sites;
        if (pre.contains("sites")) {
            const json &s = pre.at("sites");
            if (!s.is_array()) {
                fail("/noise/preset/sites", "expected an array");
            }
            for (size_t q = 0; q < s.size(); q++) {
                int v = as_int(s[q], "/noise/preset/sites/" + std::to_string(q), 0);
                if (static_cast<size_t>(v) >= amb.n_pauli) {
                    fail("/noise/preset/sites/" + std::to_string(q), "not a qubit site");
                }
                sites.push_back(v);
            }
        } else {
            for (size_t q = 0; q < amb.n_pauli; q++) {
                sites.push_back(q);
            }
        }
        auto rates = probability_list(require(pre, "/noise/preset", "p"), "/noise/preset/p", sites.size());
        std::string t = type.get<std::string>();
        NoiseModel m;
        if (t == "depolarizing") {
            m = singleton_depolarizing(amb, sites, rates);
        } else if (t == "bit-flip") {
            m = singleton_flips(amb, sites, rates, 'X');
        } else if (t == "phase-flip") {
            m = singleton_flips(amb, sites, rates, 'Z');
        } else if (t == "y-flip") {
            m = singleton_flips(amb, sites, rates, 'Y');
        } else {
            fail("/noise/preset/type", "unknown preset '" + t + "'");
        }
        channels.insert(channels.end(), m.channels().begin(), m.channels().end());
    }
    if (root.contains("measurement_noise")) {
        const json &mn = root.at("measurement_noise");
        if (!mn.is_object()) {
            fail("/measurement_noise", "expected an object");
        }
        only_keys(mn, "/measurement_noise", {"flip"});
        if (amb.n_bits == 0) {
            fail("/measurement_noise", "only data-syndrome codes have measurement bits");
        }
        auto rates = probability_list(require(mn, "/measurement_noise", "flip"), "/measurement_noise/flip", amb.n_bits);
        std::vector<size_t> sites;
        for (size_t j = 0; j < amb.n_bits; j++) {
            sites.push_back(amb.n_pauli + j);
        }
        NoiseModel m = singleton_flips(amb, sites, rates, 'X');
        channels.insert(channels.end(), m.channels().begin(), m.channels().end());
    }
    return NoiseModel(amb, std::move(channels));
}

Config parse_config(const std::string &text) {
    Config cfg;
    try {
        cfg.raw = json::parse(text);
    } catch (const json::parse_error &ex) {
        size_t line = 1, col = 1;
        for (size_t k = 0; k + 1 < ex.byte && k < text.size(); k++) {
            if (text[k] == '\n') {
                line++;
                col = 1;
            } else {
                col++;
            }
        }
        std::string what = ex.what();
        auto pos = what.find("syntax error");
        throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                          (pos == std::string::npos ? what : what.substr(pos)));
    }
    const json &root = cfg.raw;
    if (!root.is_object()) {
        fail("/", "expected an object");
    }
    only_keys(root, "", {"$schema", "description", "code", "noise", "measurement_noise", "gamma_prime"});
    cfg.code = parse_code(require(root, "", "code"));
    cfg.model = parse_noise(root, cfg.code);
    if (root.contains("gamma_prime")) {
        const json &g = root.at("gamma_prime");
        if (g == "alphabet") {
            cfg.mode = GammaPrimeMode::kAlphabet;
        } else if (g == "support") {
            cfg.mode = GammaPrimeMode::kSupport;
        } else {
            fail("/gamma_prime", "expected \"alphabet\" or \"support\"");
        }
    }
    cfg.hash = fnv1a_hex(text);
    return cfg;
}

Config load_config(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open config '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace noise_lab
