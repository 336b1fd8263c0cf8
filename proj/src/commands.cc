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

#include "noise_lab/commands.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "noise_lab/errors.h"
#include "noise_lab/estimation.h"
#include "noise_lab/oracle.h"
#include "noise_lab/syndrome_sim.h"

namespace noise_lab {

using nlohmann::json;

namespace {

constexpr size_t kChannelRankLimit = 12;
constexpr uint64_t kRowSampleStream = 7;

json base_report(const Config &cfg, const std::string &command) {
    const CodeGroups &c = cfg.code;
    json r;
    r["tool_version"] = kToolVersion;
    r["config_hash"] = cfg.hash;
    r["command"] = command;
    r["code"] = {
        {"name", c.name},
        {"kind", to_string(c.kind)},
        {"n_pauli", c.ambient.n_pauli},
        {"n_bits", c.ambient.n_bits},
        {"measured_generators", c.meas_generators.size()},
        {"layout", c.layout},
    };
    r["gamma_prime"] = cfg.mode == GammaPrimeMode::kAlphabet ? "alphabet" : "support";
    return r;
}

json witness_json(const CorrectabilityWitness &w) {
    json j;
    j["ok"] = w.ok;
    j["message"] = w.message;
    if (w.pair) {
        j["failing_pair"] = {w.pair->first, w.pair->second};
    }
    if (w.channel) {
        j["failing_channel"] = *w.channel;
    }
    if (w.moments_positive) {
        j["moments_positive"] = *w.moments_positive;
    }
    return j;
}

json identifiability_json(const IdentifiabilityReport &rep) {
    json j;
    j["identifiable"] = rep.identifiable;
    j["num_columns"] = rep.num_columns;
    j["rank_meas"] = rep.rank_meas;
    j["rank_logical"] = rep.rank_logical;
    j["gram_ratio"] = rep.gram_ratio ? json(*rep.gram_ratio) : json(nullptr);
    j["correctable"] = witness_json(rep.correctable);
    j["sampled"] = rep.sampled;
    j["notes"] = rep.notes;
    return j;
}

GroupElement bits_only(const GroupElement &e) {
    GroupElement out(e.ambient());
    for (size_t j = 0; j < e.n_bits(); j++) {
        out.set_bit(j, e.bit(j));
    }
    return out;
}

std::vector<GroupElement> parse_targets(const CodeGroups &code, const std::string &spec) {
    std::vector<GroupElement> out;
    if (spec.empty() || spec == "all-cosets") {
        for (auto &t : logical_transversal(code)) {
            if (!t.is_identity()) {
                out.push_back(std::move(t));
            }
        }
        return out;
    }
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char ch) { return std::isspace(ch); }),
                   item.end());
        if (item.empty()) {
            continue;
        }
        GroupElement t = GroupElement::from_str(item);
        if (t.ambient() != code.ambient) {
            throw std::invalid_argument("Target " + item + " does not match the code's " +
                                        std::to_string(code.ambient.n_pauli) + " qubits and " +
                                        std::to_string(code.ambient.n_bits) + " bits.");
        }
        if (!code.logical.contains(t)) {
            throw std::invalid_argument("Target " + item + " is not a logical element.");
        }
        out.push_back(std::move(t));
    }
    if (out.empty()) {
        throw std::invalid_argument("No targets given.");
    }
    return out;
}

struct EstimateCore {
    IdentifiabilityReport identifiability;
    std::vector<GroupElement> targets;
    std::optional<LogicalEstimate> estimate;
    std::optional<LogicalChannelTable> channel;
    std::optional<double> ds_calibration;
    std::vector<std::string> warnings;
    bool empirical = false;
};

EstimateCore estimate_core(const Config &cfg, const EstimateOptions &options) {
    const CodeGroups &code = cfg.code;
    const NoiseModel &model = cfg.model;
    EstimateCore core;
    core.targets = parse_targets(code, options.targets);
    IdentifiabilityOptions io;
    io.mode = cfg.mode;
    io.seed = options.seed;
    core.identifiability = identifiability_check(code, model, io);
    if (!core.identifiability.identifiable) {
        return core;
    }

    GammaPrime gp = gamma_prime(model, cfg.mode);
    DesignMatrix rows = build_design_matrix(code.meas, gp, kDefaultRowCapLog2, options.seed, kRowSampleStream);
    if (rows.sampled) {
        core.warnings.push_back("Measurement group too large to enumerate; using " + std::to_string(rows.num_rows()) +
                                " random measured elements.");
    }
    bool ds = code.kind == CodeKind::kDataSyndrome;

    MomentTable meas(MomentKind::kExact);
    std::optional<SyndromeHistogram> hist;
    if (options.data.empty()) {
        for (const auto &s : rows.rows) {
            double v = exact_moment(model, s);
            if (ds) {
                v *= exact_moment(model, bits_only(s));
            }
            meas.set(s, v);
        }
    } else {
        core.empirical = true;
        SyndromeDataset data = read_dataset(options.data);
        if (data.n_pauli != code.ambient.n_pauli || data.m != code.meas_generators.size()) {
            throw std::invalid_argument("Dataset shape (n=" + std::to_string(data.n_pauli) +
                                        ", m=" + std::to_string(data.m) + ") does not match the code (n=" +
                                        std::to_string(code.ambient.n_pauli) +
                                        ", m=" + std::to_string(code.meas_generators.size()) + ").");
        }
        meas = empirical_moments(data, code, rows.rows);
        if (data.m <= 64) {
            hist = histogram(data);
        }
    }

    std::vector<GroupElement> solve_for = core.targets;
    bool want_channel = code.logical.rank() <= kChannelRankLimit;
    if (want_channel) {
        std::unordered_set<GroupElement> seen(solve_for.begin(), solve_for.end());
        code.logical.for_each([&](const GroupElement &l) {
            if (seen.insert(l).second) {
                solve_for.push_back(l);
            }
        });
    } else {
        core.warnings.push_back("Logical group rank " + std::to_string(code.logical.rank()) +
                                " exceeds " + std::to_string(kChannelRankLimit) + "; logical channel omitted.");
    }

    std::vector<LogTarget> lts;
    if (ds) {
        core.ds_calibration = calibrate_ds_constant();
        lts = ds_targets(solve_for, *core.ds_calibration);
    } else {
        for (const auto &t : solve_for) {
            lts.push_back(LogTarget{t.str(), {{t, 1.0}}, 1.0});
        }
    }
    SolveOptions so;
    if (hist) {
        so.histogram = &*hist;
    }
    core.estimate = solve_log_targets(meas, code, gp, lts, so);
    if (want_channel) {
        const MomentTable &m = core.estimate->moments;
        core.channel = logical_channel_probabilities([&](const GroupElement &l) { return m.value(l); }, code);
    }
    return core;
}

json moments_json(const MomentTable &m, const std::vector<GroupElement> &elements, bool with_stderr) {
    json out = json::array();
    for (const auto &e : elements) {
        json item = {{"element", e.str()}, {"value", m.value(e)}};
        if (with_stderr) {
            item["stderr"] = m.std_error(e);
        }
        out.push_back(std::move(item));
    }
    return out;
}

json channel_json(const LogicalChannelTable &t) {
    json out;
    json basis = json::array();
    for (const auto &b : t.logical_basis) {
        basis.push_back(b.str());
    }
    out["logical_basis"] = basis;
    out["gauge_size"] = t.gauge_size;
    json cosets = json::array();
    for (size_t s = 0; s < t.mass.size(); s++) {
        cosets.push_back({{"syndrome", s}, {"representative", t.representatives[s].str()}, {"probability", t.mass[s]}});
    }
    out["cosets"] = cosets;
    return out;
}

void emit(const json &report, const std::string &out_path, std::ostream &out) {
    if (out_path.empty()) {
        out << report.dump(2) << "\n";
        return;
    }
    std::ofstream f(out_path);
    if (!f) {
        throw std::runtime_error("Cannot open '" + out_path + "' for writing.");
    }
    f << report.dump(2) << "\n";
    if (!f) {
        throw std::runtime_error("Failed to write '" + out_path + "'.");
    }
}

template <typename F>
int guarded(std::ostream &err, F &&body) {
    try {
        return body();
    } catch (const NotIdentifiable &ex) {
        err << "not identifiable: " << ex.what() << "\n";
        return kExitNotIdentifiable;
    } catch (const ConfigError &ex) {
        err << "config error: " << ex.what() << "\n";
    } catch (const CapExceeded &ex) {
        err << "cap exceeded: " << ex.what() << "\n";
    } catch (const NonPositiveMoment &ex) {
        err << "moment error: " << ex.what() << "\n";
    } catch (const std::exception &ex) {
        err << "error: " << ex.what() << "\n";
    }
    return kExitError;
}

}  // namespace

CommandOutput run_check(const Config &cfg) {
    CommandOutput out;
    out.report = base_report(cfg, "check");
    IdentifiabilityOptions io;
    io.mode = cfg.mode;
    auto rep = identifiability_check(cfg.code, cfg.model, io);
    out.report["identifiability"] = identifiability_json(rep);
    out.exit_code = rep.identifiable ? kExitOk : kExitNotIdentifiable;
    return out;
}

CommandOutput run_simulate(const Config &cfg, const SimulateOptions &options) {
    if (options.out.empty()) {
        throw std::invalid_argument("simulate needs an output path.");
    }
    SyndromeDataset ds = run_rounds(cfg.code, cfg.model, options.rounds, options.seed);
    write_dataset(ds, options.out);
    if (!options.csv.empty()) {
        std::ofstream f(options.csv);
        if (!f) {
            throw std::runtime_error("Cannot open '" + options.csv + "' for writing.");
        }
        write_dataset_csv(ds, f);
    }
    CommandOutput out;
    out.report = base_report(cfg, "simulate");
    out.report["dataset"] = {
        {"path", options.out},
        {"format", "SYND1"},
        {"header_bytes", kDatasetHeaderBytes},
        {"n_pauli", ds.n_pauli},
        {"m", ds.m},
        {"rounds", options.rounds},
        {"rows", ds.rows},
        {"seed", ds.seed},
        {"paired", ds.paired},
        {"words_per_row", ds.words_per_row()},
    };
    std::ofstream side(options.out + ".json");
    if (!side) {
        throw std::runtime_error("Cannot write sidecar '" + options.out + ".json'.");
    }
    side << out.report.dump(2) << "\n";
    return out;
}

CommandOutput run_estimate(const Config &cfg, const EstimateOptions &options) {
    if (options.exact == !options.data.empty()) {
        throw std::invalid_argument("estimate needs exactly one of --exact or --data.");
    }
    CommandOutput out;
    out.report = base_report(cfg, "estimate");
    out.report["input"] = options.exact ? "exact" : "data";
    EstimateCore core = estimate_core(cfg, options);
    out.report["identifiability"] = identifiability_json(core.identifiability);
    if (!core.estimate) {
        out.report["warnings"] = {"Noise model is not identifiable from the measurements; no estimate produced."};
        out.exit_code = kExitNotIdentifiable;
        return out;
    }
    const LogicalEstimate &est = *core.estimate;
    out.report["logical_moments"] = moments_json(est.moments, core.targets, core.empirical);
    if (core.channel) {
        out.report["logical_channel"] = channel_json(*core.channel);
    }
    if (core.ds_calibration) {
        out.report["ds_calibration"] = *core.ds_calibration;
    }
    out.report["solver"] = {{"method", est.method}, {"equations_used", est.equations_used}};
    std::vector<std::string> warnings = core.warnings;
    warnings.insert(warnings.end(), est.warnings.begin(), est.warnings.end());
    out.report["warnings"] = warnings;
    json dropped = json::array();
    for (const auto &d : est.dropped) {
        dropped.push_back(d.str());
    }
    out.report["dropped"] = dropped;
    return out;
}

CommandOutput run_oracle(const Config &cfg, const std::string &targets) {
    const CodeGroups &code = cfg.code;
    CommandOutput out;
    out.report = base_report(cfg, "oracle");
    DistributionTable p = oracle::full_distribution(cfg.model);
    std::vector<GroupElement> ts = parse_targets(code, targets);
    json moments = json::array();
    std::vector<double> brute;
    for (const auto &t : ts) {
        brute.push_back(oracle::brute_fourier(p, t));
        moments.push_back({{"element", t.str()}, {"value", brute.back()}});
    }
    out.report["logical_moments"] = moments;

    double gauge_size = std::ldexp(1.0, static_cast<int>(code.gauge.rank()));
    std::optional<LogicalChannelTable> channel;
    if (code.logical.rank() <= kChannelRankLimit) {
        channel = logical_channel_probabilities([&](const GroupElement &l) { return oracle::brute_fourier(p, l); },
                                                code);
        for (size_t s = 0; s < channel->mass.size(); s++) {
            channel->mass[s] = gauge_size * oracle::coset_logical_channel(p, code.gauge, channel->representatives[s]);
        }
        out.report["logical_channel"] = channel_json(*channel);
    }

    EstimateOptions eo;
    eo.exact = true;
    eo.targets = targets;
    json cmp;
    try {
        EstimateCore core = estimate_core(cfg, eo);
        cmp["identifiable"] = core.identifiability.identifiable;
        if (core.estimate) {
            double dev = 0;
            for (size_t k = 0; k < ts.size(); k++) {
                dev = std::max(dev, std::abs(core.estimate->moments.value(ts[k]) - brute[k]));
            }
            cmp["max_moment_deviation"] = dev;
            if (channel && core.channel) {
                double cdev = 0;
                for (size_t s = 0; s < channel->mass.size(); s++) {
                    cdev = std::max(cdev, std::abs(core.channel->mass[s] - channel->mass[s]));
                }
                cmp["max_channel_deviation"] = cdev;
                dev = std::max(dev, cdev);
            }
            cmp["max_deviation"] = dev;
        }
    } catch (const std::exception &ex) {
        cmp["error"] = ex.what();
    }
    out.report["pipeline_comparison"] = cmp;
    return out;
}

int cmd_check(const std::string &config_path, const std::string &out_path, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        Config cfg = load_config(config_path);
        CommandOutput r = run_check(cfg);
        emit(r.report, out_path, out);
        return r.exit_code;
    });
}

int cmd_simulate(const std::string &config_path, const SimulateOptions &options, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        Config cfg = load_config(config_path);
        CommandOutput r = run_simulate(cfg, options);
        emit(r.report, "", out);
        return r.exit_code;
    });
}

int cmd_estimate(
    const std::string &config_path, const EstimateOptions &options, const std::string &out_path, std::ostream &out,
    std::ostream &err) {
    return guarded(err, [&] {
        Config cfg = load_config(config_path);
        CommandOutput r = run_estimate(cfg, options);
        emit(r.report, out_path, out);
        return r.exit_code;
    });
}

int cmd_oracle(
    const std::string &config_path, const std::string &targets, const std::string &out_path, std::ostream &out,
    std::ostream &err) {
    return guarded(err, [&] {
        Config cfg = load_config(config_path);
        CommandOutput r = run_oracle(cfg, targets);
        if (r.report["pipeline_comparison"].contains("max_deviation")) {
            err << "estimate-vs-oracle max deviation: " << r.report["pipeline_comparison"]["max_deviation"].get<double>()
                << "\n";
        }
        emit(r.report, out_path, out);
        return r.exit_code;
    });
}

}  // namespace noise_lab
