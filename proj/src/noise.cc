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

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "noise_lab/errors.h"

namespace noise_lab {

LocalChannel LocalChannel::from_local(
    const Ambient &ambient, const Region &support, const std::map<std::string, double> &local_probs) {
    LocalChannel out;
    out.support = support;
    for (size_t s : support.sites) {
        if (s >= ambient.num_sites()) {
            throw std::invalid_argument(
                "Support site " + std::to_string(s) + " is outside the ambient " + ambient.str() + ".");
        }
    }
    for (const auto &[key, p] : local_probs) {
        if (key.size() != support.size()) {
            throw std::invalid_argument(
                "Channel key '" + key + "' has length " + std::to_string(key.size()) + " but the support has " +
                std::to_string(support.size()) + " sites.");
        }
        GroupElement e(ambient);
        for (size_t k = 0; k < key.size(); k++) {
            size_t s = support.sites[k];
            char ch = key[k];
            if (s < ambient.n_pauli) {
                if (ch != 'I' && ch != 'X' && ch != 'Y' && ch != 'Z' && ch != '_') {
                    throw std::invalid_argument("Invalid Pauli letter '" + std::string(1, ch) + "' in key '" + key + "'.");
                }
                e.set_pauli(s, ch == '_' ? 'I' : ch);
            } else {
                if (ch != '0' && ch != '1') {
                    throw std::invalid_argument("Invalid bit letter '" + std::string(1, ch) + "' in key '" + key + "'.");
                }
                e.set_bit(s - ambient.n_pauli, ch == '1');
            }
        }
        if (p != 0.0) {
            out.probs.emplace_back(std::move(e), p);
        }
    }
    out.validate(ambient);
    return out;
}

double LocalChannel::identity_probability() const {
    double total = 0;
    for (const auto &[e, p] : probs) {
        if (e.is_identity()) {
            total += p;
        }
    }
    return total;
}

void LocalChannel::validate(const Ambient &ambient) const {
    double total = 0;
    for (const auto &[e, p] : probs) {
        if (e.ambient() != ambient) {
            throw std::invalid_argument("Channel outcome " + e.str() + " does not match ambient " + ambient.str() + ".");
        }
        if (!(p >= 0)) {
            throw std::invalid_argument("Negative probability for outcome " + e.str() + ".");
        }
        if (!supported_in(e, support)) {
            throw std::invalid_argument("Outcome " + e.str() + " is not supported in " + support.str() + ".");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        std::stringstream ss;
        ss << std::setprecision(17) << "Channel on " << support.str() << " has total probability " << total << ".";
        throw std::invalid_argument(ss.str());
    }
}

std::string LocalChannel::str() const {
    std::stringstream ss;
    ss << "channel on " << support.str() << ":";
    for (const auto &[e, p] : probs) {
        ss << " " << restrict_element(e, support).str() << "=" << p;
    }
    return ss.str();
}

NoiseModel::NoiseModel(Ambient ambient, std::vector<LocalChannel> channels)
    : ambient_(ambient), channels_(std::move(channels)), alphabet_(ambient) {
    for (const auto &ch : channels_) {
        for (size_t s : ch.support.sites) {
            if (s >= ambient.num_sites()) {
                throw std::invalid_argument(
                    "Support site " + std::to_string(s) + " is outside the ambient " + ambient.str() + ".");
            }
        }
        ch.validate(ambient);
        for (const auto &[e, p] : ch.probs) {
            alphabet_.include_element(e);
        }
    }
}

NoiseModel singleton_depolarizing(const Ambient &ambient, const std::vector<size_t> &sites, const std::vector<double> &p) {
    if (p.size() != 1 && p.size() != sites.size()) {
        throw std::invalid_argument("singleton_depolarizing: need one rate or one per site.");
    }
    std::vector<LocalChannel> channels;
    for (size_t k = 0; k < sites.size(); k++) {
        double pk = p.size() == 1 ? p[0] : p[k];
        if (sites[k] < ambient.n_pauli) {
            channels.push_back(LocalChannel::from_local(
                ambient, Region{sites[k]}, {{"I", 1 - pk}, {"X", pk / 3}, {"Y", pk / 3}, {"Z", pk / 3}}));
        } else {
            channels.push_back(LocalChannel::from_local(ambient, Region{sites[k]}, {{"0", 1 - pk}, {"1", pk}}));
        }
    }
    return NoiseModel(ambient, std::move(channels));
}

NoiseModel singleton_flips(
    const Ambient &ambient, const std::vector<size_t> &sites, const std::vector<double> &p, char letter) {
    if (p.size() != 1 && p.size() != sites.size()) {
        throw std::invalid_argument("singleton_flips: need one rate or one per site.");
    }
    std::vector<LocalChannel> channels;
    for (size_t k = 0; k < sites.size(); k++) {
        double pk = p.size() == 1 ? p[0] : p[k];
        if (sites[k] < ambient.n_pauli) {
            channels.push_back(
                LocalChannel::from_local(ambient, Region{sites[k]}, {{"I", 1 - pk}, {std::string(1, letter), pk}}));
        } else {
            channels.push_back(LocalChannel::from_local(ambient, Region{sites[k]}, {{"0", 1 - pk}, {"1", pk}}));
        }
    }
    return NoiseModel(ambient, std::move(channels));
}

NoiseModel merge_models(const NoiseModel &a, const NoiseModel &b) {
    if (a.ambient() != b.ambient()) {
        throw std::invalid_argument("merge_models: ambient mismatch.");
    }
    std::vector<LocalChannel> channels = a.channels();
    channels.insert(channels.end(), b.channels().begin(), b.channels().end());
    return NoiseModel(a.ambient(), std::move(channels));
}

void MomentTable::set(const GroupElement &e, double value, double std_error) {
    auto it = index_.find(e);
    if (it != index_.end()) {
        values_[it->second] = value;
        std_errors_[it->second] = std_error;
        return;
    }
    index_.emplace(e, elements_.size());
    elements_.push_back(e);
    values_.push_back(value);
    std_errors_.push_back(std_error);
}

double MomentTable::value(const GroupElement &e) const {
    auto it = index_.find(e);
    if (it == index_.end()) {
        throw std::out_of_range("No moment recorded for " + e.str() + ".");
    }
    return values_[it->second];
}

double MomentTable::std_error(const GroupElement &e) const {
    auto it = index_.find(e);
    if (it == index_.end()) {
        throw std::out_of_range("No moment recorded for " + e.str() + ".");
    }
    return std_errors_[it->second];
}

void MomentTable::write_csv(std::ostream &out) const {
    bool with_err = kind_ == MomentKind::kEmpirical;
    out << "element,value" << (with_err ? ",stderr" : "") << "\n";
    out << std::setprecision(17);
    for (size_t k = 0; k < elements_.size(); k++) {
        out << elements_[k].str() << "," << values_[k];
        if (with_err) {
            out << "," << std_errors_[k];
        }
        out << "\n";
    }
}

MomentTable MomentTable::read_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("Empty moment CSV.");
    }
    bool with_err;
    if (line == "element,value") {
        with_err = false;
    } else if (line == "element,value,stderr") {
        with_err = true;
    } else {
        throw std::invalid_argument("Unexpected moment CSV header '" + line + "'.");
    }
    MomentTable out(with_err ? MomentKind::kEmpirical : MomentKind::kExact);
    size_t line_no = 1;
    while (std::getline(in, line)) {
        line_no++;
        if (line.empty()) {
            continue;
        }
        std::stringstream ss(line);
        std::string elem, val, err;
        std::getline(ss, elem, ',');
        std::getline(ss, val, ',');
        if (with_err) {
            std::getline(ss, err, ',');
        }
        try {
            out.set(GroupElement::from_str(elem), std::stod(val), with_err ? std::stod(err) : 0.0);
        } catch (const std::exception &ex) {
            throw std::invalid_argument("Moment CSV line " + std::to_string(line_no) + ": " + ex.what());
        }
    }
    return out;
}

namespace {

double channel_moment(const LocalChannel &ch, const GroupElement &a) {
    double total = 0;
    for (const auto &[e, p] : ch.probs) {
        total += bicharacter(a, e).is_negative() ? -p : p;
    }
    return total;
}

// Calls f(element) for every element supported on `sites` whose letters are
// drawn from `letters[k]` (which always includes code 0).
template <typename F>
void for_each_local(
    const Ambient &ambient, const std::vector<size_t> &sites, const std::vector<std::vector<uint8_t>> &letters, F &&f) {
    std::vector<size_t> digit(sites.size(), 0);
    GroupElement cur(ambient);
    while (true) {
        f(static_cast<const GroupElement &>(cur));
        size_t k = 0;
        while (k < sites.size()) {
            digit[k]++;
            if (digit[k] < letters[k].size()) {
                cur.set_site_code(sites[k], letters[k][digit[k]]);
                break;
            }
            digit[k] = 0;
            cur.set_site_code(sites[k], letters[k][0]);
            k++;
        }
        if (k == sites.size()) {
            return;
        }
    }
}

}  // namespace

MomentTable local_moments(const LocalChannel &ch, const Ambient &ambient) {
    MomentTable out;
    std::vector<std::vector<uint8_t>> letters;
    for (size_t s : ch.support.sites) {
        letters.push_back(s < ambient.n_pauli ? std::vector<uint8_t>{0, 1, 2, 3} : std::vector<uint8_t>{0, 1});
    }
    for_each_local(ambient, ch.support.sites, letters, [&](const GroupElement &a) { out.set(a, channel_moment(ch, a)); });
    return out;
}

double exact_moment(const NoiseModel &model, const GroupElement &a) {
    if (a.ambient() != model.ambient()) {
        throw std::invalid_argument("exact_moment: element " + a.str() + " does not match the model ambient.");
    }
    double total = 1.0;
    for (const auto &ch : model.channels()) {
        total *= channel_moment(ch, a);
    }
    return total;
}

std::optional<size_t> GammaPrime::index_of(const GroupElement &e) const {
    auto it = index_.find(e);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

void GammaPrime::columns_below(const GroupElement &row, ColumnScratch &scratch, std::vector<uint32_t> &out) const {
    out.clear();
    if (scratch.stamp.size() != elements_.size()) {
        scratch.stamp.assign(elements_.size(), 0);
        scratch.epoch = 0;
    }
    if (++scratch.epoch == 0) {
        std::fill(scratch.stamp.begin(), scratch.stamp.end(), 0);
        scratch.epoch = 1;
    }
    size_t offsets[32];
    for (const auto &table : supports_) {
        size_t k = 0;
        for (size_t j = 0; j < table.sites.size(); j++) {
            uint8_t c = alphabet_.project_code(table.sites[j], row.site_code(table.sites[j]));
            if (c != 0) {
                offsets[k++] = size_t{c} << (2 * j);
            }
        }
        if (k == 0) {
            continue;
        }
        size_t total = size_t{1} << k;
        size_t idx = 0;
        for (size_t g = 1; g < total; g++) {
            // Gray code walk over the non-identity sites of the restricted row.
            idx ^= offsets[std::countr_zero(g)];
            int32_t col = table.local[idx];
            if (col >= 0 && scratch.stamp[col] != scratch.epoch) {
                scratch.stamp[col] = scratch.epoch;
                out.push_back(static_cast<uint32_t>(col));
            }
        }
    }
}

std::vector<uint32_t> GammaPrime::columns_below(const GroupElement &row) const {
    ColumnScratch scratch;
    std::vector<uint32_t> out;
    columns_below(row, scratch, out);
    return out;
}

namespace {

constexpr size_t kMaxSupportSites = 11;

}  // namespace

GammaPrime GammaPrime::permuted(const std::vector<size_t> &perm) const {
    if (perm.size() != elements_.size()) {
        throw std::invalid_argument("GammaPrime::permuted: permutation has the wrong length.");
    }
    std::vector<int32_t> new_of_old(elements_.size(), -1);
    GammaPrime out;
    out.alphabet_ = alphabet_;
    out.mode_ = mode_;
    for (size_t j = 0; j < perm.size(); j++) {
        if (perm[j] >= elements_.size() || new_of_old[perm[j]] != -1) {
            throw std::invalid_argument("GammaPrime::permuted: not a permutation.");
        }
        new_of_old[perm[j]] = static_cast<int32_t>(j);
        out.elements_.push_back(elements_[perm[j]]);
        out.index_.emplace(elements_[perm[j]], j);
    }
    out.supports_ = supports_;
    for (auto &table : out.supports_) {
        for (auto &col : table.local) {
            if (col >= 0) {
                col = new_of_old[col];
            }
        }
    }
    return out;
}

GammaPrime gamma_prime(const NoiseModel &model, GammaPrimeMode mode, size_t cap) {
    const Ambient &amb = model.ambient();
    GammaPrime out;
    out.mode_ = mode;
    out.alphabet_ = mode == GammaPrimeMode::kAlphabet ? model.alphabet() : ErrorAlphabet::full(amb);

    // Distinct supports, dropping those contained in another one.
    std::vector<Region> supports;
    for (const auto &ch : model.channels()) {
        if (ch.support.empty()) {
            continue;
        }
        if (std::find(supports.begin(), supports.end(), ch.support) == supports.end()) {
            supports.push_back(ch.support);
        }
    }
    std::vector<Region> maximal;
    for (size_t i = 0; i < supports.size(); i++) {
        bool dominated = false;
        for (size_t j = 0; j < supports.size() && !dominated; j++) {
            dominated = i != j && supports[i].is_subset_of(supports[j]) && supports[i] != supports[j];
        }
        if (!dominated) {
            maximal.push_back(supports[i]);
        }
    }

    std::set<GroupElement, decltype(&canonical_less)> found(&canonical_less);
    for (const auto &region : maximal) {
        if (region.size() > kMaxSupportSites) {
            throw CapExceeded(
                "Support " + region.str() + " has more than " + std::to_string(kMaxSupportSites) + " sites.");
        }
        std::vector<std::vector<uint8_t>> letters;
        for (size_t s : region.sites) {
            std::vector<uint8_t> l{0};
            for (uint8_t c : out.alphabet_.representatives(s)) {
                l.push_back(c);
            }
            letters.push_back(std::move(l));
        }
        for_each_local(amb, region.sites, letters, [&](const GroupElement &a) {
            if (!a.is_identity()) {
                found.insert(a);
                if (found.size() > cap) {
                    throw CapExceeded("Gamma-prime exceeds the cap of " + std::to_string(cap) + " columns.");
                }
            }
        });
    }
    out.elements_.assign(found.begin(), found.end());
    for (size_t k = 0; k < out.elements_.size(); k++) {
        out.index_.emplace(out.elements_[k], k);
    }
    for (const auto &region : maximal) {
        GammaPrime::SupportTable table;
        table.sites = region.sites;
        table.local.assign(size_t{1} << (2 * region.size()), -1);
        for (size_t idx = 1; idx < table.local.size(); idx++) {
            GroupElement a(amb);
            bool valid = true;
            for (size_t j = 0; j < region.size() && valid; j++) {
                uint8_t c = (idx >> (2 * j)) & 3;
                size_t s = region.sites[j];
                if (s >= amb.n_pauli && c > 1) {
                    valid = false;
                } else {
                    a.set_site_code(s, c);
                }
            }
            if (!valid) {
                continue;
            }
            auto it = out.index_.find(a);
            if (it != out.index_.end()) {
                table.local[idx] = static_cast<int32_t>(it->second);
            }
        }
        out.supports_.push_back(std::move(table));
    }
    return out;
}

CorrectabilityWitness is_correctable_noise(const NoiseModel &model, const CodeGroups &code, GammaPrimeMode mode) {
    if (model.ambient() != code.ambient) {
        throw std::invalid_argument("is_correctable_noise: model and code ambients differ.");
    }
    CorrectabilityWitness w;
    ErrorAlphabet alphabet = mode == GammaPrimeMode::kAlphabet ? model.alphabet() : ErrorAlphabet::full(model.ambient());
    const auto &chs = model.channels();
    std::map<std::vector<size_t>, bool> cache;
    for (size_t i = 0; i < chs.size() && w.ok; i++) {
        for (size_t j = i; j < chs.size() && w.ok; j++) {
            Region u = chs[i].support.unite(chs[j].support);
            auto it = cache.find(u.sites);
            bool good;
            if (it != cache.end()) {
                good = it->second;
            } else {
                good = is_correctable_region(code, u, alphabet);
                cache.emplace(u.sites, good);
            }
            if (!good) {
                w.ok = false;
                w.pair = std::make_pair(i, j);
                w.message = "Union of supports " + chs[i].support.str() + " and " + chs[j].support.str() +
                            " is not a correctable region.";
            }
        }
    }
    if (!w.ok) {
        return w;
    }
    for (size_t i = 0; i < chs.size(); i++) {
        if (!(chs[i].identity_probability() > 0.5)) {
            w.ok = false;
            w.channel = i;
            std::stringstream ss;
            ss << "Channel " << i << " on " << chs[i].support.str() << " has identity probability "
               << chs[i].identity_probability() << " <= 1/2.";
            w.message = ss.str();
            break;
        }
    }
    if (w.channel.has_value()) {
        bool positive = true;
        auto gp = gamma_prime(model, mode);
        for (const auto &a : gp.elements()) {
            positive = positive && exact_moment(model, a) > 0;
        }
        const size_t kSampled = 4096;
        if (code.meas.rank() <= 12) {
            code.meas.for_each([&](const GroupElement &s) { positive = positive && exact_moment(model, s) > 0; });
        } else {
            CounterRng rng(0x5EED, 0);
            for (size_t k = 0; k < kSampled; k++) {
                GroupElement s(code.ambient);
                for (const auto &r : code.meas.rows()) {
                    if (rng.next() & 1) {
                        s *= r;
                    }
                }
                positive = positive && exact_moment(model, s) > 0;
            }
        }
        w.moments_positive = positive;
    }
    return w;
}

size_t draw_outcome(const LocalChannel &ch, double u) {
    size_t k = 0;
    for (; k + 1 < ch.probs.size(); k++) {
        if (u < ch.probs[k].second) {
            break;
        }
        u -= ch.probs[k].second;
    }
    return k;
}

GroupElement sample_error(const NoiseModel &model, CounterRng &rng) {
    GroupElement out(model.ambient());
    for (const auto &ch : model.channels()) {
        double u = rng.uniform();
        if (!ch.probs.empty()) {
            out *= ch.probs[draw_outcome(ch, u)].first;
        }
    }
    return out;
}

}  // namespace noise_lab
