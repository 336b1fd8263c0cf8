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

#ifndef NOISE_LAB_NOISE_H
#define NOISE_LAB_NOISE_H

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "noise_lab/alphabet.h"
#include "noise_lab/code.h"
#include "noise_lab/pauli.h"
#include "noise_lab/rng.h"

namespace noise_lab {

inline constexpr size_t kDefaultGammaPrimeCap = 200000;

/// Independent Pauli channel acting on a region. `probs` holds only the
/// non-zero outcomes, as full-ambient elements supported inside `support`.
struct LocalChannel {
    Region support;
    std::vector<std::pair<GroupElement, double>> probs;

    /// Builds a channel from keys written on the support sites only, in
    /// ascending site order ("XZ" on support {2,5} means X_2 Z_5). Bit sites
    /// take '0'/'1'.
    static LocalChannel from_local(
        const Ambient &ambient, const Region &support, const std::map<std::string, double> &local_probs);

    double identity_probability() const;
    /// Throws std::invalid_argument unless probabilities are nonnegative, sum
    /// to 1 within 1e-12 and every key lies inside the support.
    void validate(const Ambient &ambient) const;
    std::string str() const;
};

class NoiseModel {
   public:
    NoiseModel() = default;
    NoiseModel(Ambient ambient, std::vector<LocalChannel> channels);

    const Ambient &ambient() const { return ambient_; }
    const std::vector<LocalChannel> &channels() const { return channels_; }

    /// Smallest per-site alphabet containing every error the model can produce.
    const ErrorAlphabet &alphabet() const { return alphabet_; }

   private:
    Ambient ambient_;
    std::vector<LocalChannel> channels_;
    ErrorAlphabet alphabet_;
};

/// Singleton depolarizing channels: X, Y, Z each with probability p/3.
NoiseModel singleton_depolarizing(const Ambient &ambient, const std::vector<size_t> &sites, const std::vector<double> &p);
/// Singleton channels applying one Pauli letter (or a bit flip on bit sites)
/// with probability p.
NoiseModel singleton_flips(
    const Ambient &ambient, const std::vector<size_t> &sites, const std::vector<double> &p, char letter);
/// Concatenation of the channel lists of models over the same ambient.
NoiseModel merge_models(const NoiseModel &a, const NoiseModel &b);

enum class MomentKind { kExact, kEmpirical };

/// Ordered map from group elements to moment values, with optional standard errors.
class MomentTable {
   public:
    explicit MomentTable(MomentKind kind = MomentKind::kExact) : kind_(kind) {}

    MomentKind kind() const { return kind_; }
    void set(const GroupElement &e, double value, double std_error = 0.0);
    bool contains(const GroupElement &e) const { return index_.count(e) != 0; }
    /// Throws std::out_of_range if `e` has no entry.
    double value(const GroupElement &e) const;
    double std_error(const GroupElement &e) const;
    size_t size() const { return elements_.size(); }
    const std::vector<GroupElement> &elements() const { return elements_; }
    const std::vector<double> &values() const { return values_; }
    const std::vector<double> &std_errors() const { return std_errors_; }

    /// CSV with header "element,value[,stderr]".
    void write_csv(std::ostream &out) const;
    static MomentTable read_csv(std::istream &in);

   private:
    MomentKind kind_;
    std::vector<GroupElement> elements_;
    std::vector<double> values_;
    std::vector<double> std_errors_;
    std::unordered_map<GroupElement, size_t> index_;
};

/// E_γ(a) for every a supported in the channel's support.
MomentTable local_moments(const LocalChannel &ch, const Ambient &ambient);

/// E(a) = prod over channels of E_γ(a restricted to γ).
double exact_moment(const NoiseModel &model, const GroupElement &a);

enum class GammaPrimeMode {
    /// Letters restricted to the model alphabet, moment indices projected
    /// modulo its annihilator. Identical to kSupport when the alphabet is full.
    kAlphabet,
    /// Every element supported inside some support.
    kSupport,
};

/// The canonical-moment index set Γ′, ordered by (weight, letters with I<X<Y<Z).
class GammaPrime {
   public:
    GammaPrime() = default;

    const std::vector<GroupElement> &elements() const { return elements_; }
    size_t size() const { return elements_.size(); }
    const ErrorAlphabet &alphabet() const { return alphabet_; }
    GammaPrimeMode mode() const { return mode_; }
    std::optional<size_t> index_of(const GroupElement &e) const;

    /// Canonical representative used to index moments (identity map in kSupport mode).
    GroupElement project(const GroupElement &e) const { return alphabet_.project(e); }

    /// Calls f(col) for each column a of Γ′ with a ≤ project(row), each column once.
    /// Not thread-safe on a shared instance; use a ColumnScratch per thread.
    struct ColumnScratch {
        std::vector<uint32_t> stamp;
        uint32_t epoch = 0;
    };
    void columns_below(const GroupElement &row, ColumnScratch &scratch, std::vector<uint32_t> &out) const;
    std::vector<uint32_t> columns_below(const GroupElement &row) const;

    /// Returns a copy with the columns permuted: new column j is old column perm[j].
    GammaPrime permuted(const std::vector<size_t> &perm) const;

   private:
    friend GammaPrime gamma_prime(const NoiseModel &, GammaPrimeMode, size_t);

    struct SupportTable {
        std::vector<size_t> sites;
        std::vector<int32_t> local;  // local code index (base 4) -> column or -1
    };

    std::vector<GroupElement> elements_;
    std::unordered_map<GroupElement, size_t> index_;
    std::vector<SupportTable> supports_;
    ErrorAlphabet alphabet_;
    GammaPrimeMode mode_ = GammaPrimeMode::kAlphabet;
};

GammaPrime gamma_prime(
    const NoiseModel &model, GammaPrimeMode mode = GammaPrimeMode::kAlphabet, size_t cap = kDefaultGammaPrimeCap);

struct CorrectabilityWitness {
    bool ok = true;
    /// Failing pair of supports (channel indices), if any.
    std::optional<std::pair<size_t, size_t>> pair;
    /// Channel violating P(I) > 1/2, if any.
    std::optional<size_t> channel;
    /// Set when the identity-probability test fails: whether every exact moment
    /// over Γ′ and over (sampled) measured elements is still positive. Reported
    /// as weaker evidence only; it does not change `ok`.
    std::optional<bool> moments_positive;
    std::string message;
};

/// Pairwise-union correctability plus P_γ(I) > 1/2 on every channel. With
/// kAlphabet the region test is restricted to errors in the model alphabet.
CorrectabilityWitness is_correctable_noise(
    const NoiseModel &model, const CodeGroups &code, GammaPrimeMode mode = GammaPrimeMode::kAlphabet);

/// Index into ch.probs selected by a uniform variate u in [0, 1).
size_t draw_outcome(const LocalChannel &ch, double u);

/// Draws one error: one independent outcome per channel, multiplied together.
GroupElement sample_error(const NoiseModel &model, CounterRng &rng);

}  // namespace noise_lab

#endif
