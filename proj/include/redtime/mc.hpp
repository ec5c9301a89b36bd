// Copyright 2026 The redtime Authors
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

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "redtime/model.hpp"
#include "redtime/profiles.hpp"
#include "redtime/rng.hpp"

namespace redtime {

enum class ProbingKind { uniform, truncated_exponential };

/// Distribution of one device's probing instant on [0, window].
struct ProbingModel {
    ProbingKind kind = ProbingKind::uniform;
    double window = 1.0;
    double decay_time = 0.0;  // truncated_exponential only

    static ProbingModel uniform(double window);
    /// e^(-t/decay_time) renormalized on [0, window].
    static ProbingModel truncated_exponential(double window, double decay_time);
    /// "uniform" or "exp:<t_decay>" where t_decay is in seconds.
    static ProbingModel from_name(std::string_view name, double window);

    void validate() const;
    std::string name() const;

    /// Inverse-CDF transform of a uniform variate in [0, 1).
    double sample(double u) const;
};

/// One realization of the two-probing protocol.
struct TrialRecord {
    double t1 = 0.0;  // σ₁ probing instant
    double t3 = 0.0;  // σ₃ probing instant
    bool sigma1_first = false;
    double gap = 0.0;
    bool overlapped = false;
    std::optional<double> interruption_x;  // gap/δt when overlapped
    int outcome = +1;
};

struct EnsembleStats {
    std::uint64_t n_plus = 0;
    std::uint64_t n_minus = 0;
    std::int64_t delta_n = 0;
    double empirical_p3_plus = 0.0;
    double std_error = 0.0;
    double overlap_fraction = 0.0;
    double sigma1_first_fraction = 0.0;
    std::uint64_t sigma1_first_count = 0;
    std::uint64_t overlap_count = 0;

    std::uint64_t trials() const { return n_plus + n_minus; }
    bool operator==(const EnsembleStats &) const = default;
};

/// Integer tallies behind EnsembleStats; merging is associative and commutative.
struct EnsembleCounts {
    std::uint64_t n_plus = 0;
    std::uint64_t n_minus = 0;
    std::uint64_t sigma1_first = 0;
    std::uint64_t overlapped = 0;

    void add(const TrialRecord &r);
    EnsembleCounts &operator+=(const EnsembleCounts &o);
    EnsembleStats finish() const;
};

/// Both devices of an experiment. The default uses the same uniform model for
/// σ₁ and σ₃; unequal windows are expressed by giving each its own model.
struct ProbingPair {
    ProbingModel sigma1;
    ProbingModel sigma3;

    static ProbingPair same(const ProbingModel &m) { return {m, m}; }

    /// Both devices uniform over the configured window, so the closed-form
    /// predictions apply.
    bool analytic_comparable(const ExperimentConfig &config) const;
};

/// Draws (t1, t3) from one block of the stream.
std::pair<double, double> sample_probing_times(const ProbingPair &devices, TrialStream &stream);

/// Final σ₃ readout. `interruption_x` is set when the σ₃ probe interrupts a
/// running σ₁ reduction; otherwise the state is fully reduced and the readout
/// is a fair coin. `u` is a uniform variate in [0, 1).
int measure_sigma3(const ReductionProfile &profile, std::optional<double> interruption_x, InitialSign sign,
                   double u);

TrialRecord run_trial(const ExperimentConfig &config, const ProbingPair &devices,
                      const ReductionProfile &profile, TrialStream &stream);

/// Trial `index` of the ensemble, drawn from the (config.seed, index) substream.
TrialRecord run_trial(const ExperimentConfig &config, const ProbingPair &devices,
                      const ReductionProfile &profile, std::uint64_t index);

/// Runs config.trials trials on `threads` workers (0 picks the hardware
/// concurrency). The result does not depend on the thread count.
EnsembleStats run_ensemble(const ExperimentConfig &config, const ProbingPair &devices,
                           const ReductionProfile &profile, unsigned threads = 0);

/// Visits every trial in index order on the calling thread.
void for_each_trial(const ExperimentConfig &config, const ProbingPair &devices, const ReductionProfile &profile,
                    const std::function<void(std::uint64_t, const TrialRecord &)> &visit);

/// One CSV row per trial with a header: t1,t3,sigma1_first,y,overlapped,interruption_x,outcome.
void write_trial_log(std::ostream &out, const ExperimentConfig &config, const ProbingPair &devices,
                     const ReductionProfile &profile);

struct GapHistogram {
    double upper = 1.0;  // bins span [0, upper]
    std::uint64_t samples = 0;
    std::vector<std::uint64_t> counts;

    double bin_width() const { return upper / static_cast<double>(counts.size()); }
    double lower_edge(std::size_t i) const { return bin_width() * static_cast<double>(i); }
    double mass(std::size_t i) const { return static_cast<double>(counts[i]) / static_cast<double>(samples); }
    double density(std::size_t i) const { return mass(i) / bin_width(); }
};

/// Histogram of y = |t1 - t3| over [0, max window]. Requires samples >= 10⁴.
GapHistogram empirical_gap_histogram(const ProbingPair &devices, std::uint64_t samples, std::size_t bins,
                                     std::uint64_t seed);

}  // namespace redtime
