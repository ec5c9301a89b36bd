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

#include "redtime/mc.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "text.hpp"

namespace redtime {

namespace {

constexpr std::uint32_t kTrialStream = 0;
constexpr std::uint32_t kGapStream = 1;

}  // namespace

ProbingModel ProbingModel::uniform(double window) {
    ProbingModel m{ProbingKind::uniform, window, 0.0};
    m.validate();
    return m;
}

ProbingModel ProbingModel::truncated_exponential(double window, double decay_time) {
    ProbingModel m{ProbingKind::truncated_exponential, window, decay_time};
    m.validate();
    return m;
}

ProbingModel ProbingModel::from_name(std::string_view name, double window) {
    if (name == "uniform") return uniform(window);
    if (name.substr(0, 4) == "exp:") {
        auto decay = detail::parse_time(name.substr(4));
        if (!decay) throw std::invalid_argument("bad decay time in probing model '" + std::string(name) + "'");
        return truncated_exponential(window, *decay);
    }
    throw std::invalid_argument("unknown probing model '" + std::string(name) + "'");
}

void ProbingModel::validate() const {
    if (!(window > 0.0) || !std::isfinite(window)) throw std::domain_error("probing window must be positive");
    if (kind == ProbingKind::truncated_exponential && !(decay_time > 0.0)) {
        throw std::domain_error("decay time must be positive");
    }
}

std::string ProbingModel::name() const {
    if (kind == ProbingKind::uniform) return "uniform";
    std::ostringstream s;
    s << "exp:" << std::setprecision(17) << decay_time;
    return s.str();
}

double ProbingModel::sample(double u) const {
    double t = 0.0;
    if (kind == ProbingKind::uniform) {
        t = u * window;
    } else {
        // Inverse CDF of e^(-t/T) on [0, W]: t = -T log(1 - u (1 - e^(-W/T))).
        t = -decay_time * std::log1p(u * std::expm1(-window / decay_time));
    }
    return std::clamp(t, 0.0, window);
}

void EnsembleCounts::add(const TrialRecord &r) {
    (r.outcome > 0 ? n_plus : n_minus) += 1;
    sigma1_first += r.sigma1_first ? 1 : 0;
    overlapped += r.overlapped ? 1 : 0;
}

EnsembleCounts &EnsembleCounts::operator+=(const EnsembleCounts &o) {
    n_plus += o.n_plus;
    n_minus += o.n_minus;
    sigma1_first += o.sigma1_first;
    overlapped += o.overlapped;
    return *this;
}

EnsembleStats EnsembleCounts::finish() const {
    EnsembleStats s;
    s.n_plus = n_plus;
    s.n_minus = n_minus;
    s.delta_n = static_cast<std::int64_t>(n_plus) - static_cast<std::int64_t>(n_minus);
    s.sigma1_first_count = sigma1_first;
    s.overlap_count = overlapped;
    const double n = static_cast<double>(n_plus + n_minus);
    if (n > 0) {
        s.empirical_p3_plus = static_cast<double>(n_plus) / n;
        s.std_error = std::sqrt(s.empirical_p3_plus * (1.0 - s.empirical_p3_plus) / n);
        s.overlap_fraction = static_cast<double>(overlapped) / n;
        s.sigma1_first_fraction = static_cast<double>(sigma1_first) / n;
    }
    return s;
}

bool ProbingPair::analytic_comparable(const ExperimentConfig &config) const {
    return sigma1.kind == ProbingKind::uniform && sigma3.kind == ProbingKind::uniform &&
           sigma1.window == config.window_duration && sigma3.window == config.window_duration;
}

std::pair<double, double> sample_probing_times(const ProbingPair &devices, TrialStream &stream) {
    const auto u = stream.next_pair();
    return {devices.sigma1.sample(u[0]), devices.sigma3.sample(u[1])};
}

int measure_sigma3(const ReductionProfile &profile, std::optional<double> interruption_x, InitialSign sign,
                   double u) {
    // Probability that the readout agrees with the initial eigenstate.
    const double keep = interruption_x ? profile(*interruption_x) : 0.5;
    const int relative = u < keep ? +1 : -1;
    return relative * to_int(sign);
}

TrialRecord run_trial(const ExperimentConfig &config, const ProbingPair &devices, const ReductionProfile &profile,
                      TrialStream &stream) {
    TrialRecord r;
    std::tie(r.t1, r.t3) = sample_probing_times(devices, stream);
    // Exact ties resolve as σ₃ first.
    r.sigma1_first = r.t1 < r.t3;
    r.gap = std::abs(r.t1 - r.t3);
    r.overlapped = r.sigma1_first && r.gap < config.reduction_time;
    if (r.overlapped) r.interruption_x = r.gap / config.reduction_time;
    // σ₃-first trials leave the eigenstate input untouched until the σ₁ probe,
    // after which the readout is unbiased, the same as a completed σ₁ reduction.
    r.outcome = measure_sigma3(profile, r.interruption_x, config.initial_sign, stream.next_pair()[0]);
    return r;
}

TrialRecord run_trial(const ExperimentConfig &config, const ProbingPair &devices, const ReductionProfile &profile,
                      std::uint64_t index) {
    TrialStream stream(config.seed, index, kTrialStream);
    return run_trial(config, devices, profile, stream);
}

EnsembleStats run_ensemble(const ExperimentConfig &config, const ProbingPair &devices,
                           const ReductionProfile &profile, unsigned threads) {
    config.validate();
    devices.sigma1.validate();
    devices.sigma3.validate();
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    const std::uint64_t n = config.trials;
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(1, n / 4096)));

    auto run_range = [&](std::uint64_t begin, std::uint64_t end, EnsembleCounts &out) {
        for (std::uint64_t i = begin; i < end; ++i) out.add(run_trial(config, devices, profile, i));
    };

    std::vector<EnsembleCounts> partial(threads);
    if (threads == 1) {
        run_range(0, n, partial[0]);
    } else {
        std::vector<std::jthread> workers;
        workers.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) {
            const std::uint64_t begin = n * w / threads;
            const std::uint64_t end = n * (w + 1) / threads;
            workers.emplace_back([&, begin, end, w] { run_range(begin, end, partial[w]); });
        }
    }
    EnsembleCounts total;
    for (const auto &p : partial) total += p;
    return total.finish();
}

void for_each_trial(const ExperimentConfig &config, const ProbingPair &devices, const ReductionProfile &profile,
                    const std::function<void(std::uint64_t, const TrialRecord &)> &visit) {
    config.validate();
    for (std::uint64_t i = 0; i < config.trials; ++i) visit(i, run_trial(config, devices, profile, i));
}

void write_trial_log(std::ostream &out, const ExperimentConfig &config, const ProbingPair &devices,
                     const ReductionProfile &profile) {
    out << "t1,t3,sigma1_first,y,overlapped,interruption_x,outcome\n";
    const auto old_precision = out.precision(17);
    for_each_trial(config, devices, profile, [&](std::uint64_t, const TrialRecord &r) {
        out << r.t1 << ',' << r.t3 << ',' << (r.sigma1_first ? 1 : 0) << ',' << r.gap << ','
            << (r.overlapped ? 1 : 0) << ',';
        if (r.interruption_x) out << *r.interruption_x;
        out << ',' << r.outcome << '\n';
    });
    out.precision(old_precision);
}

GapHistogram empirical_gap_histogram(const ProbingPair &devices, std::uint64_t samples, std::size_t bins,
                                     std::uint64_t seed) {
    if (samples < 10000) throw std::domain_error("gap histogram needs at least 1e4 samples");
    if (bins == 0) throw std::domain_error("gap histogram needs at least one bin");
    devices.sigma1.validate();
    devices.sigma3.validate();
    GapHistogram h;
    h.upper = std::max(devices.sigma1.window, devices.sigma3.window);
    h.samples = samples;
    h.counts.assign(bins, 0);
    for (std::uint64_t i = 0; i < samples; ++i) {
        TrialStream stream(seed, i, kGapStream);
        const auto [t1, t3] = sample_probing_times(devices, stream);
        const double y = std::abs(t1 - t3);
        auto bin = static_cast<std::size_t>(y / h.upper * static_cast<double>(bins));
        h.counts[std::min(bin, bins - 1)] += 1;
    }
    return h;
}

}  // namespace redtime
