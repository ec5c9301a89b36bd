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

#include "redtime/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/binomial.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "redtime/model.hpp"

namespace redtime {

namespace {

// P(X >= k) for X ~ Binomial(n, ½).
double upper_tail(std::uint64_t n, std::int64_t k) {
    if (k <= 0) return 1.0;
    if (static_cast<std::uint64_t>(k) > n) return 0.0;
    boost::math::binomial_distribution<double> dist(static_cast<double>(n), 0.5);
    return boost::math::cdf(boost::math::complement(dist, static_cast<double>(k - 1)));
}

// Smallest N₊ whose N₊ - N₋ reaches d.
std::int64_t plus_count_for(std::int64_t d, std::uint64_t n) {
    const std::int64_t twice = static_cast<std::int64_t>(n) + d;
    return twice >= 0 ? (twice + 1) / 2 : -((-twice) / 2);
}

double clamp_probability(double p) {
    return std::clamp(p, std::numeric_limits<double>::min(), 1.0);
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

std::optional<std::uint64_t> min_trials(double tau, double gamma, double safety_factor) {
    if (!(tau >= 0.0 && tau <= 1.0)) throw std::domain_error("tau must lie in [0, 1]");
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::domain_error("gamma must lie in [0, 1]");
    if (!(safety_factor >= 1.0)) throw std::domain_error("safety factor must be at least 1");
    const double effect = tau * (2.0 * gamma - 1.0);
    if (effect == 0.0) return std::nullopt;
    const double n = std::ceil(safety_factor / (effect * effect));
    if (!(n < 1.8e19)) return std::nullopt;
    return static_cast<std::uint64_t>(n);
}

double fluctuation_scale(std::uint64_t trials) { return std::sqrt(static_cast<double>(trials)); }

Significance significance(std::int64_t observed_delta_n, std::uint64_t trials) {
    if (trials < 1) throw std::domain_error("trial count must be at least 1");
    const auto magnitude = static_cast<std::uint64_t>(observed_delta_n < 0 ? -observed_delta_n : observed_delta_n);
    if (magnitude > trials) throw std::domain_error("|delta_n| cannot exceed the trial count");

    Significance s;
    s.z_score = static_cast<double>(observed_delta_n) / fluctuation_scale(trials);
    if (trials < kExactBinomialLimit) {
        s.exact_binomial = true;
        const auto k = plus_count_for(static_cast<std::int64_t>(magnitude), trials);
        // Two tails: N₊ >= k or N₊ <= N - k.
        double p = 2.0 * upper_tail(trials, k);
        if (magnitude == 0) p = 1.0;
        s.p_value_two_sided = clamp_probability(p);
        s.p_value_one_sided = clamp_probability(upper_tail(trials, plus_count_for(observed_delta_n, trials)));
    } else {
        s.p_value_two_sided = clamp_probability(std::erfc(std::abs(s.z_score) / std::sqrt(2.0)));
        s.p_value_one_sided = clamp_probability(0.5 * std::erfc(s.z_score / std::sqrt(2.0)));
    }
    return s;
}

double tau_upper_bound(std::uint64_t trials) {
    if (trials < 1) throw std::domain_error("trial count must be at least 1");
    return 1.0 / std::sqrt(static_cast<double>(trials));
}

double worst_case_margin(double expected_delta_n, std::uint64_t trials) {
    if (trials < 1) throw std::domain_error("trial count must be at least 1");
    return expected_delta_n - fluctuation_scale(trials);
}

PowerReport power_report(double tau, double gamma, std::uint64_t trials, double safety_factor) {
    PowerReport r;
    r.tau = tau;
    r.gamma = gamma;
    r.trials = trials;
    r.safety_factor = safety_factor;
    r.n_required_strict = min_trials(tau, gamma, safety_factor);
    r.fluctuation_scale = fluctuation_scale(trials);
    r.expected_delta_n = expected_delta_n(tau, gamma, trials);
    r.worst_case_margin = worst_case_margin(r.expected_delta_n, trials);
    const auto sig = significance(std::llround(r.expected_delta_n), trials);
    r.z_score = sig.z_score;
    r.p_value_two_sided = sig.p_value_two_sided;
    r.p_value_one_sided = sig.p_value_one_sided;
    r.tau_upper_bound = tau_upper_bound(trials);
    return r;
}

namespace {

std::string required_text(const std::optional<std::uint64_t> &n) {
    return n ? std::to_string(*n) : std::string("none");
}

}  // namespace

std::string PowerReport::to_key_value() const {
    std::ostringstream s;
    s << "tau=" << format_number(tau) << '\n'
      << "gamma=" << format_number(gamma) << '\n'
      << "trials=" << trials << '\n'
      << "safety_factor=" << format_number(safety_factor) << '\n'
      << "n_required_strict=" << required_text(n_required_strict) << '\n'
      << "fluctuation_scale=" << format_number(fluctuation_scale) << '\n'
      << "expected_delta_n=" << format_number(expected_delta_n) << '\n'
      << "worst_case_margin=" << format_number(worst_case_margin) << '\n'
      << "z_score=" << format_number(z_score) << '\n'
      << "p_value_two_sided=" << format_number(p_value_two_sided) << '\n'
      << "p_value_one_sided=" << format_number(p_value_one_sided) << '\n'
      << "tau_upper_bound=" << format_number(tau_upper_bound) << '\n';
    return s.str();
}

std::string PowerReport::csv_header() {
    return "tau,gamma,trials,safety_factor,n_required_strict,fluctuation_scale,expected_delta_n,"
           "worst_case_margin,z_score,p_value_two_sided,p_value_one_sided,tau_upper_bound";
}

std::string PowerReport::to_csv_row() const {
    std::ostringstream s;
    s << format_number(tau) << ',' << format_number(gamma) << ',' << trials << ',' << format_number(safety_factor)
      << ',' << required_text(n_required_strict) << ',' << format_number(fluctuation_scale) << ','
      << format_number(expected_delta_n) << ',' << format_number(worst_case_margin) << ','
      << format_number(z_score) << ',' << format_number(p_value_two_sided) << ','
      << format_number(p_value_one_sided) << ',' << format_number(tau_upper_bound);
    return s.str();
}

}  // namespace redtime
