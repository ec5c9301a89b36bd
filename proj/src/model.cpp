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

#include "redtime/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace redtime {

namespace {

void require_unit(double v, const char *name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::domain_error(std::string(name) + " must lie in [0, 1], got " + std::to_string(v));
    }
}

// τ - τ²/2, i.e. half the overlap probability.
double half_overlap(double tau) { return tau * (1.0 - 0.5 * tau); }

}  // namespace

void ExperimentConfig::validate() const {
    if (!(window_duration > 0.0) || !std::isfinite(window_duration)) {
        throw std::domain_error("window duration must be positive and finite");
    }
    if (!(reduction_time >= 0.0)) {
        throw std::domain_error("reduction time must be non-negative");
    }
    if (reduction_time > window_duration) {
        throw std::domain_error("reduction time must not exceed the window duration");
    }
    if (trials < 1) {
        throw std::domain_error("trial count must be at least 1");
    }
}

double gap_density(double y, double window) {
    if (!(window > 0.0)) throw std::domain_error("window must be positive");
    if (!(y >= 0.0 && y <= window)) throw std::domain_error("gap must lie in [0, window]");
    return 2.0 * (window - y) / (window * window);
}

double overlap_probability(double tau) {
    require_unit(tau, "tau");
    return tau * (2.0 - tau);
}

QubitMixedState rho_collapse() { return {0.5, 0.5}; }

QubitMixedState rho_reduced(double tau, double gamma, InitialSign sign) {
    require_unit(tau, "tau");
    require_unit(gamma, "gamma");
    const double bias = 0.5 * half_overlap(tau) * (2.0 * gamma - 1.0);
    QubitMixedState s{0.5 + bias, 0.5 - bias};
    if (sign == InitialSign::minus) std::swap(s.p_plus, s.p_minus);
    return s;
}

double expected_delta_n(double tau, double gamma, std::uint64_t trials) {
    require_unit(tau, "tau");
    require_unit(gamma, "gamma");
    return half_overlap(tau) * (2.0 * gamma - 1.0) * static_cast<double>(trials);
}

double small_tau_delta_n(double tau, double gamma, std::uint64_t trials) {
    require_unit(tau, "tau");
    require_unit(gamma, "gamma");
    return tau * (2.0 * gamma - 1.0) * static_cast<double>(trials);
}

AnalyticPrediction predict(double tau, double gamma, std::uint64_t trials) {
    AnalyticPrediction p;
    p.tau = tau;
    p.gamma = gamma;
    p.overlap_probability = overlap_probability(tau);
    p.p3_plus = rho_reduced(tau, gamma).p_plus;
    p.expected_delta_n = expected_delta_n(tau, gamma, trials);
    return p;
}

double tau_from_times(double window, double reduction_time) {
    ExperimentConfig c;
    c.window_duration = window;
    c.reduction_time = reduction_time;
    c.validate();
    return c.tau();
}

}  // namespace redtime
