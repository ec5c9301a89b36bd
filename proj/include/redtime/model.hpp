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

namespace redtime {

/// Which σ₃ eigenstate each trial starts in.
enum class InitialSign : int { plus = +1, minus = -1 };

inline int to_int(InitialSign s) { return static_cast<int>(s); }

/// Timing and size of one experiment. Times are in seconds; the probing
/// window starts at t = 0.
struct ExperimentConfig {
    double window_duration = 1.0;  // Δt
    double reduction_time = 0.0;   // δt
    std::uint64_t trials = 1;
    InitialSign initial_sign = InitialSign::plus;
    std::uint64_t seed = 0;

    /// δt / Δt.
    double tau() const { return reduction_time / window_duration; }

    /// Throws std::domain_error unless Δt > 0, 0 <= δt <= Δt and trials >= 1.
    void validate() const;
};

/// Diagonal qubit state in the σ₃ basis. Coherences are structurally zero.
struct QubitMixedState {
    double p_plus = 0.5;
    double p_minus = 0.5;

    double trace() const { return p_plus + p_minus; }
    double sigma3_expectation() const { return p_plus - p_minus; }
};

struct AnalyticPrediction {
    double tau = 0.0;
    double gamma = 0.5;
    double overlap_probability = 0.0;
    double p3_plus = 0.5;
    double expected_delta_n = 0.0;
};

// All functions below throw std::domain_error on arguments outside their
// domain. They are pure and thread-safe.

/// Density of the gap y = |t1 - t3| between two independent uniform probings
/// on [0, window]: 2 (window - y) / window².
double gap_density(double y, double window);

/// Probability that the gap is below τ·window: 2τ - τ².
double overlap_probability(double tau);

/// Fully reduced mixture (½, ½) of instantaneous collapse.
QubitMixedState rho_collapse();

/// Ensemble state after the σ₁/σ₃ pair with bias weight γ.
/// p_plus = ½[1 + (τ - τ²/2)(2γ - 1)] for a |+⟩ input; components swap for |−⟩.
QubitMixedState rho_reduced(double tau, double gamma, InitialSign sign = InitialSign::plus);

/// Expected N₊ - N₋ over `trials` realizations, (τ - τ²/2)(2γ - 1)N.
double expected_delta_n(double tau, double gamma, std::uint64_t trials);

/// First-order form τ(2γ - 1)N, valid for τ ≪ 1.
double small_tau_delta_n(double tau, double gamma, std::uint64_t trials);

/// Convenience bundle of the quantities above for a |+⟩ input.
AnalyticPrediction predict(double tau, double gamma, std::uint64_t trials);

/// Wrappers taking physical times; they form τ first.
double tau_from_times(double window, double reduction_time);

}  // namespace redtime
