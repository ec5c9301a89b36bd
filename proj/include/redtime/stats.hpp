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
#include <optional>
#include <string>

namespace redtime {

/// Crossover between the exact binomial null and its normal approximation.
inline constexpr std::uint64_t kExactBinomialLimit = 100000;

/// Reference margin for the ≫ in N ≫ [1/(τ(2γ-1))]²: 800,000 trials
/// against a threshold near 65,000.
inline constexpr double kReferenceSafetyFactor = 12.0;

struct Significance {
    double z_score = 0.0;
    double p_value_two_sided = 1.0;
    double p_value_one_sided = 0.5;  // P(ΔN >= observed) under the null
    bool exact_binomial = false;
};

struct PowerReport {
    double tau = 0.0;
    double gamma = 0.5;
    std::uint64_t trials = 0;
    double safety_factor = 1.0;
    std::optional<std::uint64_t> n_required_strict;  // empty: no finite N suffices
    double fluctuation_scale = 0.0;
    double expected_delta_n = 0.0;
    double worst_case_margin = 0.0;
    double z_score = 0.0;
    double p_value_two_sided = 1.0;
    double p_value_one_sided = 0.5;
    double tau_upper_bound = 1.0;

    /// Flat `key=value` lines in a fixed order.
    std::string to_key_value() const;
    static std::string csv_header();
    std::string to_csv_row() const;
};

/// Smallest N with N >= safety_factor / (τ(2γ - 1))². Empty when τ = 0,
/// γ = ½, or the bound does not fit in 64 bits.
std::optional<std::uint64_t> min_trials(double tau, double gamma, double safety_factor = 1.0);

/// Δ𝒩 = √N, the null standard deviation of N₊ - N₋.
double fluctuation_scale(std::uint64_t trials);

/// Tests an observed N₊ - N₋ against fair ±1 outcomes. Uses the exact
/// binomial below kExactBinomialLimit trials and the normal tail above.
Significance significance(std::int64_t observed_delta_n, std::uint64_t trials);

/// Order-of-magnitude bound N^(-1/2) on τ after a null result.
double tau_upper_bound(std::uint64_t trials);

/// Expected ΔN less one fluctuation scale.
double worst_case_margin(double expected_delta_n, std::uint64_t trials);

PowerReport power_report(double tau, double gamma, std::uint64_t trials, double safety_factor = 1.0);

/// Shortest round-trippable text for a double; used by every report.
std::string format_number(double v);

}  // namespace redtime
