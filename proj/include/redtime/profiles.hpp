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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace redtime {

enum class ProfileKind { exponential, linear, sudden, tabulated };

std::string_view to_string(ProfileKind kind);

struct ProfileKnot {
    double x;
    double value;
};

/// |c₊(x)|² over the normalized reduction coordinate x = (t - t₁)/δt ∈ [0, 1].
///
/// Only |c₊|² is stored; the |−⟩ weight is always 1 - |c₊|², which keeps the
/// global state normalized by construction. Instances are immutable.
class ReductionProfile {
public:
    static ReductionProfile exponential();
    static ReductionProfile linear();
    static ReductionProfile sudden();

    /// Piecewise-linear interpolant through `knots`. Requires x strictly
    /// increasing from 0 to 1 and every value in [0, 1].
    static ReductionProfile tabulated(std::vector<ProfileKnot> knots);

    /// Two-column CSV (x, c_plus_squared). A non-numeric first line is
    /// treated as a header.
    static ReductionProfile from_csv(const std::filesystem::path &path);
    static ReductionProfile from_csv_text(std::string_view text);

    /// Resolves "exponential", "linear", "sudden" or "csv:<path>".
    static ReductionProfile from_name(std::string_view name);

    ProfileKind kind() const { return kind_; }

    /// Display name; tabulated profiles report "csv:<path>" when loaded from disk.
    const std::string &name() const { return name_; }

    const std::vector<ProfileKnot> &knots() const { return knots_; }

    /// |c₊(x)|². Throws std::domain_error for x outside [0, 1].
    double operator()(double x) const;

    /// |c₋(x)|² = 1 - |c₊(x)|².
    double minus_weight(double x) const { return 1.0 - (*this)(x); }

    /// Value used under an integral: identical to operator() except at the
    /// measure-zero point x = 0, where the right limit is returned.
    double integrand(double x) const;

    /// Set when the profile takes one value on all of (0, 1].
    std::optional<double> constant_value() const { return constant_; }

    bool monotone_nonincreasing() const { return monotone_; }

private:
    ReductionProfile(ProfileKind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

    ProfileKind kind_;
    std::string name_;
    std::vector<ProfileKnot> knots_;
    std::optional<double> constant_;
    bool monotone_ = true;
};

struct GammaResult {
    double gamma = 0.5;
    double quadrature_error_estimate = 0.0;
    /// The profile was not monotone non-increasing. γ is still computed.
    bool non_monotone_profile = false;
};

/// γ = (1 - τ/2)⁻¹ ∫₀¹ (1 - τx) |c₊(x)|² dx for τ ∈ [0, 1].
///
/// Smooth profiles use composite Simpson starting at 1025 nodes and doubling
/// until successive estimates differ by less than 1e-9, with one Richardson
/// step applied to the last pair. Tabulated profiles integrate each knot
/// interval exactly. Constant profiles return their value exactly.
GammaResult gamma(const ReductionProfile &profile, double tau);

}  // namespace redtime
