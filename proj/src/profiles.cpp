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

#include "redtime/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "text.hpp"

namespace redtime {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

void require_x(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::domain_error("profile coordinate x must lie in [0, 1], got " + std::to_string(x));
    }
}

double exponential_amplitude(double x) {
    const double e1 = std::exp(-1.0);
    return ((2.0 - kSqrt2) * std::exp(-x) + kSqrt2 - 2.0 * e1) / (2.0 * (1.0 - e1));
}

double linear_amplitude(double x) { return 1.0 - (1.0 - 1.0 / kSqrt2) * x; }

double interpolate(const std::vector<ProfileKnot> &knots, double x) {
    auto hi = std::upper_bound(knots.begin(), knots.end(), x,
                               [](double v, const ProfileKnot &k) { return v < k.x; });
    if (hi == knots.end()) return knots.back().value;
    if (hi == knots.begin()) return knots.front().value;
    auto lo = hi - 1;
    const double w = (x - lo->x) / (hi->x - lo->x);
    return lo->value + w * (hi->value - lo->value);
}

double simpson(const ReductionProfile &p, double tau, std::size_t intervals) {
    const double h = 1.0 / static_cast<double>(intervals);
    auto f = [&](double x) { return (1.0 - tau * x) * p.integrand(x); };
    double odd = 0.0;
    double even = 0.0;
    for (std::size_t i = 1; i < intervals; ++i) {
        const double v = f(static_cast<double>(i) * h);
        (i % 2 ? odd : even) += v;
    }
    return h / 3.0 * (f(0.0) + 4.0 * odd + 2.0 * even + f(1.0));
}

}  // namespace

std::string_view to_string(ProfileKind kind) {
    switch (kind) {
        case ProfileKind::exponential: return "exponential";
        case ProfileKind::linear: return "linear";
        case ProfileKind::sudden: return "sudden";
        case ProfileKind::tabulated: return "tabulated";
    }
    return "unknown";
}

ReductionProfile ReductionProfile::exponential() {
    return ReductionProfile(ProfileKind::exponential, "exponential");
}

ReductionProfile ReductionProfile::linear() { return ReductionProfile(ProfileKind::linear, "linear"); }

ReductionProfile ReductionProfile::sudden() {
    ReductionProfile p(ProfileKind::sudden, "sudden");
    p.constant_ = 0.5;
    return p;
}

ReductionProfile ReductionProfile::tabulated(std::vector<ProfileKnot> knots) {
    if (knots.size() < 2) throw std::invalid_argument("tabulated profile needs at least two knots");
    if (knots.front().x != 0.0) throw std::invalid_argument("tabulated profile must start at x = 0");
    if (knots.back().x != 1.0) throw std::invalid_argument("tabulated profile must end at x = 1");
    for (std::size_t i = 0; i < knots.size(); ++i) {
        const auto &k = knots[i];
        if (!(k.value >= 0.0 && k.value <= 1.0)) {
            throw std::invalid_argument("tabulated |c+|^2 values must lie in [0, 1]");
        }
        if (i > 0 && !(k.x > knots[i - 1].x)) {
            throw std::invalid_argument("tabulated x values must be strictly increasing");
        }
    }
    ReductionProfile p(ProfileKind::tabulated, "tabulated");
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (knots[i].value > knots[i - 1].value) p.monotone_ = false;
    }
    const bool flat = std::all_of(knots.begin(), knots.end(),
                                  [&](const ProfileKnot &k) { return k.value == knots[0].value; });
    if (flat) p.constant_ = knots[0].value;
    p.knots_ = std::move(knots);
    return p;
}

ReductionProfile ReductionProfile::from_csv_text(std::string_view text) {
    std::vector<ProfileKnot> knots;
    std::size_t line_no = 0;
    for (auto line : detail::split_lines(text)) {
        ++line_no;
        line = detail::trim(line);
        if (line.empty() || line.front() == '#') continue;
        auto fields = detail::split(line, ',');
        if (fields.size() != 2) {
            throw std::invalid_argument("profile CSV line " + std::to_string(line_no) + ": expected two columns");
        }
        auto x = detail::parse_double(fields[0]);
        auto v = detail::parse_double(fields[1]);
        if (!x || !v) {
            if (knots.empty() && line_no == 1) continue;  // header
            throw std::invalid_argument("profile CSV line " + std::to_string(line_no) + ": not numeric");
        }
        knots.push_back({*x, *v});
    }
    return tabulated(std::move(knots));
}

ReductionProfile ReductionProfile::from_csv(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open profile CSV " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    auto p = from_csv_text(buf.str());
    p.name_ = "csv:" + path.string();
    return p;
}

ReductionProfile ReductionProfile::from_name(std::string_view name) {
    if (name == "exponential") return exponential();
    if (name == "linear") return linear();
    if (name == "sudden") return sudden();
    if (name.substr(0, 4) == "csv:") return from_csv(std::filesystem::path(std::string(name.substr(4))));
    throw std::invalid_argument("unknown profile '" + std::string(name) + "'");
}

double ReductionProfile::operator()(double x) const {
    require_x(x);
    switch (kind_) {
        case ProfileKind::exponential: {
            const double c = exponential_amplitude(x);
            return c * c;
        }
        case ProfileKind::linear: {
            const double c = linear_amplitude(x);
            return c * c;
        }
        case ProfileKind::sudden: return x == 0.0 ? 1.0 : 0.5;
        case ProfileKind::tabulated: return interpolate(knots_, x);
    }
    return 0.5;
}

double ReductionProfile::integrand(double x) const {
    if (x == 0.0 && constant_) return *constant_;
    return (*this)(x);
}

GammaResult gamma(const ReductionProfile &profile, double tau) {
    if (!(tau >= 0.0 && tau <= 1.0)) throw std::domain_error("tau must lie in [0, 1]");
    GammaResult r;
    r.non_monotone_profile = !profile.monotone_nonincreasing();
    if (auto c = profile.constant_value()) {
        // The weight (1 - τx) normalizes to 1 - τ/2, so a constant passes through.
        r.gamma = *c;
        return r;
    }

    const double norm = 1.0 - 0.5 * tau;
    if (profile.kind() == ProfileKind::tabulated) {
        // Integrand is quadratic on each knot interval, so Simpson is exact there.
        double sum = 0.0;
        const auto &k = profile.knots();
        for (std::size_t i = 1; i < k.size(); ++i) {
            const double a = k[i - 1].x;
            const double b = k[i].x;
            const double m = 0.5 * (a + b);
            const double fm = 0.5 * (k[i - 1].value + k[i].value);
            sum += (b - a) / 6.0 *
                   ((1.0 - tau * a) * k[i - 1].value + 4.0 * (1.0 - tau * m) * fm + (1.0 - tau * b) * k[i].value);
        }
        r.gamma = std::clamp(sum / norm, 0.0, 1.0);
        return r;
    }

    constexpr std::size_t kMaxIntervals = std::size_t{1} << 22;
    std::size_t n = 1024;
    double coarse = simpson(profile, tau, n);
    double fine = coarse;
    double diff = 0.0;
    do {
        n *= 2;
        fine = simpson(profile, tau, n);
        diff = fine - coarse;
        coarse = fine;
    } while (std::abs(diff) >= 1e-9 && n < kMaxIntervals);

    r.gamma = std::clamp((fine + diff / 15.0) / norm, 0.0, 1.0);
    r.quadrature_error_estimate = std::abs(diff) / 15.0 / norm;
    return r;
}

}  // namespace redtime
