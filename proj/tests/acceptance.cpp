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

// End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "redtime/mc.hpp"
#include "redtime/model.hpp"
#include "redtime/profiles.hpp"
#include "redtime/stats.hpp"

using namespace redtime;

namespace {

struct Criterion {
    int id;
    std::string title;
    std::function<bool(std::ostream &)> run;
};

bool within_relative(double value, double reference, double tolerance) {
    return std::abs(value - reference) <= tolerance * std::abs(reference);
}

double binomial_se(double p, std::uint64_t n) { return std::sqrt(p * (1.0 - p) / static_cast<double>(n)); }

ExperimentConfig config_for(double tau, std::uint64_t trials, std::uint64_t seed) {
    ExperimentConfig c;
    c.window_duration = 1.0;
    c.reduction_time = tau;
    c.trials = trials;
    c.seed = seed;
    return c;
}

const ProbingPair kUniform = ProbingPair::same(ProbingModel::uniform(1.0));

// 1. γ for the built-in profiles.
bool gamma_reproduction(std::ostream &log) {
    const double exp_g = gamma(ReductionProfile::exponential(), 0.01).gamma;
    const double lin_g = gamma(ReductionProfile::linear(), 0.01).gamma;
    bool sudden_exact = true;
    for (double tau : {0.0, 0.01, 0.1, 0.5, 1.0}) sudden_exact &= gamma(ReductionProfile::sudden(), tau).gamma == 0.5;
    log << "exponential gamma=" << exp_g << " linear gamma=" << lin_g
        << " sudden exact=" << (sudden_exact ? "yes" : "no");
    return std::abs(exp_g - 0.695) <= 0.002 && std::abs(lin_g - 0.735) <= 0.002 && sudden_exact;
}

// 2. Every number of the worked example, ±2%.
bool worked_example(std::ostream &log) {
    constexpr double kTol = 0.02;
    constexpr std::uint64_t kN = 800000;
    const double tau = 0.01;
    const double g = gamma(ReductionProfile::exponential(), tau).gamma;
    const double dn = expected_delta_n(tau, g, kN);
    const double fluct = fluctuation_scale(kN);
    const double margin = worst_case_margin(dn, kN);
    const auto sig = significance(3100, kN);
    const auto n_min = min_trials(tau, g, 1.0);

    log << "delta_n=" << dn << " fluctuation=" << fluct << " margin=" << margin
        << " p_two_sided=" << sig.p_value_two_sided << " min_trials=" << (n_min ? *n_min : 0);
    bool ok = within_relative(dn, 3104.0, kTol);
    ok &= within_relative(fluct, 894.0, kTol);
    ok &= within_relative(margin, 2206.0, kTol);
    ok &= within_relative(worst_case_margin(3100.0, kN), 2206.0, kTol);
    // Reference value 5.2e-4; it also rounds to 0.05% at one significant figure.
    ok &= within_relative(sig.p_value_two_sided, 5.2e-4, kTol);
    ok &= std::round(sig.p_value_two_sided * 1e4) == 5.0;
    ok &= n_min.has_value() && within_relative(static_cast<double>(*n_min), 6.6e4, kTol);
    return ok;
}

// 3. Monte Carlo against the closed form on the 15-cell grid.
bool oracle_equivalence(std::ostream &log) {
    constexpr std::uint64_t kN = 1000000;
    const std::vector<std::pair<std::string, ReductionProfile>> profiles = {
        {"sudden", ReductionProfile::sudden()},
        {"linear", ReductionProfile::linear()},
        {"exponential", ReductionProfile::exponential()}};
    double worst = 0.0;
    bool ok = true;
    std::uint64_t seed = 1000;
    for (const auto &[name, profile] : profiles) {
        for (double tau : {0.0, 0.01, 0.1, 0.5, 1.0}) {
            const auto stats = run_ensemble(config_for(tau, kN, seed++), kUniform, profile);
            const double expected = rho_reduced(tau, gamma(profile, tau).gamma).p_plus;
            const double dev = (stats.empirical_p3_plus - expected) / binomial_se(expected, kN);
            worst = std::max(worst, std::abs(dev));
            if (std::abs(dev) > 4.0) {
                log << "[" << name << " tau=" << tau << " off by " << dev << " se] ";
                ok = false;
            }
        }
    }
    log << "15 cells, worst deviation " << worst << " se";
    return ok;
}

// 4. Gap histogram and overlap fraction.
bool gap_density_check(std::ostream &log) {
    constexpr std::uint64_t kSamples = 1000000;
    const auto h = empirical_gap_histogram(kUniform, kSamples, 20, 77);
    double worst = 0.0;
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        const double a = 1.0 - h.lower_edge(i);
        const double b = a - h.bin_width();
        const double mean = (a * a - b * b) * static_cast<double>(kSamples);
        worst = std::max(worst, std::abs(static_cast<double>(h.counts[i]) - mean) / std::sqrt(mean));
    }

    const double tau = 0.1;
    const auto stats = run_ensemble(config_for(tau, kSamples, 78), kUniform, ReductionProfile::sudden());
    const double p = overlap_probability(tau);
    const double conditional =
        static_cast<double>(stats.overlap_count) / static_cast<double>(stats.sigma1_first_count);
    const double overlap_dev = (conditional - p) / binomial_se(p, stats.sigma1_first_count);
    log << "worst bin " << worst << " sigma; overlap " << conditional << " vs " << p << " (" << overlap_dev
        << " sigma)";
    return worst <= 4.0 && std::abs(overlap_dev) <= 4.0;
}

// 5. Null runs stay quiet.
bool null_consistency(std::ostream &log) {
    constexpr std::uint64_t kN = 1000000;
    int quiet_zero = 0;
    int quiet_sudden = 0;
    for (std::uint64_t rep = 0; rep < 100; ++rep) {
        const auto zero = run_ensemble(config_for(0.0, kN, 5000 + rep), kUniform, ReductionProfile::exponential());
        quiet_zero += std::abs(significance(zero.delta_n, kN).z_score) < 4.0;
        const auto sudden = run_ensemble(config_for(0.3, kN, 6000 + rep), kUniform, ReductionProfile::sudden());
        quiet_sudden += std::abs(significance(sudden.delta_n, kN).z_score) < 4.0;
    }
    log << "|z|<4 in " << quiet_zero << "/100 (zero reduction time), " << quiet_sudden << "/100 (sudden)";
    return quiet_zero >= 99 && quiet_sudden >= 99;
}

// 6. Power at 100× the minimum trial count.
bool power_property(std::ostream &log) {
    const double tau = 0.01;
    const auto profile = ReductionProfile::exponential();
    const auto n_min = min_trials(tau, gamma(profile, tau).gamma, 1.0);
    if (!n_min) return false;
    const std::uint64_t n = 100 * *n_min;
    int detected = 0;
    for (std::uint64_t rep = 0; rep < 100; ++rep) {
        const auto s = run_ensemble(config_for(tau, n, 9000 + rep), kUniform, profile);
        detected += std::abs(significance(s.delta_n, n).z_score) > 3.0;
    }
    log << "N=" << n << ", |z|>3 in " << detected << "/100";
    return detected >= 95;
}

std::string capture(const std::string &cmd) {
    FILE *pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {};
    std::string out;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    return pclose(pipe) == 0 ? out : std::string("<exit failure>");
}

// 7. Byte-identical reports across thread counts.
bool determinism(std::ostream &log) {
    const std::string base = std::string(REDTIME_CLI_PATH) +
                             " simulate --seed 7 --tau 0.01 --trials 800000 --profile exponential";
    const auto one = capture(base + " --threads 1");
    const auto many = capture(base + " --threads 8");
    const auto cfg = config_for(0.01, 800000, 7);
    const auto a = run_ensemble(cfg, kUniform, ReductionProfile::exponential(), 1);
    const auto b = run_ensemble(cfg, kUniform, ReductionProfile::exponential(), 5);
    log << "CLI reports " << (one == many ? "identical" : "differ") << " (" << one.size() << " bytes); library stats "
        << (a == b ? "identical" : "differ");
    return !one.empty() && one.find("n_plus=") != std::string::npos && one == many && a == b;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "gamma reproduction", gamma_reproduction},
        {2, "worked-example reproduction", worked_example},
        {3, "oracle equivalence (Monte Carlo vs closed form)", oracle_equivalence},
        {4, "gap-density check", gap_density_check},
        {5, "null consistency", null_consistency},
        {6, "power property", power_property},
        {7, "determinism", determinism},
    };
    int failures = 0;
    for (const auto &c : criteria) {
        std::ostringstream detail;
        const auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception &e) {
            detail << "exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %d. %s: %s (%.2fs)\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), detail.str().c_str(),
                    secs);
        std::fflush(stdout);
        failures += ok ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
