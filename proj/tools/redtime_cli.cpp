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

// Command-line front end. Talks to the library exclusively through the C API.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "redtime/redtime.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitCheckFailed = 2;

/// Default agreement band between Monte Carlo and the closed form, in
/// binomial standard errors.
constexpr double kDefaultCheckBand = 4.0;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(rt_status s) {
    if (s != RT_OK) throw UsageError(rt_last_error());
}

std::string num(double v) {
    char buf[64];
    check(rt_format_number(v, buf, sizeof buf, nullptr));
    return buf;
}

struct ProfileDeleter {
    void operator()(rt_profile *p) const { rt_profile_destroy(p); }
};
using ProfilePtr = std::unique_ptr<rt_profile, ProfileDeleter>;

struct SpecDeleter {
    void operator()(rt_runspec *p) const { rt_runspec_destroy(p); }
};
using SpecPtr = std::unique_ptr<rt_runspec, SpecDeleter>;

ProfilePtr make_profile(const std::string &name) {
    rt_profile *p = nullptr;
    check(rt_profile_create(name.c_str(), &p));
    return ProfilePtr(p);
}

std::optional<std::string> spec_get(const rt_runspec *spec, const char *key) {
    size_t needed = 0;
    if (rt_runspec_get(spec, key, nullptr, 0, &needed) == RT_ERR_NOT_FOUND) return std::nullopt;
    std::string out(needed, '\0');
    check(rt_runspec_get(spec, key, out.data(), out.size(), nullptr));
    out.resize(needed - 1);
    return out;
}

std::string spec_get_or(const rt_runspec *spec, const char *key, const std::string &fallback) {
    return spec_get(spec, key).value_or(fallback);
}

double parse_double(const std::string &text, const char *what) {
    try {
        size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception &) {
    }
    throw UsageError(std::string("invalid number for ") + what + ": '" + text + "'");
}

uint64_t parse_count(const std::string &text, const char *what) {
    const double v = parse_double(text, what);
    if (!(v >= 0.0) || v != std::floor(v) || v > 1.8e19) {
        throw UsageError(std::string("invalid count for ") + what + ": '" + text + "'");
    }
    return static_cast<uint64_t>(v);
}

std::vector<std::string> split_list(const std::string &text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

/// Writes to `path`, or stdout when empty.
void emit_output(const std::string &path, const std::string &text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out || !(out << text)) throw UsageError("cannot write " + path);
}

struct GammaChoice {
    std::string label;
    double gamma;
    double error;
};

/// γ from an explicit --gamma or from the selected profile at τ.
GammaChoice resolve_gamma(const rt_runspec *spec, double tau) {
    if (auto g = spec_get(spec, "gamma")) return {"none", parse_double(*g, "gamma"), 0.0};
    const auto profile = make_profile(spec_get_or(spec, "profile", "exponential"));
    rt_gamma_result g{};
    check(rt_profile_gamma(profile.get(), tau, &g));
    return {rt_profile_name(profile.get()), g.gamma, g.quadrature_error_estimate};
}

std::string min_trials_text(double tau, double gamma, double factor) {
    uint64_t n = 0;
    const auto s = rt_min_trials(tau, gamma, factor, &n);
    if (s == RT_ERR_NO_FINITE) return "none";
    check(s);
    return std::to_string(n);
}

int cmd_analytic(const rt_runspec *spec) {
    rt_experiment cfg{};
    check(rt_runspec_experiment(spec, &cfg));
    const double tau = cfg.reduction_time / cfg.window_duration;
    const auto g = resolve_gamma(spec, tau);
    const double factor = parse_double(spec_get_or(spec, "safety_factor", "1"), "safety_factor");

    double overlap = 0, p_plus = 0, p_minus = 0, dn = 0, dn_small = 0, fluct = 0, tau_max = 0;
    check(rt_overlap_probability(tau, &overlap));
    check(rt_rho_reduced(tau, g.gamma, cfg.initial_sign, &p_plus, &p_minus));
    check(rt_expected_delta_n(tau, g.gamma, cfg.trials, &dn));
    check(rt_small_tau_delta_n(tau, g.gamma, cfg.trials, &dn_small));
    check(rt_fluctuation_scale(cfg.trials, &fluct));
    check(rt_tau_upper_bound(cfg.trials, &tau_max));
    const double sign = cfg.initial_sign;

    const auto n_required = min_trials_text(tau, g.gamma, factor);
    std::ostringstream out;
    out << "window=" << num(cfg.window_duration) << '\n'
        << "reduction_time=" << num(cfg.reduction_time) << '\n'
        << "tau=" << num(tau) << '\n'
        << "profile=" << g.label << '\n'
        << "gamma=" << num(g.gamma) << '\n'
        << "gamma_quadrature_error=" << num(g.error) << '\n'
        << "overlap_probability=" << num(overlap) << '\n'
        << "p3_plus=" << num(p_plus) << '\n'
        << "p3_minus=" << num(p_minus) << '\n'
        << "trials=" << cfg.trials << '\n'
        << "expected_delta_n=" << num(sign * dn) << '\n'
        << "small_tau_delta_n=" << num(sign * dn_small) << '\n'
        << "fluctuation_scale=" << num(fluct) << '\n'
        << "safety_factor=" << num(factor) << '\n'
        << "min_trials=" << n_required << '\n';
    if (n_required == "none") out << "# no finite N separates this model from instantaneous collapse\n";
    out << "tau_upper_bound=" << num(tau_max) << '\n';
    std::cout << out.str();
    return 0;
}

std::string stats_csv_header() {
    return "trials,seed,tau,profile,n_plus,n_minus,delta_n,empirical_p3_plus,std_error,overlap_fraction,"
           "sigma1_first_fraction,z_score,p_value_two_sided\n";
}

int cmd_simulate(const rt_runspec *spec, unsigned threads, double band) {
    rt_experiment cfg{};
    check(rt_runspec_experiment(spec, &cfg));
    rt_probing sigma1{}, sigma3{};
    check(rt_runspec_devices(spec, &sigma1, &sigma3));
    const auto profile = make_profile(spec_get_or(spec, "profile", "exponential"));
    const double tau = cfg.reduction_time / cfg.window_duration;

    if (auto log = spec_get(spec, "log_trials")) {
        check(rt_write_trial_log(&cfg, &sigma1, &sigma3, profile.get(), log->c_str()));
    }

    rt_ensemble_stats st{};
    check(rt_run_ensemble(&cfg, &sigma1, &sigma3, profile.get(), threads, &st));
    rt_significance sig{};
    check(rt_significance_test(st.delta_n, cfg.trials, &sig));

    std::ostringstream out;
    out << "trials=" << cfg.trials << '\n'
        << "seed=" << cfg.seed << '\n'
        << "initial=" << (cfg.initial_sign > 0 ? "+" : "-") << '\n'
        << "tau=" << num(tau) << '\n'
        << "profile=" << rt_profile_name(profile.get()) << '\n'
        << "probing=" << spec_get_or(spec, "probing", "uniform") << '\n'
        << "n_plus=" << st.n_plus << '\n'
        << "n_minus=" << st.n_minus << '\n'
        << "delta_n=" << st.delta_n << '\n'
        << "empirical_p3_plus=" << num(st.empirical_p3_plus) << '\n'
        << "std_error=" << num(st.std_error) << '\n'
        << "overlap_fraction=" << num(st.overlap_fraction) << '\n'
        << "sigma1_first_fraction=" << num(st.sigma1_first_fraction) << '\n'
        << "z_score=" << num(sig.z_score) << '\n'
        << "p_value_two_sided=" << num(sig.p_value_two_sided) << '\n'
        << "p_value_one_sided=" << num(sig.p_value_one_sided) << '\n';

    const bool comparable = rt_analytic_comparable(&cfg, &sigma1, &sigma3) != 0;
    const bool want_check = spec_get_or(spec, "check", "0") == "1";
    bool agree = true;
    if (comparable) {
        rt_gamma_result g{};
        check(rt_profile_gamma(profile.get(), tau, &g));
        double p_plus = 0, p_minus = 0, dn = 0;
        check(rt_rho_reduced(tau, g.gamma, cfg.initial_sign, &p_plus, &p_minus));
        check(rt_expected_delta_n(tau, g.gamma, cfg.trials, &dn));
        const double se = std::sqrt(p_plus * (1.0 - p_plus) / static_cast<double>(cfg.trials));
        const double diff = st.empirical_p3_plus - p_plus;
        const double deviation = se > 0 ? diff / se : (diff == 0 ? 0.0 : INFINITY);
        agree = std::abs(deviation) <= band;
        out << "analytic_gamma=" << num(g.gamma) << '\n'
            << "analytic_p3_plus=" << num(p_plus) << '\n'
            << "analytic_expected_delta_n=" << num(cfg.initial_sign * dn) << '\n'
            << "deviation_std_errors=" << num(deviation) << '\n';
    } else if (want_check) {
        throw UsageError("--check needs both devices uniform over the configured window");
    }
    if (want_check) out << "check=" << (agree ? "pass" : "fail") << '\n';

    std::ostringstream rows;
    rows << stats_csv_header();
    auto add_row = [&](const rt_experiment &c, const rt_ensemble_stats &e, const rt_significance &z) {
        rows << c.trials << ',' << c.seed << ',' << num(tau) << ',' << rt_profile_name(profile.get()) << ','
             << e.n_plus << ',' << e.n_minus << ',' << e.delta_n << ',' << num(e.empirical_p3_plus) << ','
             << num(e.std_error) << ',' << num(e.overlap_fraction) << ',' << num(e.sigma1_first_fraction) << ','
             << num(z.z_score) << ',' << num(z.p_value_two_sided) << '\n';
    };
    add_row(cfg, st, sig);

    // Repetitions reuse the configuration at seeds seed+1, seed+2, ...
    const uint64_t reps = parse_count(spec_get_or(spec, "reps", "1"), "reps");
    if (reps == 0) throw UsageError("reps must be at least 1");
    if (reps > 1) {
        uint64_t quiet = std::abs(sig.z_score) < 4.0;
        uint64_t detected = std::abs(sig.z_score) > 3.0;
        for (uint64_t r = 1; r < reps; ++r) {
            rt_experiment c = cfg;
            c.seed = cfg.seed + r;
            rt_ensemble_stats e{};
            check(rt_run_ensemble(&c, &sigma1, &sigma3, profile.get(), threads, &e));
            rt_significance z{};
            check(rt_significance_test(e.delta_n, c.trials, &z));
            quiet += std::abs(z.z_score) < 4.0;
            detected += std::abs(z.z_score) > 3.0;
            add_row(c, e, z);
        }
        out << "reps=" << reps << '\n'
            << "reps_abs_z_below_4=" << quiet << '\n'
            << "reps_abs_z_above_3=" << detected << '\n';
    }
    std::cout << out.str();

    if (auto path = spec_get(spec, "out")) emit_output(*path, rows.str());
    return want_check && !agree ? kExitCheckFailed : 0;
}

int cmd_sweep(const rt_runspec *spec, unsigned threads) {
    const double window = [&] {
        double w = 1.0;
        if (auto text = spec_get(spec, "window")) check(rt_parse_time(text->c_str(), &w));
        return w;
    }();

    std::vector<double> taus;
    for (const auto &t : split_list(spec_get_or(spec, "taus", ""))) taus.push_back(parse_double(t, "taus"));
    if (taus.empty()) {
        rt_experiment cfg{};
        if (rt_runspec_experiment(spec, &cfg) == RT_OK) taus.push_back(cfg.reduction_time / cfg.window_duration);
    }

    struct Source {
        std::string label;
        std::optional<double> gamma;
    };
    std::vector<Source> sources;
    for (const auto &g : split_list(spec_get_or(spec, "gammas", ""))) {
        sources.push_back({"gamma=" + g, parse_double(g, "gammas")});
    }
    for (const auto &p : split_list(spec_get_or(spec, "profiles", ""))) sources.push_back({p, std::nullopt});
    if (sources.empty()) {
        if (auto g = spec_get(spec, "gamma")) {
            sources.push_back({"gamma=" + *g, parse_double(*g, "gamma")});
        } else {
            sources.push_back({spec_get_or(spec, "profile", "exponential"), std::nullopt});
        }
    }

    std::vector<uint64_t> trial_counts;
    for (const auto &n : split_list(spec_get_or(spec, "trials_grid", ""))) {
        trial_counts.push_back(parse_count(n, "trials_grid"));
    }
    if (trial_counts.empty()) trial_counts.push_back(parse_count(spec_get_or(spec, "trials", "1000000"), "trials"));

    if (taus.empty()) throw UsageError("empty sweep grid: give --taus or a reduction time");

    const bool with_mc = spec_get_or(spec, "mc", "0") == "1";
    const uint64_t seed = parse_count(spec_get_or(spec, "seed", "1"), "seed");
    const double factor = parse_double(spec_get_or(spec, "safety_factor", "1"), "safety_factor");
    rt_probing sigma1{}, sigma3{};
    if (with_mc) check(rt_runspec_devices(spec, &sigma1, &sigma3));

    std::ostringstream out;
    out << "source,tau,trials,gamma,gamma_error,overlap_probability,p3_plus,expected_delta_n,delta_n_per_n,"
           "min_trials,fluctuation_scale,z_expected";
    if (with_mc) out << ",mc_n_plus,mc_n_minus,mc_delta_n,mc_p3_plus,mc_std_error,mc_z";
    out << '\n';

    for (const auto &src : sources) {
        ProfilePtr profile;
        if (!src.gamma) profile = make_profile(src.label);
        for (double tau : taus) {
            double gamma = 0, gamma_err = 0;
            if (src.gamma) {
                gamma = *src.gamma;
            } else {
                rt_gamma_result g{};
                check(rt_profile_gamma(profile.get(), tau, &g));
                gamma = g.gamma;
                gamma_err = g.quadrature_error_estimate;
            }
            for (uint64_t n : trial_counts) {
                double overlap = 0, p_plus = 0, p_minus = 0, dn = 0, fluct = 0;
                check(rt_overlap_probability(tau, &overlap));
                check(rt_rho_reduced(tau, gamma, 1, &p_plus, &p_minus));
                check(rt_expected_delta_n(tau, gamma, n, &dn));
                check(rt_fluctuation_scale(n, &fluct));
                out << src.label << ',' << num(tau) << ',' << n << ',' << num(gamma) << ',' << num(gamma_err) << ','
                    << num(overlap) << ',' << num(p_plus) << ',' << num(dn) << ','
                    << num(dn / static_cast<double>(n)) << ',' << min_trials_text(tau, gamma, factor) << ','
                    << num(fluct) << ',' << num(dn / fluct);
                if (with_mc) {
                    if (!profile) throw UsageError("Monte Carlo sweep columns need profiles, not bare gammas");
                    rt_experiment cfg{window, tau * window, n, 1, seed};
                    rt_ensemble_stats st{};
                    check(rt_run_ensemble(&cfg, &sigma1, &sigma3, profile.get(), threads, &st));
                    out << ',' << st.n_plus << ',' << st.n_minus << ',' << st.delta_n << ','
                        << num(st.empirical_p3_plus) << ',' << num(st.std_error) << ','
                        << num(static_cast<double>(st.delta_n) / fluct);
                }
                out << '\n';
            }
        }
    }
    emit_output(spec_get_or(spec, "out", ""), out.str());
    return 0;
}

int cmd_gap_hist(const rt_runspec *spec) {
    rt_probing sigma1{}, sigma3{};
    check(rt_runspec_devices(spec, &sigma1, &sigma3));
    const uint64_t samples = parse_count(spec_get_or(spec, "samples", "1000000"), "samples");
    const uint64_t bins = parse_count(spec_get_or(spec, "bins", "20"), "bins");
    const uint64_t seed = parse_count(spec_get_or(spec, "seed", "1"), "seed");
    if (bins == 0 || bins > 1000000) throw UsageError("bins must lie in [1, 1e6]");

    std::vector<uint64_t> counts(bins);
    double upper = 0;
    check(rt_gap_histogram(&sigma1, &sigma3, samples, seed, bins, counts.data(), &upper));

    const bool closed_form = sigma1.kind == RT_PROBING_UNIFORM && sigma3.kind == RT_PROBING_UNIFORM &&
                             sigma1.window == sigma3.window;
    std::ostringstream out;
    out << "bin_lo,bin_hi,count,mass,density,expected_mass,deviation_sigma\n";
    const double width = upper / static_cast<double>(bins);
    for (size_t i = 0; i < bins; ++i) {
        const double lo = width * static_cast<double>(i);
        const double hi = width * static_cast<double>(i + 1);
        const double mass = static_cast<double>(counts[i]) / static_cast<double>(samples);
        out << num(lo) << ',' << num(hi) << ',' << counts[i] << ',' << num(mass) << ',' << num(mass / width) << ',';
        if (closed_form) {
            // ∫ 2(W - y)/W² dy over the bin.
            const double a = 1.0 - lo / upper;
            const double b = 1.0 - hi / upper;
            const double expected = a * a - b * b;
            const double mean = expected * static_cast<double>(samples);
            const double dev = mean > 0 ? (static_cast<double>(counts[i]) - mean) / std::sqrt(mean) : 0.0;
            out << num(expected) << ',' << num(dev);
        } else {
            out << ',';
        }
        out << '\n';
    }
    emit_output(spec_get_or(spec, "out", ""), out.str());
    return 0;
}

std::string report_text(const rt_power_report &r, int format) {
    size_t needed = 0;
    check(rt_power_report_format(&r, format, nullptr, 0, &needed));
    std::string text(needed, '\0');
    check(rt_power_report_format(&r, format, text.data(), text.size(), nullptr));
    text.resize(needed - 1);
    return text;
}

int cmd_power(const rt_runspec *spec) {
    rt_experiment cfg{};
    check(rt_runspec_experiment(spec, &cfg));
    const double tau = cfg.reduction_time / cfg.window_duration;
    const auto g = resolve_gamma(spec, tau);
    const double factor = parse_double(spec_get_or(spec, "safety_factor", "1"), "safety_factor");

    rt_power_report report{};
    check(rt_power_report_compute(tau, g.gamma, cfg.trials, factor, &report));
    std::ostringstream out;
    out << report_text(report, RT_FORMAT_KEY_VALUE);
    if (auto observed = spec_get(spec, "observed")) {
        const double d = parse_double(*observed, "observed");
        if (d != std::floor(d)) throw UsageError("observed delta_n must be an integer");
        rt_significance sig{};
        check(rt_significance_test(static_cast<int64_t>(d), cfg.trials, &sig));
        out << "observed_delta_n=" << static_cast<int64_t>(d) << '\n'
            << "observed_z_score=" << num(sig.z_score) << '\n'
            << "observed_p_value_two_sided=" << num(sig.p_value_two_sided) << '\n'
            << "observed_p_value_one_sided=" << num(sig.p_value_one_sided) << '\n'
            << "observed_exact_binomial=" << sig.exact_binomial << '\n';
    }
    std::cout << out.str();
    if (auto path = spec_get(spec, "out")) {
        emit_output(*path, report_text(report, RT_FORMAT_CSV_HEADER) + "\n" + report_text(report, RT_FORMAT_CSV_ROW) +
                               "\n");
    }
    return 0;
}

std::string emitted(const rt_runspec *spec) {
    size_t needed = 0;
    check(rt_runspec_emit(spec, nullptr, 0, &needed));
    std::string text(needed, '\0');
    check(rt_runspec_emit(spec, text.data(), text.size(), nullptr));
    text.resize(needed - 1);
    return text;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Finite-time reduction measurement simulator"};
    app.require_subcommand(0, 1);
    app.fallthrough();

    // Flag name -> config key. Values are forwarded verbatim.
    struct Forwarded {
        const char *flag;
        const char *key;
        const char *help;
        std::string value;
    };
    std::vector<Forwarded> forwarded = {
        {"--dt", "window", "probing window duration, e.g. 1ns", {}},
        {"--dt3", "window3", "sigma3 probing window when it differs from --dt", {}},
        {"--delta-t", "reduction_time", "reduction time, e.g. 10ps", {}},
        {"--tau", "tau", "reduction time as a fraction of the window", {}},
        {"--trials", "trials", "number of trials N", {}},
        {"--seed", "seed", "64-bit RNG seed", {}},
        {"--profile", "profile", "exponential|linear|sudden|csv:<path>", {}},
        {"--gamma", "gamma", "use this gamma instead of a profile (analytic, power, sweep)", {}},
        {"--probing", "probing", "uniform|exp:<t_decay>", {}},
        {"--probing3", "probing3", "sigma3 device model when it differs from --probing", {}},
        {"--initial", "initial", "initial sigma3 eigenstate, + or -", {}},
        {"--safety-factor", "safety_factor", "factor applied to the minimum trial count", {}},
        {"--out", "out", "CSV output path", {}},
        {"--log-trials", "log_trials", "write one CSV row per trial (simulate)", {}},
        {"--taus", "taus", "comma-separated tau grid (sweep)", {}},
        {"--gammas", "gammas", "comma-separated gamma grid (sweep)", {}},
        {"--profiles", "profiles", "comma-separated profile grid (sweep)", {}},
        {"--trials-grid", "trials_grid", "comma-separated N grid (sweep)", {}},
        {"--reps", "reps", "repeat at seeds seed, seed+1, ... (simulate)", {}},
        {"--samples", "samples", "gap samples (gap-hist)", {}},
        {"--bins", "bins", "histogram bins (gap-hist)", {}},
        {"--observed", "observed", "observed N+ - N- to test (power)", {}},
    };
    for (auto &f : forwarded) app.add_option(f.flag, f.value, f.help);

    std::string config_path;
    bool emit_config = false;
    bool check_flag = false;
    bool mc_flag = false;
    unsigned threads = 0;
    double check_band = kDefaultCheckBand;
    app.add_option("--config", config_path, "key=value config file; flags override it")->check(CLI::ExistingFile);
    app.add_flag("--emit-config", emit_config, "print the resolved configuration and exit");
    app.add_flag("--check", check_flag, "exit 2 unless simulation agrees with the closed form (simulate)");
    app.add_option("--check-band", check_band, "agreement band for --check, in standard errors")
        ->check(CLI::NonNegativeNumber);
    app.add_flag("--mc", mc_flag, "add Monte Carlo columns (sweep)");
    app.add_option("--threads", threads, "worker threads; 0 = all cores. Results do not depend on it");

    auto *analytic = app.add_subcommand("analytic", "closed-form predictions, no simulation");
    auto *simulate = app.add_subcommand("simulate", "Monte Carlo ensemble");
    auto *sweep = app.add_subcommand("sweep", "CSV over a parameter grid");
    auto *gap_hist = app.add_subcommand("gap-hist", "histogram of probing gaps");
    auto *power = app.add_subcommand("power", "statistical power report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        rt_runspec *raw = nullptr;
        check(rt_runspec_create(&raw));
        SpecPtr spec(raw);
        if (!config_path.empty()) check(rt_runspec_load_file(spec.get(), config_path.c_str()));
        for (const auto &f : forwarded) {
            if (app.count(f.flag) > 0) check(rt_runspec_set(spec.get(), f.key, f.value.c_str()));
        }
        if (check_flag) check(rt_runspec_set(spec.get(), "check", "1"));
        if (mc_flag) check(rt_runspec_set(spec.get(), "mc", "1"));

        if (emit_config) {
            std::cout << emitted(spec.get());
            return 0;
        }
        if (*analytic) return cmd_analytic(spec.get());
        if (*simulate) return cmd_simulate(spec.get(), threads, check_band);
        if (*sweep) return cmd_sweep(spec.get(), threads);
        if (*gap_hist) return cmd_gap_hist(spec.get());
        if (*power) return cmd_power(spec.get());
        std::cerr << app.help();
        return kExitUsage;
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
