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

#include "redtime/redtime.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <new>
#include <stdexcept>
#include <string>

#include "redtime/config.hpp"
#include "redtime/mc.hpp"
#include "redtime/model.hpp"
#include "redtime/profiles.hpp"
#include "redtime/stats.hpp"

struct rt_profile {
    redtime::ReductionProfile profile;
};

struct rt_runspec {
    redtime::RunSpec spec;
};

namespace {

thread_local std::string g_last_error;

rt_status fail(rt_status status, const char *what) {
    g_last_error = what;
    return status;
}

// Maps the core library's exceptions onto status codes.
template <class F>
rt_status guarded(F &&f) {
    try {
        f();
        return RT_OK;
    } catch (const std::domain_error &e) {
        return fail(RT_ERR_DOMAIN, e.what());
    } catch (const std::invalid_argument &e) {
        return fail(RT_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc &) {
        return fail(RT_ERR_INTERNAL, "out of memory");
    } catch (const std::runtime_error &e) {
        return fail(RT_ERR_IO, e.what());
    } catch (const std::exception &e) {
        return fail(RT_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(RT_ERR_INTERNAL, "unknown error");
    }
}

#define RT_REQUIRE(ptr)                                                        \
    do {                                                                       \
        if ((ptr) == nullptr) return fail(RT_ERR_INVALID_ARGUMENT, #ptr " is null"); \
    } while (0)

rt_status copy_text(const std::string &text, char *buf, size_t cap, size_t *needed) {
    if (needed) *needed = text.size() + 1;
    if (buf == nullptr && cap == 0) return RT_OK;
    if (buf == nullptr || cap < text.size() + 1) return fail(RT_ERR_BUFFER, "output buffer too small");
    std::memcpy(buf, text.c_str(), text.size() + 1);
    return RT_OK;
}

redtime::InitialSign to_sign(int s) {
    if (s == 1) return redtime::InitialSign::plus;
    if (s == -1) return redtime::InitialSign::minus;
    throw std::domain_error("initial sign must be +1 or -1");
}

redtime::ProbingModel to_model(const rt_probing &p) {
    redtime::ProbingModel m;
    if (p.kind == RT_PROBING_UNIFORM) {
        m.kind = redtime::ProbingKind::uniform;
    } else if (p.kind == RT_PROBING_TRUNCATED_EXPONENTIAL) {
        m.kind = redtime::ProbingKind::truncated_exponential;
    } else {
        throw std::invalid_argument("unknown probing kind");
    }
    m.window = p.window;
    m.decay_time = p.decay_time;
    m.validate();
    return m;
}

rt_probing from_model(const redtime::ProbingModel &m) {
    return {m.kind == redtime::ProbingKind::uniform ? RT_PROBING_UNIFORM : RT_PROBING_TRUNCATED_EXPONENTIAL,
            m.window, m.decay_time};
}

redtime::ProbingPair to_pair(const rt_probing *sigma1, const rt_probing *sigma3) {
    if (sigma1 == nullptr) throw std::invalid_argument("sigma1 probing model is null");
    const auto m1 = to_model(*sigma1);
    return {m1, sigma3 ? to_model(*sigma3) : m1};
}

redtime::ExperimentConfig to_config(const rt_experiment &e) {
    redtime::ExperimentConfig c;
    c.window_duration = e.window_duration;
    c.reduction_time = e.reduction_time;
    c.trials = e.trials;
    c.initial_sign = to_sign(e.initial_sign);
    c.seed = e.seed;
    c.validate();
    return c;
}

rt_experiment from_config(const redtime::ExperimentConfig &c) {
    return {c.window_duration, c.reduction_time, c.trials, redtime::to_int(c.initial_sign), c.seed};
}

rt_ensemble_stats from_stats(const redtime::EnsembleStats &s) {
    return {s.n_plus,          s.n_minus,         s.delta_n,
            s.empirical_p3_plus, s.std_error,     s.overlap_fraction,
            s.sigma1_first_fraction, s.sigma1_first_count, s.overlap_count};
}

redtime::PowerReport to_report(const rt_power_report &r) {
    redtime::PowerReport p;
    p.tau = r.tau;
    p.gamma = r.gamma;
    p.trials = r.trials;
    p.safety_factor = r.safety_factor;
    if (r.has_n_required) p.n_required_strict = r.n_required_strict;
    p.fluctuation_scale = r.fluctuation_scale;
    p.expected_delta_n = r.expected_delta_n;
    p.worst_case_margin = r.worst_case_margin;
    p.z_score = r.z_score;
    p.p_value_two_sided = r.p_value_two_sided;
    p.p_value_one_sided = r.p_value_one_sided;
    p.tau_upper_bound = r.tau_upper_bound;
    return p;
}

}  // namespace

extern "C" {

const char *rt_last_error(void) { return g_last_error.c_str(); }

const char *rt_version(void) { return "1.0.0"; }

rt_status rt_gap_density(double y, double window, double *out) {
    RT_REQUIRE(out);
    return guarded([&] { *out = redtime::gap_density(y, window); });
}

rt_status rt_overlap_probability(double tau, double *out) {
    RT_REQUIRE(out);
    return guarded([&] { *out = redtime::overlap_probability(tau); });
}

rt_status rt_rho_collapse(double *p_plus, double *p_minus) {
    RT_REQUIRE(p_plus);
    RT_REQUIRE(p_minus);
    const auto s = redtime::rho_collapse();
    *p_plus = s.p_plus;
    *p_minus = s.p_minus;
    return RT_OK;
}

rt_status rt_rho_reduced(double tau, double gamma, int initial_sign, double *p_plus, double *p_minus) {
    RT_REQUIRE(p_plus);
    RT_REQUIRE(p_minus);
    return guarded([&] {
        const auto s = redtime::rho_reduced(tau, gamma, to_sign(initial_sign));
        *p_plus = s.p_plus;
        *p_minus = s.p_minus;
    });
}

rt_status rt_expected_delta_n(double tau, double gamma, uint64_t trials, double *out) {
    RT_REQUIRE(out);
    return guarded([&] { *out = redtime::expected_delta_n(tau, gamma, trials); });
}

rt_status rt_small_tau_delta_n(double tau, double gamma, uint64_t trials, double *out) {
    RT_REQUIRE(out);
    return guarded([&] { *out = redtime::small_tau_delta_n(tau, gamma, trials); });
}

rt_status rt_profile_create(const char *name, rt_profile **out) {
    RT_REQUIRE(name);
    RT_REQUIRE(out);
    return guarded([&] { *out = new rt_profile{redtime::ReductionProfile::from_name(name)}; });
}

rt_status rt_profile_from_table(const double *x, const double *value, size_t count, rt_profile **out) {
    RT_REQUIRE(x);
    RT_REQUIRE(value);
    RT_REQUIRE(out);
    return guarded([&] {
        std::vector<redtime::ProfileKnot> knots;
        knots.reserve(count);
        for (size_t i = 0; i < count; ++i) knots.push_back({x[i], value[i]});
        *out = new rt_profile{redtime::ReductionProfile::tabulated(std::move(knots))};
    });
}

void rt_profile_destroy(rt_profile *profile) { delete profile; }

const char *rt_profile_name(const rt_profile *profile) {
    return profile ? profile->profile.name().c_str() : "";
}

rt_status rt_profile_eval(const rt_profile *profile, double x, double *out) {
    RT_REQUIRE(profile);
    RT_REQUIRE(out);
    return guarded([&] { *out = profile->profile(x); });
}

rt_status rt_profile_gamma(const rt_profile *profile, double tau, rt_gamma_result *out) {
    RT_REQUIRE(profile);
    RT_REQUIRE(out);
    return guarded([&] {
        const auto g = redtime::gamma(profile->profile, tau);
        *out = {g.gamma, g.quadrature_error_estimate, g.non_monotone_profile ? 1 : 0};
    });
}

rt_status rt_probing_parse(const char *name, double window, rt_probing *out) {
    RT_REQUIRE(name);
    RT_REQUIRE(out);
    return guarded([&] { *out = from_model(redtime::ProbingModel::from_name(name, window)); });
}

rt_status rt_run_trial(const rt_experiment *config, const rt_probing *sigma1, const rt_probing *sigma3,
                       const rt_profile *profile, uint64_t index, rt_trial_record *out) {
    RT_REQUIRE(config);
    RT_REQUIRE(profile);
    RT_REQUIRE(out);
    return guarded([&] {
        const auto r = redtime::run_trial(to_config(*config), to_pair(sigma1, sigma3), profile->profile, index);
        *out = {r.t1,
                r.t3,
                r.sigma1_first ? 1 : 0,
                r.gap,
                r.overlapped ? 1 : 0,
                r.interruption_x.value_or(std::numeric_limits<double>::quiet_NaN()),
                r.outcome};
    });
}

rt_status rt_run_ensemble(const rt_experiment *config, const rt_probing *sigma1, const rt_probing *sigma3,
                          const rt_profile *profile, unsigned threads, rt_ensemble_stats *out) {
    RT_REQUIRE(config);
    RT_REQUIRE(profile);
    RT_REQUIRE(out);
    return guarded([&] {
        const auto cfg = to_config(*config);
        if (cfg.trials > redtime::kMaxTrials) throw std::domain_error("trial count exceeds the supported bound");
        *out = from_stats(redtime::run_ensemble(cfg, to_pair(sigma1, sigma3), profile->profile, threads));
    });
}

rt_status rt_write_trial_log(const rt_experiment *config, const rt_probing *sigma1, const rt_probing *sigma3,
                             const rt_profile *profile, const char *path) {
    RT_REQUIRE(config);
    RT_REQUIRE(profile);
    RT_REQUIRE(path);
    return guarded([&] {
        std::ofstream out(path);
        if (!out) throw std::runtime_error(std::string("cannot write trial log ") + path);
        redtime::write_trial_log(out, to_config(*config), to_pair(sigma1, sigma3), profile->profile);
        if (!out) throw std::runtime_error(std::string("error writing trial log ") + path);
    });
}

int rt_analytic_comparable(const rt_experiment *config, const rt_probing *sigma1, const rt_probing *sigma3) {
    if (config == nullptr || sigma1 == nullptr) return 0;
    try {
        return to_pair(sigma1, sigma3).analytic_comparable(to_config(*config)) ? 1 : 0;
    } catch (...) {
        return 0;
    }
}

rt_status rt_gap_histogram(const rt_probing *sigma1, const rt_probing *sigma3, uint64_t samples, uint64_t seed,
                           size_t bins, uint64_t *counts, double *upper) {
    RT_REQUIRE(counts);
    RT_REQUIRE(upper);
    return guarded([&] {
        const auto h = redtime::empirical_gap_histogram(to_pair(sigma1, sigma3), samples, bins, seed);
        std::copy(h.counts.begin(), h.counts.end(), counts);
        *upper = h.upper;
    });
}

rt_status rt_min_trials(double tau, double gamma, double safety_factor, uint64_t *out) {
    RT_REQUIRE(out);
    rt_status status = RT_OK;
    const auto s = guarded([&] {
        const auto n = redtime::min_trials(tau, gamma, safety_factor);
        if (n) {
            *out = *n;
        } else {
            status = fail(RT_ERR_NO_FINITE, "no finite trial count suffices");
        }
    });
    return s != RT_OK ? s : status;
}

rt_status rt_fluctuation_scale(uint64_t trials, double *out) {
    RT_REQUIRE(out);
    *out = redtime::fluctuation_scale(trials);
    return RT_OK;
}

rt_status rt_significance_test(int64_t observed_delta_n, uint64_t trials, rt_significance *out) {
    RT_REQUIRE(out);
    return guarded([&] {
        const auto s = redtime::significance(observed_delta_n, trials);
        *out = {s.z_score, s.p_value_two_sided, s.p_value_one_sided, s.exact_binomial ? 1 : 0};
    });
}

rt_status rt_tau_upper_bound(uint64_t trials, double *out) {
    RT_REQUIRE(out);
    return guarded([&] { *out = redtime::tau_upper_bound(trials); });
}

rt_status rt_worst_case_margin(double expected_delta_n, uint64_t trials, double *out) {
    RT_REQUIRE(out);
    return guarded([&] { *out = redtime::worst_case_margin(expected_delta_n, trials); });
}

rt_status rt_power_report_compute(double tau, double gamma, uint64_t trials, double safety_factor,
                                  rt_power_report *out) {
    RT_REQUIRE(out);
    return guarded([&] {
        const auto r = redtime::power_report(tau, gamma, trials, safety_factor);
        *out = {r.tau,
                r.gamma,
                r.trials,
                r.safety_factor,
                r.n_required_strict ? 1 : 0,
                r.n_required_strict.value_or(0),
                r.fluctuation_scale,
                r.expected_delta_n,
                r.worst_case_margin,
                r.z_score,
                r.p_value_two_sided,
                r.p_value_one_sided,
                r.tau_upper_bound};
    });
}

rt_status rt_power_report_format(const rt_power_report *report, int format, char *buf, size_t cap,
                                 size_t *needed) {
    if (format == RT_FORMAT_CSV_HEADER) return copy_text(redtime::PowerReport::csv_header(), buf, cap, needed);
    RT_REQUIRE(report);
    const auto r = to_report(*report);
    if (format == RT_FORMAT_KEY_VALUE) return copy_text(r.to_key_value(), buf, cap, needed);
    if (format == RT_FORMAT_CSV_ROW) return copy_text(r.to_csv_row(), buf, cap, needed);
    return fail(RT_ERR_INVALID_ARGUMENT, "unknown report format");
}

rt_status rt_format_number(double value, char *buf, size_t cap, size_t *needed) {
    return copy_text(redtime::format_number(value), buf, cap, needed);
}

rt_status rt_runspec_create(rt_runspec **out) {
    RT_REQUIRE(out);
    return guarded([&] { *out = new rt_runspec{}; });
}

void rt_runspec_destroy(rt_runspec *spec) { delete spec; }

rt_status rt_runspec_load_file(rt_runspec *spec, const char *path) {
    RT_REQUIRE(spec);
    RT_REQUIRE(path);
    return guarded([&] { spec->spec.load(path); });
}

rt_status rt_runspec_parse_text(rt_runspec *spec, const char *text) {
    RT_REQUIRE(spec);
    RT_REQUIRE(text);
    return guarded([&] { spec->spec.parse(text); });
}

rt_status rt_runspec_set(rt_runspec *spec, const char *key, const char *value) {
    RT_REQUIRE(spec);
    RT_REQUIRE(key);
    RT_REQUIRE(value);
    return guarded([&] { spec->spec.set(key, value); });
}

rt_status rt_runspec_get(const rt_runspec *spec, const char *key, char *buf, size_t cap, size_t *needed) {
    RT_REQUIRE(spec);
    RT_REQUIRE(key);
    const auto v = spec->spec.get(key);
    if (!v) return fail(RT_ERR_NOT_FOUND, "key is not set");
    return copy_text(*v, buf, cap, needed);
}

rt_status rt_runspec_emit(const rt_runspec *spec, char *buf, size_t cap, size_t *needed) {
    RT_REQUIRE(spec);
    return copy_text(spec->spec.emit(), buf, cap, needed);
}

rt_status rt_runspec_experiment(const rt_runspec *spec, rt_experiment *out) {
    RT_REQUIRE(spec);
    RT_REQUIRE(out);
    return guarded([&] { *out = from_config(spec->spec.experiment()); });
}

rt_status rt_runspec_devices(const rt_runspec *spec, rt_probing *sigma1, rt_probing *sigma3) {
    RT_REQUIRE(spec);
    RT_REQUIRE(sigma1);
    RT_REQUIRE(sigma3);
    return guarded([&] {
        const auto d = spec->spec.devices();
        *sigma1 = from_model(d.sigma1);
        *sigma3 = from_model(d.sigma3);
    });
}

rt_status rt_parse_time(const char *text, double *out) {
    RT_REQUIRE(text);
    RT_REQUIRE(out);
    return guarded([&] { *out = redtime::parse_time_seconds(text); });
}

}  // extern "C"
