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

/*
 * C interface to the redtime library.
 *
 * Every function returns an rt_status. On failure the calling thread's
 * rt_last_error() describes the problem until the next failing call.
 * Handles (rt_profile, rt_runspec) are opaque and owned by the caller;
 * release them with the matching _destroy function.
 *
 * Functions that produce text take (buf, cap, needed). `needed` receives the
 * length including the terminating NUL; passing buf == NULL with cap == 0
 * queries the size. A buffer that is too small yields RT_ERR_BUFFER.
 */
#ifndef REDTIME_REDTIME_H
#define REDTIME_REDTIME_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RT_API __declspec(dllexport)
#else
#define RT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rt_status {
    RT_OK = 0,
    RT_ERR_DOMAIN = 1,           /* argument outside its mathematical domain */
    RT_ERR_INVALID_ARGUMENT = 2, /* malformed input, unknown name or key */
    RT_ERR_IO = 3,
    RT_ERR_NO_FINITE = 4,        /* min_trials: no finite N suffices */
    RT_ERR_BUFFER = 5,
    RT_ERR_NOT_FOUND = 6,
    RT_ERR_INTERNAL = 7
} rt_status;

RT_API const char *rt_last_error(void);
RT_API const char *rt_version(void);

/* ---- closed-form model ---------------------------------------------- */

RT_API rt_status rt_gap_density(double y, double window, double *out);
RT_API rt_status rt_overlap_probability(double tau, double *out);
RT_API rt_status rt_rho_collapse(double *p_plus, double *p_minus);
/* initial_sign is +1 or -1. */
RT_API rt_status rt_rho_reduced(double tau, double gamma, int initial_sign, double *p_plus, double *p_minus);
RT_API rt_status rt_expected_delta_n(double tau, double gamma, uint64_t trials, double *out);
RT_API rt_status rt_small_tau_delta_n(double tau, double gamma, uint64_t trials, double *out);

/* ---- reduction profiles ---------------------------------------------- */

typedef struct rt_profile rt_profile;

typedef struct rt_gamma_result {
    double gamma;
    double quadrature_error_estimate;
    int non_monotone_profile;
} rt_gamma_result;

/* name: "exponential", "linear", "sudden" or "csv:<path>". */
RT_API rt_status rt_profile_create(const char *name, rt_profile **out);
RT_API rt_status rt_profile_from_table(const double *x, const double *value, size_t count, rt_profile **out);
RT_API void rt_profile_destroy(rt_profile *profile);
RT_API const char *rt_profile_name(const rt_profile *profile);
RT_API rt_status rt_profile_eval(const rt_profile *profile, double x, double *out);
RT_API rt_status rt_profile_gamma(const rt_profile *profile, double tau, rt_gamma_result *out);

/* ---- Monte Carlo ------------------------------------------------------ */

enum { RT_PROBING_UNIFORM = 0, RT_PROBING_TRUNCATED_EXPONENTIAL = 1 };

typedef struct rt_probing {
    int kind;
    double window;
    double decay_time;
} rt_probing;

typedef struct rt_experiment {
    double window_duration;
    double reduction_time;
    uint64_t trials;
    int initial_sign;
    uint64_t seed;
} rt_experiment;

typedef struct rt_trial_record {
    double t1;
    double t3;
    int sigma1_first;
    double gap;
    int overlapped;
    double interruption_x; /* NaN unless overlapped */
    int outcome;
} rt_trial_record;

typedef struct rt_ensemble_stats {
    uint64_t n_plus;
    uint64_t n_minus;
    int64_t delta_n;
    double empirical_p3_plus;
    double std_error;
    double overlap_fraction;
    double sigma1_first_fraction;
    uint64_t sigma1_first_count;
    uint64_t overlap_count;
} rt_ensemble_stats;

/* name: "uniform" or "exp:<t_decay>". */
RT_API rt_status rt_probing_parse(const char *name, double window, rt_probing *out);
/* sigma3 may be NULL to reuse sigma1 for both devices. */
RT_API rt_status rt_run_trial(const rt_experiment *config, const rt_probing *sigma1, const rt_probing *sigma3,
                              const rt_profile *profile, uint64_t index, rt_trial_record *out);
/* threads == 0 uses the hardware concurrency; results do not depend on it. */
RT_API rt_status rt_run_ensemble(const rt_experiment *config, const rt_probing *sigma1, const rt_probing *sigma3,
                                 const rt_profile *profile, unsigned threads, rt_ensemble_stats *out);
RT_API rt_status rt_write_trial_log(const rt_experiment *config, const rt_probing *sigma1, const rt_probing *sigma3,
                                    const rt_profile *profile, const char *path);
/* Nonzero when both devices are uniform over the configured window. */
RT_API int rt_analytic_comparable(const rt_experiment *config, const rt_probing *sigma1, const rt_probing *sigma3);
/* counts must hold `bins` entries; *upper receives the histogram's right edge. */
RT_API rt_status rt_gap_histogram(const rt_probing *sigma1, const rt_probing *sigma3, uint64_t samples,
                                  uint64_t seed, size_t bins, uint64_t *counts, double *upper);

/* ---- statistics ------------------------------------------------------- */

typedef struct rt_significance {
    double z_score;
    double p_value_two_sided;
    double p_value_one_sided;
    int exact_binomial;
} rt_significance;

typedef struct rt_power_report {
    double tau;
    double gamma;
    uint64_t trials;
    double safety_factor;
    int has_n_required;
    uint64_t n_required_strict;
    double fluctuation_scale;
    double expected_delta_n;
    double worst_case_margin;
    double z_score;
    double p_value_two_sided;
    double p_value_one_sided;
    double tau_upper_bound;
} rt_power_report;

enum { RT_FORMAT_KEY_VALUE = 0, RT_FORMAT_CSV_ROW = 1, RT_FORMAT_CSV_HEADER = 2 };

/* Returns RT_ERR_NO_FINITE when tau == 0 or gamma == 1/2. */
RT_API rt_status rt_min_trials(double tau, double gamma, double safety_factor, uint64_t *out);
RT_API rt_status rt_fluctuation_scale(uint64_t trials, double *out);
RT_API rt_status rt_significance_test(int64_t observed_delta_n, uint64_t trials, rt_significance *out);
RT_API rt_status rt_tau_upper_bound(uint64_t trials, double *out);
RT_API rt_status rt_worst_case_margin(double expected_delta_n, uint64_t trials, double *out);
RT_API rt_status rt_power_report_compute(double tau, double gamma, uint64_t trials, double safety_factor,
                                         rt_power_report *out);
RT_API rt_status rt_power_report_format(const rt_power_report *report, int format, char *buf, size_t cap,
                                        size_t *needed);
/* Shortest text that parses back to the same double. */
RT_API rt_status rt_format_number(double value, char *buf, size_t cap, size_t *needed);

/* ---- run specifications ---------------------------------------------- */

typedef struct rt_runspec rt_runspec;

RT_API rt_status rt_runspec_create(rt_runspec **out);
RT_API void rt_runspec_destroy(rt_runspec *spec);
RT_API rt_status rt_runspec_load_file(rt_runspec *spec, const char *path);
RT_API rt_status rt_runspec_parse_text(rt_runspec *spec, const char *text);
RT_API rt_status rt_runspec_set(rt_runspec *spec, const char *key, const char *value);
/* RT_ERR_NOT_FOUND when the key is unset. */
RT_API rt_status rt_runspec_get(const rt_runspec *spec, const char *key, char *buf, size_t cap, size_t *needed);
RT_API rt_status rt_runspec_emit(const rt_runspec *spec, char *buf, size_t cap, size_t *needed);
RT_API rt_status rt_runspec_experiment(const rt_runspec *spec, rt_experiment *out);
RT_API rt_status rt_runspec_devices(const rt_runspec *spec, rt_probing *sigma1, rt_probing *sigma3);
/* Seconds from text with an optional s/ms/us/ns/ps/fs suffix. */
RT_API rt_status rt_parse_time(const char *text, double *out);

#ifdef __cplusplus
}
#endif

#endif /* REDTIME_REDTIME_H */
