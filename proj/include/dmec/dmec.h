/* Decoupled-access MEC latency model: C interface. */
#ifndef DMEC_DMEC_H
#define DMEC_DMEC_H

#include <stddef.h>
#include <stdint.h>

#if defined(DMEC_BUILDING_LIBRARY)
#define DMEC_API __attribute__((visibility("default")))
#else
#define DMEC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dmec_status {
  DMEC_OK = 0,
  DMEC_ERR_IO = 1,
  DMEC_ERR_CONFIG = 2,
  DMEC_ERR_UNSTABLE = 3,       /* a cloudlet queue has arrival rate >= service rate */
  DMEC_ERR_VALIDATION = 4,     /* a Monte Carlo check failed or had too few trials */
  DMEC_ERR_FORMAT = 5,         /* malformed input text such as a sweep CSV */
  DMEC_ERR_INVALID_ARGUMENT = 6,
  DMEC_ERR_NUMERICAL = 7,      /* quadrature did not converge, window too small */
  DMEC_ERR_INTERNAL = 8
} dmec_status;

typedef enum dmec_tier { DMEC_TIER_MACRO = 0, DMEC_TIER_SMALL = 1 } dmec_tier;
typedef enum dmec_policy { DMEC_POLICY_COUPLED = 0, DMEC_POLICY_DECOUPLED = 1 } dmec_policy;
typedef enum dmec_link { DMEC_LINK_UL = 0, DMEC_LINK_DL = 1 } dmec_link;
typedef enum dmec_scheme {
  DMEC_SCHEME_COUPLED = 0,
  DMEC_SCHEME_DECOUPLED_UL_PROC = 1,
  DMEC_SCHEME_DECOUPLED_DL_PROC = 2
} dmec_scheme;
typedef enum dmec_dl_form {
  DMEC_DL_FORM_CONFIGURED = -1,
  DMEC_DL_FORM_NOISE_SCALED = 0,
  DMEC_DL_FORM_INTERFERENCE = 1
} dmec_dl_form;

typedef struct dmec_scenario dmec_scenario;

typedef struct dmec_association {
  double coupled_ss;
  double coupled_mm;
  double decoupled_ss;
  double decoupled_mm;
  double decoupled_sm;
  double decoupled_ms;
} dmec_association;

/* Seconds. Unbounded components are +infinity. */
typedef struct dmec_latency {
  double ul_time_s;
  double exec_time_s;
  double backhaul_time_s;
  double dl_time_s;
  double total_s;
} dmec_latency;

typedef struct dmec_validation_options {
  uint64_t trials;
  uint64_t seed;
} dmec_validation_options;

typedef struct dmec_frontier {
  int has_last_stable;
  double last_stable;
  int has_first_unstable;
  double first_unstable;
  dmec_tier tier; /* meaningful when has_first_unstable */
} dmec_frontier;

/* Message for the last failing call on this thread; "" after success. */
DMEC_API const char* dmec_last_error(void);
DMEC_API const char* dmec_version(void);

/* Strings returned through char** are owned by the caller. */
DMEC_API void dmec_string_free(char* text);

DMEC_API dmec_status dmec_scenario_default(dmec_scenario** out);
DMEC_API dmec_status dmec_scenario_from_text(const char* text, dmec_scenario** out);
DMEC_API dmec_status dmec_scenario_from_file(const char* path, dmec_scenario** out);
DMEC_API void dmec_scenario_free(dmec_scenario* scenario);
/* Value in config units, e.g. ("p_s_dbm", "30"). Does not validate. */
DMEC_API dmec_status dmec_scenario_set(dmec_scenario* scenario, const char* key, const char* value);
DMEC_API dmec_status dmec_scenario_get(const dmec_scenario* scenario, const char* key, double* out);
DMEC_API dmec_status dmec_scenario_validate(const dmec_scenario* scenario);
DMEC_API dmec_status dmec_scenario_to_text(const dmec_scenario* scenario, char** out);

DMEC_API dmec_status dmec_association_probs(const dmec_scenario* scenario, dmec_association* out);
DMEC_API dmec_status dmec_mean_load(const dmec_scenario* scenario, dmec_policy policy, dmec_link link,
                                    dmec_tier tier, double* out);
/* gamma is linear. */
DMEC_API dmec_status dmec_ul_coverage(const dmec_scenario* scenario, dmec_policy policy, dmec_tier tier,
                                      double gamma, double* out);
DMEC_API dmec_status dmec_dl_coverage(const dmec_scenario* scenario, dmec_policy policy, dmec_tier tier,
                                      double gamma, dmec_dl_form form, double* out);
DMEC_API dmec_status dmec_case_latency(const dmec_scenario* scenario, dmec_scheme scheme, dmec_tier ul_tier,
                                       dmec_tier dl_tier, dmec_latency* out);
DMEC_API dmec_status dmec_average_latency(const dmec_scenario* scenario, dmec_scheme scheme,
                                          dmec_latency* out);
DMEC_API dmec_status dmec_analytic_report(const dmec_scenario* scenario, char** out);

/* Sweep CSV text for figure 2..5. */
DMEC_API dmec_status dmec_sweep_figure(const dmec_scenario* scenario, int figure, char** out_csv);
/* Sweep over one numeric config key, values in config units. */
DMEC_API dmec_status dmec_sweep_axis(const dmec_scenario* scenario, const char* axis, const double* values,
                                     size_t count, char** out_csv);
DMEC_API dmec_status dmec_stability_frontier(const dmec_scenario* scenario, const char* axis,
                                             const double* values, size_t count, dmec_scheme scheme,
                                             dmec_frontier* out);

/* Writes the report CSV to *out_csv and a one-line verdict to *out_summary
   (either may be NULL). Returns DMEC_ERR_VALIDATION when any check fails or
   trials are too few; both outputs are still produced in that case. */
DMEC_API dmec_status dmec_validate(const dmec_scenario* scenario, const dmec_validation_options* options,
                                   char** out_csv, char** out_summary);

/* SVG text for a sweep CSV. */
DMEC_API dmec_status dmec_plot(const char* csv_text, char** out_svg);

#ifdef __cplusplus
}
#endif

#endif
