#ifndef NOMA_RIS_H
#define NOMA_RIS_H

/* Generated by cbindgen from noma-ris-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a call through this ABI.
 */
typedef enum NomaRisStatus {
  NOMA_RIS_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  NOMA_RIS_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  NOMA_RIS_STATUS_UTF8 = 2,
  /**
   * Config JSON or an override failed to parse or validate.
   */
  NOMA_RIS_STATUS_PARSE = 3,
  /**
   * A parameter value was rejected.
   */
  NOMA_RIS_STATUS_DOMAIN = 4,
  /**
   * A file could not be created or written.
   */
  NOMA_RIS_STATUS_IO = 5,
} NomaRisStatus;

/**
 * Opaque scenario handle. Create with [`noma_ris_scenario_default`] or
 * [`noma_ris_scenario_from_json`], release with [`noma_ris_scenario_free`].
 */
typedef struct NomaRisScenario NomaRisScenario;

/**
 * Allocation-transition parameters in a form a C caller can hold by value.
 * Produce one with [`noma_ris_transition_from_moments`]; the fields mirror
 * the library's transition exactly.
 */
typedef struct NomaRisTransition {
  double theta0_deg;
  /**
   * Correction amplitude applied inside the sigmoid exponent.
   */
  double amplitude;
  /**
   * Correction steepness inside the tanh.
   */
  double steepness;
  double psi;
  double sigma_c;
  double delta_mu;
  double energy;
  double lambda;
  double c_const;
} NomaRisTransition;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the calling thread's most recent error message into `buffer`
 * (truncated to `capacity - 1` bytes, always NUL-terminated when
 * `capacity > 0`) and returns the full message length in bytes. Passing a
 * null buffer or zero capacity just reports the length.
 *
 * # Safety
 * `buffer`, when non-null, must point to at least `capacity` writable
 * bytes.
 */
uintptr_t noma_ris_last_error(char *buffer, uintptr_t capacity);

/**
 * Library version as a static NUL-terminated string; do not free.
 */
const char *noma_ris_version(void);

/**
 * Creates a scenario with every parameter at its default.
 */
struct NomaRisScenario *noma_ris_scenario_default(void);

/**
 * Parses a scenario from JSON. Returns null on failure and records the
 * parse error for [`noma_ris_last_error`].
 *
 * # Safety
 * `json` must be a valid NUL-terminated string pointer.
 */
struct NomaRisScenario *noma_ris_scenario_from_json(const char *json);

/**
 * Releases a scenario handle. Null is a no-op.
 *
 * # Safety
 * `scenario` must be a handle returned by this library that has not been
 * freed yet.
 */
void noma_ris_scenario_free(struct NomaRisScenario *scenario);

/**
 * Renders the fully resolved scenario as pretty JSON. Release the returned
 * string with [`noma_ris_string_free`]; returns null on failure.
 *
 * # Safety
 * `scenario` must be a live handle from this library.
 */
char *noma_ris_scenario_to_json(const struct NomaRisScenario *scenario);

/**
 * Releases one string returned by this library. Null is a no-op.
 *
 * # Safety
 * `text` must have been returned by this library and not freed yet.
 */
void noma_ris_string_free(char *text);

/**
 * Applies one `key.path=value` override, the same mechanism as the CLI's
 * `--set`: the key must name an existing config field, the value is parsed
 * as JSON with a fallback to a bare string.
 *
 * # Safety
 * `scenario` must be a live handle; `key` and `value` must be valid
 * NUL-terminated string pointers.
 */
enum NomaRisStatus noma_ris_scenario_set(struct NomaRisScenario *scenario,
                                         const char *key,
                                         const char *value);

/**
 * Sets the random seed.
 *
 * # Safety
 * `scenario` must be a live handle from this library.
 */
enum NomaRisStatus noma_ris_scenario_seed(struct NomaRisScenario *scenario, uint64_t seed);

/**
 * Runs the full config validation, including a probe of the loss tables
 * across the controller span.
 *
 * # Safety
 * `scenario` must be a live handle from this library.
 */
enum NomaRisStatus noma_ris_scenario_validate(const struct NomaRisScenario *scenario);

/**
 * Logistic allocation weight `1 / (1 + exp(-r (theta - theta0)))`.
 */
double noma_ris_alpha_basic(double theta_deg, double r, double theta0_deg);

/**
 * Steepness threading the sigmoid through two endpoint weights.
 *
 * # Safety
 * `out` must point to a writable double.
 */
enum NomaRisStatus noma_ris_r_from_endpoints(double alpha_low,
                                             double alpha_high,
                                             double theta_low_deg,
                                             double theta_high_deg,
                                             double *out);

/**
 * Steepness implied by a feedback gain.
 *
 * # Safety
 * `out` must point to a writable double.
 */
enum NomaRisStatus noma_ris_r_from_k(double k_prime,
                                     double delta_mu,
                                     double sigma_c,
                                     double theta_low_deg,
                                     double theta_high_deg,
                                     double *out);

/**
 * Feedback-gain interval mapping onto the admissible steepness range.
 *
 * # Safety
 * `out_min` and `out_max` must point to writable doubles.
 */
enum NomaRisStatus noma_ris_k_bounds(double sigma_c,
                                     double theta_low_deg,
                                     double theta_high_deg,
                                     double delta_mu,
                                     double *out_min,
                                     double *out_max);

/**
 * Free-space path loss in dB.
 *
 * # Safety
 * `out_db` must point to a writable double.
 */
enum NomaRisStatus noma_ris_free_space_loss(double frequency_hz, double distance_m, double *out_db);

/**
 * Thermal noise power in watts for a bandwidth and temperature.
 *
 * # Safety
 * `out_w` must point to a writable double.
 */
enum NomaRisStatus noma_ris_noise_variance(double bandwidth_hz,
                                           double temperature_k,
                                           double *out_w);

/**
 * Builds the allocation transition from regime moments. Pass NaN as
 * `energy` to use the default `|mu_high - mu_low|`.
 *
 * # Safety
 * `out` must point to a writable [`NomaRisTransition`].
 */
enum NomaRisStatus noma_ris_transition_from_moments(double mu_low,
                                                    double sigma_low,
                                                    double mu_high,
                                                    double sigma_high,
                                                    double theta0_deg,
                                                    double energy,
                                                    double lambda,
                                                    double c_const,
                                                    struct NomaRisTransition *out);

/**
 * Allocation weight with the environment correction folded into the
 * exponent.
 *
 * # Safety
 * `transition` must point to a transition filled in by
 * [`noma_ris_transition_from_moments`]; `out` must point to a writable
 * double.
 */
enum NomaRisStatus noma_ris_alpha_adaptive(double theta_deg,
                                           double r,
                                           const struct NomaRisTransition *transition,
                                           double *out);

/**
 * Paired dynamic/equal capacity and SINR across elevations, written to
 * `out_csv` with the resolved config echoed to the `.config.json` sidecar.
 * `threads` sized the worker pool; 0 keeps the process default.
 *
 * # Safety
 * `scenario` must be a live handle; `out_csv` must be a valid
 * NUL-terminated path string.
 */
enum NomaRisStatus noma_ris_run_elevation_sweep(const struct NomaRisScenario *scenario,
                                                const char *out_csv,
                                                uintptr_t threads);

/**
 * Pooled per-user SINR histogram at the configured elevation; also writes
 * the `.summary.csv` companion.
 *
 * # Safety
 * `scenario` must be a live handle; `out_csv` must be a valid
 * NUL-terminated path string.
 */
enum NomaRisStatus noma_ris_run_sinr_histogram(const struct NomaRisScenario *scenario,
                                               const char *out_csv,
                                               uintptr_t threads);

/**
 * Mean capacity against user count for each configured steepness.
 *
 * # Safety
 * `scenario` must be a live handle; `out_csv` must be a valid
 * NUL-terminated path string.
 */
enum NomaRisStatus noma_ris_run_user_sweep(const struct NomaRisScenario *scenario,
                                           const char *out_csv,
                                           uintptr_t threads);

/**
 * Closed-loop steepness tuning against the capacity target.
 *
 * # Safety
 * `scenario` must be a live handle; `out_csv` must be a valid
 * NUL-terminated path string.
 */
enum NomaRisStatus noma_ris_run_feedback(const struct NomaRisScenario *scenario,
                                         const char *out_csv,
                                         uintptr_t threads);

/**
 * Steepness against feedback gain across the admissible interval.
 *
 * # Safety
 * `scenario` must be a live handle; `out_csv` must be a valid
 * NUL-terminated path string.
 */
enum NomaRisStatus noma_ris_run_r_range(const struct NomaRisScenario *scenario,
                                        const char *out_csv,
                                        uintptr_t threads);

/**
 * Evaluates one elevation with `trials` snapshots and reports the dynamic
 * allocation weight and its mean per-user capacity in bit/s.
 *
 * # Safety
 * `scenario` must be a live handle; `out_alpha` and `out_capacity_bps`
 * must point to writable doubles.
 */
enum NomaRisStatus noma_ris_capacity_probe(const struct NomaRisScenario *scenario,
                                           double theta_deg,
                                           uintptr_t trials,
                                           double *out_alpha,
                                           double *out_capacity_bps);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* NOMA_RIS_H */
