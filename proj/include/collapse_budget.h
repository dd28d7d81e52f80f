/* collapse-budget public C API.
 *
 * Heating-rate budgets, phonon-occupation evolution, parameter sweeps and
 * collapse-rate optimization for a charged nanosphere in a Paul trap.
 *
 * Conventions:
 *   - All functions return CB_OK (0) on success; on failure they return a
 *     nonzero cb_status and cb_last_error() describes the problem for the
 *     calling thread.
 *   - Handles are created by cb_*_create/load functions and released with the
 *     matching cb_*_free; freeing NULL is a no-op.
 *   - Internal units throughout: SI plus angular frequencies (rad/s);
 *     diffusion rates in phonons/s.
 */
#ifndef COLLAPSE_BUDGET_H
#define COLLAPSE_BUDGET_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CB_API __declspec(dllexport)
#else
#define CB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cb_status {
  CB_OK = 0,
  CB_ERR_INVALID_ARGUMENT = 1, /* bad value or violated invariant */
  CB_ERR_PARSE = 2,            /* config text is not valid JSON */
  CB_ERR_IO = 3,               /* file could not be read/written */
  CB_ERR_INTERNAL = 4          /* numerical failure */
} cb_status;

/* Version string "x.y.z". */
CB_API const char* cb_version(void);

/* Message for the last failure on the calling thread; never NULL. */
CB_API const char* cb_last_error(void);

/* ---------- scenarios ---------------------------------------------------- */

typedef struct cb_scenario cb_scenario;

/* Bundled scenario: "fig2" (reference trap), "fig3a".."fig3d" (sweeps),
 * "fig4" (optimization). */
CB_API cb_status cb_scenario_preset(const char* name, cb_scenario** out);
/* Strict-JSON config; unknown keys are rejected. */
CB_API cb_status cb_scenario_load(const char* path, cb_scenario** out);
CB_API cb_status cb_scenario_parse(const char* json_text, cb_scenario** out);
CB_API void cb_scenario_free(cb_scenario* s);

/* Canonical serialization (sorted keys, SI units); free with cb_string_free. */
CB_API cb_status cb_scenario_serialize(const cb_scenario* s, char** out_json);
/* 16 hex digits identifying the canonical config. */
CB_API cb_status cb_scenario_digest(const cb_scenario* s, char out[17]);
CB_API void cb_string_free(char* s);

/* Provenance record (tool version, config digest, subcommand, seed,
 * timestamp) written as JSON to `path`. */
CB_API cb_status cb_write_manifest(const cb_scenario* s, const char* subcommand,
                                   uint64_t seed, const char* path);

CB_API cb_status cb_scenario_seed(const cb_scenario* s, uint64_t* out);

/* Frequently needed scalars; any output pointer may be NULL. */
CB_API cb_status cb_scenario_info(const cb_scenario* s, double* lambda_csl_hz,
                                  double* n0, double* t_evolve_s,
                                  double* omega_m_rad_s);

/* ---------- noise budgets ------------------------------------------------ */

typedef struct cb_budget {
  double D_gas;        /* phonons/s */
  double D_bb;         /* phonons/s */
  double D_csl;        /* phonons/s */
  double D_efield;     /* phonons/s */
  double D_pos;        /* 1/s */
  double gamma_gas;    /* 1/s */
  double gamma_bb_e;   /* 1/s */
  double gamma_bb_a;   /* 1/s */
  double Gamma_total;  /* 1/s */
  double D_diff_total; /* phonons/s */
} cb_budget;

/* Budget at the scenario's collapse rate. */
CB_API cb_status cb_compute_budget(const cb_scenario* s, cb_budget* out);
/* Budget with the collapse rate overridden (lambda in 1/s). */
CB_API cb_status cb_compute_budget_lambda(const cb_scenario* s, double lambda_csl,
                                          cb_budget* out);
/* CSV with one row per requested lambda value. */
CB_API cb_status cb_budget_write_csv(const cb_scenario* s, const double* lambdas,
                                     int count, const char* path);

/* ---------- occupation evolution ----------------------------------------- */

typedef struct cb_trajectory cb_trajectory;

/* Mean occupation at the given times (strictly increasing, seconds).
 * with_csl = 0 zeroes the collapse term. use_moments = 0 evaluates the
 * closed-form solution; 1 integrates the quadrature second moments. */
CB_API cb_status cb_evolve(const cb_scenario* s, int with_csl,
                           const double* times, int count, int use_moments,
                           cb_trajectory** out);
CB_API cb_status cb_trajectory_size(const cb_trajectory* t, int* out);
CB_API cb_status cb_trajectory_point(const cb_trajectory* t, int index,
                                     double* time_s, double* mean_n);
CB_API cb_status cb_trajectory_write_csv(const cb_trajectory* t, const char* path);
CB_API void cb_trajectory_free(cb_trajectory* t);

/* ---------- cooling stage ------------------------------------------------ */

typedef struct cb_cooling_report {
  double g_sq;        /* (rad/s)^2 */
  double Gamma_minus; /* 1/s */
  double N_ss;        /* phonons */
  double T_bulk;      /* K */
  double n0;          /* phonons at handover */
  char warnings[512]; /* '\n'-separated; empty when clean */
} cb_cooling_report;

/* Requires the scenario to carry a cooling section. */
CB_API cb_status cb_cooling_report_compute(const cb_scenario* s,
                                           cb_cooling_report* out);

/* ---------- sweeps -------------------------------------------------------- */

typedef struct cb_sweep cb_sweep;

typedef struct cb_sweep_row {
  double axis_value; /* internal units: Pa, K, rad/s, m, 1/s, s */
  double n_csl;
  double n_cqm;
  double ratio;
  cb_budget budget_csl;
  cb_budget budget_cqm;
} cb_sweep_row;

/* Sweep an axis ("pressure", "T_int", "omega_m", "radius", "lambda_csl",
 * "t_evolve") over [lo, hi] in internal units. points >= 2; log_scale != 0
 * makes the grid geometric. threads <= 0 picks a default; the
 * COLLAPSE_BUDGET_THREADS environment variable caps it. */
CB_API cb_status cb_run_sweep(const cb_scenario* s, const char* axis, double lo,
                              double hi, int points, int log_scale, int threads,
                              cb_sweep** out);
/* Sweep settings bundled in the scenario's `sweep` section. */
CB_API cb_status cb_run_sweep_preset(const cb_scenario* s, int threads,
                                     cb_sweep** out);
CB_API cb_status cb_sweep_size(const cb_sweep* sw, int* out);
CB_API cb_status cb_sweep_row_get(const cb_sweep* sw, int index, cb_sweep_row* out);
CB_API cb_status cb_sweep_write_csv(const cb_sweep* sw, const char* path);
/* Longest contiguous run where |d log n_csl / d log axis| < threshold.
 * nonempty receives 0/1; lo/hi the interval endpoints when nonempty. */
CB_API cb_status cb_sweep_immunity(const cb_sweep* sw, double threshold,
                                   double* lo, double* hi, int* nonempty);
CB_API void cb_sweep_free(cb_sweep* sw);

/* ---------- collapse-rate optimization ----------------------------------- */

typedef struct cb_optimize_spec {
  double ratio_threshold; /* detection criterion on n_csl/n_cqm at horizon */
  double horizon_s;
  double n0;
  double R_lo_m, R_hi_m;
  double omega_lo_rad_s, omega_hi_rad_s;
  double lambda_lo_hz, lambda_hi_hz;
  int grid_R, grid_omega;
} cb_optimize_spec;

/* Generic defaults: ratio 1.2 at 100 s from n0 = 50, R in [5 nm, 1 um],
 * omega in 2*pi*[100 Hz, 1 MHz], lambda bracket [1e-16, 1e-4]. */
CB_API cb_status cb_optimize_spec_default(cb_optimize_spec* out);
/* Settings from the scenario's `optimize` section (falls back to defaults
 * when the section is absent). */
CB_API cb_status cb_optimize_spec_from_scenario(const cb_scenario* s,
                                                cb_optimize_spec* out);

/* Grid sizes of the scenario's `optimize` section; 0/0 when absent. */
CB_API cb_status cb_scenario_optimize_grid_sizes(const cb_scenario* s, int* np,
                                                 int* nt);
/* Fill pressure/temperature grids from the `optimize` section; each array
 * must hold the size reported above. */
CB_API cb_status cb_scenario_optimize_grids(const cb_scenario* s,
                                            double* pressures_Pa, int np,
                                            double* T_ints_K, int nt);

typedef struct cb_bound {
  double pressure_Pa;
  double T_int_K;
  double lambda_min_hz; /* NaN when not converged */
  double best_R_m;
  double best_omega_rad_s;
  double achieved_ratio;
  int converged;
} cb_bound;

/* Smallest detectable collapse rate at one (pressure, T_int) cell. A
 * non-detectable cell is data (converged = 0), not an error. */
CB_API cb_status cb_min_testable_lambda(const cb_scenario* s,
                                        const cb_optimize_spec* spec,
                                        double pressure_Pa, double T_int_K,
                                        cb_bound* out);
/* One bound per (pressure, T_int) pair, pressures outer, grid order.
 * rows must hold np*nt entries. */
CB_API cb_status cb_testable_curve(const cb_scenario* s,
                                   const cb_optimize_spec* spec,
                                   const double* pressures_Pa, int np,
                                   const double* T_ints_K, int nt, int threads,
                                   cb_bound* rows);
CB_API cb_status cb_curve_write_csv(const cb_bound* rows, int count,
                                    const char* path);

/* ---------- synthetic measurements and discrimination -------------------- */

/* Bose-Einstein occupation samples with the given mean; deterministic in the
 * seed. out must hold `count` entries. */
CB_API cb_status cb_sample_phonons(double mean_n, int count, uint64_t seed,
                                   long long* out);

typedef struct cb_discrimination {
  double log_likelihood_ratio;
  double p_value;
  int sample_count;
  int mc_trials;
  uint64_t seed;
} cb_discrimination;

/* Likelihood-ratio test of Bose-Einstein models mean_H1 vs mean_H0; p-value
 * by Monte-Carlo resampling under H0 (worker-count independent). */
CB_API cb_status cb_likelihood_ratio_test(const long long* samples, int count,
                                          double mean_H0, double mean_H1,
                                          int mc_trials, uint64_t seed, int threads,
                                          cb_discrimination* out);
CB_API cb_status cb_discrimination_write_csv(const cb_discrimination* d,
                                             double mean_H0, double mean_H1,
                                             const char* path);

/* ---------- helpers ------------------------------------------------------- */

/* Range grammar "lo..hi:Npts[log|lin]" (default lin). */
CB_API cb_status cb_parse_range(const char* text, double* lo, double* hi,
                                int* points, int* log_scale);

/* Grid of `points` values from lo to hi, inclusive. */
CB_API cb_status cb_make_grid(double lo, double hi, int points, int log_scale,
                              double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* COLLAPSE_BUDGET_H */
