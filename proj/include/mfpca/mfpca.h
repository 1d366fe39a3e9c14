/*
 * C interface to the mfpca library.
 *
 * Every fallible call returns an mfpca_status. On failure the message for the
 * calling thread is available from mfpca_last_error() until the next failing
 * call on that thread. Objects are opaque handles released with the matching
 * *_free function; passing NULL to a *_free function is a no-op.
 *
 * Matrices crossing the interface are dense, row-major doubles.
 */
#ifndef MFPCA_H
#define MFPCA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MFPCA_BUILDING_LIBRARY)
#    define MFPCA_API __declspec(dllexport)
#  else
#    define MFPCA_API __declspec(dllimport)
#  endif
#else
#  define MFPCA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mfpca_status {
  MFPCA_OK = 0,
  MFPCA_ERR_INVALID_ARGUMENT = 1,
  MFPCA_ERR_INVALID_GRID = 2,
  MFPCA_ERR_INVALID_MATRIX = 3,
  MFPCA_ERR_DIMENSION = 4,
  MFPCA_ERR_DEGENERATE_FUNCTION = 5,
  MFPCA_ERR_INSUFFICIENT_DATA = 6,
  MFPCA_ERR_TRUNCATION = 7,
  MFPCA_ERR_DEGENERATE_SPECTRUM = 8,
  MFPCA_ERR_CONFIG = 9,
  MFPCA_ERR_SPEC = 10,
  MFPCA_ERR_SINGULAR_FIT = 11,
  MFPCA_ERR_SCHEMA = 12,
  MFPCA_ERR_VALIDATION = 13,
  MFPCA_ERR_IO = 14,
  MFPCA_ERR_INTERNAL = 15,
  /* A caller-supplied output buffer is too small. */
  MFPCA_ERR_BUFFER = 16
} mfpca_status;

MFPCA_API const char* mfpca_version(void);
MFPCA_API const char* mfpca_status_name(mfpca_status status);
MFPCA_API const char* mfpca_last_error(void);

/* ------------------------------------------------------------------------ */
/* Variance explained                                                       */

/* Percent of variance per component and cumulatively over `count`
 * eigenvalues, plus NPC_alpha for each requested alpha. `pve` and
 * `cumulative` may be NULL; otherwise they hold `count` doubles. */
MFPCA_API mfpca_status mfpca_variance_report(const double* eigenvalues, size_t count,
                                             const double* alphas, size_t alpha_count,
                                             double* pve, double* cumulative, size_t* npc);

/* Smallest M whose leading eigenvalues reach alpha percent of the total. */
MFPCA_API mfpca_status mfpca_select_by_pve(const double* eigenvalues, size_t count, double alpha,
                                           size_t* out);

/* ------------------------------------------------------------------------ */
/* Samples                                                                  */

typedef struct mfpca_sample mfpca_sample;

MFPCA_API mfpca_status mfpca_sample_create(mfpca_sample** out);

/* Appends a feature. `grid` holds `points` strictly increasing values;
 * `values` is observations x points. All features share `observations`. */
MFPCA_API mfpca_status mfpca_sample_add_feature(mfpca_sample* sample, const double* grid,
                                                size_t points, const double* values,
                                                size_t observations);

/* One CSV per feature: one data row per grid point, one named column per
 * observation, optional leading grid column "t" (default grid 1..S). */
MFPCA_API mfpca_status mfpca_sample_load_csv(const char* const* paths, size_t count,
                                             mfpca_sample** out);

MFPCA_API size_t mfpca_sample_features(const mfpca_sample* sample);
MFPCA_API size_t mfpca_sample_observations(const mfpca_sample* sample);
MFPCA_API size_t mfpca_sample_points(const mfpca_sample* sample, size_t feature);
MFPCA_API void mfpca_sample_free(mfpca_sample* sample);

/* ------------------------------------------------------------------------ */
/* Fitting                                                                  */

typedef struct mfpca_model mfpca_model;

/* Centers the sample, runs univariate FPCA with truncations[j] components
 * for feature j, and combines the scores. When smoothing_basis > 0 every
 * curve is first projected onto that many cubic B-splines. */
MFPCA_API mfpca_status mfpca_fit(const mfpca_sample* sample, const size_t* truncations,
                                 size_t count, size_t smoothing_basis, mfpca_model** out);

/* M_+ and M_- of the fitted model. */
MFPCA_API size_t mfpca_model_components(const mfpca_model* model);
MFPCA_API size_t mfpca_model_reliable(const mfpca_model* model);
MFPCA_API size_t mfpca_model_features(const mfpca_model* model);
MFPCA_API size_t mfpca_model_observations(const mfpca_model* model);

MFPCA_API mfpca_status mfpca_model_eigenvalues(const mfpca_model* model, double* out,
                                               size_t capacity);
MFPCA_API mfpca_status mfpca_model_eigenfunction(const mfpca_model* model, size_t component,
                                                 size_t feature, double* out, size_t capacity);
/* Multivariate scores, observations x M_+. */
MFPCA_API mfpca_status mfpca_model_scores(const mfpca_model* model, double* out,
                                          size_t capacity);
/* Retained univariate eigenvalues of `feature`; *written receives M_j. */
MFPCA_API mfpca_status mfpca_model_univariate_eigenvalues(const mfpca_model* model,
                                                          size_t feature, double* out,
                                                          size_t capacity, size_t* written);

/* Variance report over all M_+ components, or only the first M_- when
 * reliable_only is nonzero. Output arrays as in mfpca_variance_report. */
MFPCA_API mfpca_status mfpca_model_variance(const mfpca_model* model, int reliable_only,
                                            const double* alphas, size_t alpha_count,
                                            double* pve, double* cumulative, size_t* npc);

/* Writes eigenvalues.csv, variance.csv, eigenfunctions.csv and scores.csv to
 * `dir`. `provenance` (may be NULL) is written as the first '#' line. Only the
 * first M_- components are written unless `all_components` is nonzero; every
 * row carries an `unreliable` flag either way. */
MFPCA_API mfpca_status mfpca_model_write_reports(const mfpca_model* model, const char* dir,
                                                 const char* provenance, const double* alphas,
                                                 size_t alpha_count, int all_components);

MFPCA_API void mfpca_model_free(mfpca_model* model);

/* ------------------------------------------------------------------------ */
/* Simulation studies                                                       */

typedef enum mfpca_cut_policy { MFPCA_CUTS_EQUAL = 0, MFPCA_CUTS_UNIFORM = 1 } mfpca_cut_policy;

typedef struct mfpca_study_grid {
  const size_t* observations; /* N values */
  size_t observation_count;
  const size_t* points;       /* S values */
  size_t point_count;
  size_t replications;
  uint64_t seed;
  mfpca_cut_policy cuts;
  size_t threads;             /* 0 = hardware concurrency */
} mfpca_study_grid;

typedef struct mfpca_error_study mfpca_error_study;

/* Eigenvalue error study: for every (N, S) cell and every shared M_j in
 * `truncations`, relative squared errors of the first `components`
 * multivariate eigenvalues. */
MFPCA_API mfpca_status mfpca_error_study_run(const mfpca_study_grid* grid,
                                             const size_t* truncations, size_t truncation_count,
                                             size_t components, mfpca_error_study** out);

/* min, q1, median, q3, max of Err(nu_m) for m in 1..components. */
MFPCA_API mfpca_status mfpca_error_study_box(const mfpca_error_study* study, size_t n, size_t s,
                                             size_t truncation, size_t m, double out[5]);

/* error_summary.csv, error_boxplot.csv, error_report.json, error_replications.csv */
MFPCA_API mfpca_status mfpca_error_study_write(const mfpca_error_study* study, const char* dir);
MFPCA_API void mfpca_error_study_free(mfpca_error_study* study);

typedef struct mfpca_npc_study mfpca_npc_study;

MFPCA_API mfpca_status mfpca_npc_study_run(const mfpca_study_grid* grid, const double* alphas,
                                           size_t alpha_count, mfpca_npc_study** out);

/* Number of replications of cell (n, s) that selected `npc` components. */
MFPCA_API mfpca_status mfpca_npc_study_count(const mfpca_npc_study* study, size_t n, size_t s,
                                             double alpha, size_t npc, size_t* out);
MFPCA_API mfpca_status mfpca_npc_study_mode(const mfpca_npc_study* study, size_t n, size_t s,
                                            double alpha, size_t* mode, size_t* true_npc);

/* npc_counts.csv, npc_report.json, npc_replications.csv */
MFPCA_API mfpca_status mfpca_npc_study_write(const mfpca_npc_study* study, const char* dir);
MFPCA_API void mfpca_npc_study_free(mfpca_npc_study* study);

/* ------------------------------------------------------------------------ */
/* Weather application                                                      */

typedef struct mfpca_weather mfpca_weather;
typedef struct mfpca_scenario mfpca_scenario;

MFPCA_API mfpca_status mfpca_weather_load(const char* temperature_csv,
                                          const char* precipitation_csv,
                                          const char* stations_csv, mfpca_weather** out);
/* temperature.csv, precipitation.csv and stations.csv inside `dir`. */
MFPCA_API mfpca_status mfpca_weather_load_dir(const char* dir, mfpca_weather** out);
MFPCA_API size_t mfpca_weather_stations(const mfpca_weather* data);
MFPCA_API void mfpca_weather_free(mfpca_weather* data);

MFPCA_API mfpca_status mfpca_weather_run_scenario(const mfpca_weather* data, size_t m1, size_t m2,
                                                  int id, mfpca_scenario** out);

/* Number of reported components: min(4, M_1 + M_2). */
MFPCA_API size_t mfpca_scenario_components(const mfpca_scenario* scenario);
/* Nonzero when M_1 + M_2 < 4 and fewer than four components are reported. */
MFPCA_API int mfpca_scenario_fewer_than_four(const mfpca_scenario* scenario);
MFPCA_API mfpca_status mfpca_scenario_eigenvalues(const mfpca_scenario* scenario, double* out,
                                                  size_t capacity);
MFPCA_API mfpca_status mfpca_scenario_eigenfunction(const mfpca_scenario* scenario,
                                                    size_t component, size_t feature, double* out,
                                                    size_t capacity);
/* Flips components of `other` that point away from `reference`. */
MFPCA_API mfpca_status mfpca_scenario_align(const mfpca_scenario* reference,
                                            mfpca_scenario* other);
/* table2.csv and eigenfunctions.csv in `dir`. */
MFPCA_API mfpca_status mfpca_weather_write_reports(const mfpca_scenario* const* scenarios,
                                                   size_t count, const char* dir,
                                                   const char* provenance);
MFPCA_API void mfpca_scenario_free(mfpca_scenario* scenario);

#ifdef __cplusplus
}
#endif

#endif /* MFPCA_H */
