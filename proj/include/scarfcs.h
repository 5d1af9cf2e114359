/*
 * scarfcs C interface.
 *
 * Coherent states of the conventional and X1-rational trigonometric Scarf-I
 * potentials: eigensystems, coherent-state statistics, autocorrelation and
 * quantum carpets. All functions return an scs_status; on failure the
 * message is available from scs_last_error() on the calling thread.
 * Handles are opaque, immutable after creation and may be shared between
 * threads.
 */
#ifndef SCARFCS_H
#define SCARFCS_H

#include <stddef.h>

#if defined(SCARFCS_BUILDING_LIBRARY)
#define SCS_API __attribute__((visibility("default")))
#else
#define SCS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum scs_status {
  SCS_OK = 0,
  SCS_ERR_DOMAIN = 1,
  SCS_ERR_CONVERGENCE = 2,
  SCS_ERR_IO = 3,
  SCS_ERR_VALIDATION = 4,
  SCS_ERR_INVALID_ARGUMENT = 5,
  SCS_ERR_INTERNAL = 99
} scs_status;

typedef enum scs_model { SCS_MODEL_CONVENTIONAL = 0, SCS_MODEL_RATIONAL = 1 } scs_model;

typedef enum scs_norm_method { SCS_NORM_DIRECT_SUM = 0, SCS_NORM_CLOSED_FORM = 1 } scs_norm_method;

typedef enum scs_format { SCS_FORMAT_CSV = 0, SCS_FORMAT_PGM = 1 } scs_format;

typedef struct scs_params {
  double alpha;
  double beta;
} scs_params;

/* kind is 1..4; sigma is read for GCS4 only. */
typedef struct scs_gcs {
  int kind;
  double sigma;
  double alpha_tilde;
} scs_gcs;

typedef struct scs_stats_report {
  double z;
  double g2;
  double mandel_q;
  double mean_photon;
  double metric_factor;
} scs_stats_report;

typedef struct scs_eigen_row {
  int n;
  double energy;
  double norm_printed;      /* closed form as printed */
  double norm_quadrature;   /* 1 / sqrt(int psi_unnormalized^2) */
  double norm_ratio;        /* quadrature / printed */
  int closed_form_confirmed;
  double schrodinger_residual;
} scs_eigen_row;

typedef struct scs_grid {
  int x_points;
  int t_points;
  double t_max;
  double margin;
} scs_grid;

typedef struct scs_system scs_system;
typedef struct scs_state scs_state;
typedef struct scs_carpet scs_carpet;

SCS_API const char* scs_version(void);
SCS_API const char* scs_last_error(void);
SCS_API const char* scs_status_name(scs_status status);

/* ---- eigensystem ---- */

/* Prepares levels 0..max_level with a quadrature-verified normalization. */
SCS_API scs_status scs_system_create(scs_model model, scs_params params, int max_level,
                                     scs_system** out);
SCS_API void scs_system_destroy(scs_system* system);

SCS_API scs_status scs_energy(scs_params params, int n, double* out);
SCS_API scs_status scs_potential(scs_model model, scs_params params, double x, double* out);
SCS_API scs_status scs_superpotential(scs_model model, scs_params params, double x, double* out);
SCS_API scs_status scs_shape_invariance_residual(scs_model model, scs_params params, double x,
                                                 double* out);
SCS_API scs_status scs_eigenfunction(const scs_system* system, int n, double x, double* out);

/* Energy, normalization audit and Schrodinger residual for level n
 * (residual on grid_points samples with the given wall margin). */
SCS_API scs_status scs_eigen_row_get(const scs_system* system, int n, int grid_points,
                                     double margin, scs_eigen_row* out);

/* ---- coherent states ---- */

SCS_API scs_status scs_normalization(scs_gcs gcs, scs_params params, double z,
                                     scs_norm_method method, double* out);
SCS_API scs_status scs_stats(scs_gcs gcs, scs_params params, double z, scs_stats_report* out);

/* Writes P_0..P_n_max into out (length n_max + 1). */
SCS_API scs_status scs_distribution(scs_gcs gcs, scs_params params, double zeta_abs, int n_max,
                                    double* out, size_t out_len);

/* fixed_n_max < 0 selects the adaptive tail policy (at least min_n_max levels);
 * otherwise exactly levels 0..fixed_n_max, renormalized. */
SCS_API scs_status scs_state_create(scs_gcs gcs, scs_params params, double zeta_abs,
                                    double zeta_phase, int min_n_max, int fixed_n_max,
                                    scs_state** out);
SCS_API void scs_state_destroy(scs_state* state);
SCS_API scs_status scs_state_info(const scs_state* state, int* n_max, double* tail_bound,
                                  double* norm_sq);
SCS_API scs_status scs_autocorrelation(const scs_state* state, double t, double* re, double* im);
SCS_API scs_status scs_evolve(const scs_state* state, scs_model model, double x, double t,
                              double* re, double* im);

/* ---- carpets ---- */

SCS_API scs_status scs_carpet_create(const scs_state* state, scs_model model, scs_grid grid,
                                     unsigned threads, scs_carpet** out);
SCS_API void scs_carpet_destroy(scs_carpet* carpet);
SCS_API scs_status scs_carpet_density(const scs_carpet* carpet, double* out, size_t out_len);
SCS_API scs_status scs_carpet_slice_norms(const scs_carpet* carpet, double* out, size_t out_len);
SCS_API scs_status scs_carpet_export(const scs_carpet* carpet, scs_format format, const char* path,
                                     const char* description);

/* ---- validation ---- */

typedef void (*scs_criterion_callback)(void* user, int id, const char* name, int passed,
                                       const char* detail, double seconds);

/* Runs every built-in check; *all_passed is 1 when each one passes. */
SCS_API scs_status scs_validate(unsigned threads, scs_criterion_callback callback, void* user,
                                int* all_passed);

#ifdef __cplusplus
}
#endif

#endif /* SCARFCS_H */
