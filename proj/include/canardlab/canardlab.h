#ifndef CANARDLAB_CANARDLAB_H
#define CANARDLAB_CANARDLAB_H

/*
 * C interface to canardlab.
 *
 * Every fallible call returns a cl_status.  On failure the message of the
 * most recent error on the calling thread is available from
 * cl_last_error_message() until the next failing call on that thread.
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function; passing NULL to a *_free function is a no-op.
 */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(CANARDLAB_BUILDING)
#    define CL_API __declspec(dllexport)
#  else
#    define CL_API __declspec(dllimport)
#  endif
#else
#  define CL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cl_status {
    CL_OK = 0,
    CL_ERR_INVALID_ARGUMENT = 1,
    CL_ERR_VALIDATION = 2,
    CL_ERR_DOMAIN = 3,
    CL_ERR_PARSE = 4,
    CL_ERR_NUMERICAL = 5,
    CL_ERR_NO_CROSSING = 6,
    CL_ERR_NOT_CONVERGED = 7,
    CL_ERR_GEOMETRY = 8,
    CL_ERR_BLOWUP = 9,
    CL_ERR_IO = 10,
    CL_ERR_INTERNAL = 11
} cl_status;

CL_API const char* cl_version(void);
CL_API const char* cl_status_string(cl_status status);
CL_API const char* cl_last_error_message(void);

/* ---- model ------------------------------------------------------------ */

typedef struct cl_params {
    double a;
    double e1;
    double e2;
    double eps;
} cl_params;

typedef struct cl_raw_params {
    double r1, r2, a1, a2, b1, k1, k2;
} cl_raw_params;

#define CL_DEFAULT_MARGIN 0.10
#define CL_MAX_CHECKS 4

typedef struct cl_check {
    char name[64];
    int passed;
    double lhs;
    double rhs;
    double slack;
} cl_check;

typedef struct cl_validation {
    double margin;
    int passed;
    int has_u_star;
    double u_star;
    int n_checks;
    cl_check checks[CL_MAX_CHECKS];
} cl_validation;

/* Checks positivity and e1 < 1 (not the regime assumptions). */
CL_API cl_status cl_params_check(const cl_params* p);
CL_API cl_status cl_nondimensionalize(const cl_raw_params* raw, cl_params* out);
CL_API cl_status cl_vector_field(const cl_params* p, double u, double v, double out[2]);
CL_API cl_status cl_nullcline_g(const cl_params* p, double u, double* out);
CL_API cl_status cl_interior_equilibrium(const cl_params* p, double margin, double* u_star);
/* out = {P1u, P1v, P2u, P2v, P3u, P3v, P4u, P4v} */
CL_API cl_status cl_fixed_points(const cl_params* p, double margin, double out[8]);
CL_API cl_status cl_validate(const cl_params* p, double margin, cl_validation* out);

/*
 * Human-readable validation report.  Copies at most cap - 1 bytes plus a
 * terminator into buf; *needed (if non-NULL) receives the full length.
 */
CL_API cl_status cl_validation_text(const cl_params* p, double margin, char* buf, size_t cap, size_t* needed);

/* ---- text-defined systems --------------------------------------------- */

typedef struct cl_system cl_system;

CL_API cl_status cl_system_parse(const char* text, cl_system** out);
CL_API cl_status cl_system_load(const char* path, cl_system** out);
CL_API cl_status cl_system_leslie_gower(const cl_params* p, cl_system** out);
CL_API void cl_system_free(cl_system* s);

CL_API cl_status cl_system_field(const cl_system* s, double u, double v, double out[2]);
/* Partial derivatives of the fast equation by forward-mode AD. */
CL_API cl_status cl_system_jacobian_fast(const cl_system* s, double u, double v, double* df_du, double* df_dv);
CL_API cl_status cl_system_epsilon(const cl_system* s, double* eps);
/* Fails with CL_ERR_INVALID_ARGUMENT unless the system declares a, e1 and e2. */
CL_API cl_status cl_system_model_params(const cl_system* s, cl_params* out);

/* ---- integration ------------------------------------------------------ */

typedef struct cl_integrator_config {
    double rtol;
    double atol_u;
    double atol_v;
    double max_step;      /* <= 0 or inf means unbounded */
    long long max_steps;
} cl_integrator_config;

CL_API cl_integrator_config cl_integrator_default(void);

typedef enum cl_coordinates {
    CL_COORDS_PLAIN = 0, /* (u, v) with the quadrant guard */
    CL_COORDS_LOG_PREY = 1 /* (ln u, v); requires u0 > 0 */
} cl_coordinates;

typedef struct cl_trajectory cl_trajectory;

CL_API cl_status cl_simulate(const cl_params* p, double u0, double v0, double t0, double t1,
                             const cl_integrator_config* cfg, cl_coordinates coords, cl_trajectory** out);
CL_API cl_status cl_system_simulate(const cl_system* s, double u0, double v0, double t0, double t1,
                                    const cl_integrator_config* cfg, cl_trajectory** out);
CL_API void cl_trajectory_free(cl_trajectory* tr);
CL_API size_t cl_trajectory_size(const cl_trajectory* tr);
CL_API cl_status cl_trajectory_sample(const cl_trajectory* tr, size_t i, double* t, double* u, double* v);
/* Dense evaluation in (u, v) anywhere in the integrated span. */
CL_API cl_status cl_trajectory_eval(const cl_trajectory* tr, double t, double out[2]);
CL_API cl_status cl_trajectory_write_csv(const cl_trajectory* tr, const char* path);

/* ---- critical manifold ------------------------------------------------ */

typedef enum cl_stability { CL_ATTRACTIVE = 0, CL_REPULSIVE = 1, CL_FOLD = 2 } cl_stability;
typedef enum cl_branch { CL_BRANCH_AXIS = 0, CL_BRANCH_PARABOLA = 1 } cl_branch;

typedef struct cl_classification {
    double u;
    double v;
    double fprime_u;        /* automatic differentiation */
    double fprime_u_closed; /* closed form for the branch */
    cl_branch branch;
    cl_stability tag;
} cl_classification;

/* system may be NULL, which selects the built-in Leslie-Gower system. */
CL_API cl_status cl_classify(const cl_params* p, const cl_system* system, double u, double v,
                             cl_classification* out);
/* out = {Bu, Bv, Du, Dv} */
CL_API cl_status cl_fold_points(const cl_params* p, double out[4]);

typedef struct cl_manifold cl_manifold;

CL_API cl_status cl_manifold_sample(const cl_params* p, const cl_system* system, int n_per_branch, double v_max,
                                    cl_manifold** out);
CL_API void cl_manifold_free(cl_manifold* m);
CL_API size_t cl_manifold_size(const cl_manifold* m);
CL_API cl_status cl_manifold_get(const cl_manifold* m, size_t i, cl_classification* out);
CL_API cl_status cl_manifold_write_csv(const cl_manifold* m, const char* path);

/* ---- singular cycle --------------------------------------------------- */

typedef struct cl_singular_cycle cl_singular_cycle;

typedef struct cl_singular_cycle_info {
    double a_vertex[2];
    double b_vertex[2];
    double c_vertex[2];
    double d_vertex[2];
    double alpha;
    double k;
    double c1;
    double c2;
    double fiber_level;
    double u_star;
    size_t n_points; /* points of the closed polyline */
} cl_singular_cycle_info;

CL_API cl_status cl_singular_cycle_build(const cl_params* p, double alpha, double k, int arc_samples,
                                         cl_singular_cycle** out);
CL_API void cl_singular_cycle_free(cl_singular_cycle* sc);
CL_API cl_status cl_singular_cycle_info_get(const cl_singular_cycle* sc, cl_singular_cycle_info* out);
/* Writes 2 * n_points doubles (u0, v0, u1, v1, ...). */
CL_API cl_status cl_singular_cycle_points(const cl_singular_cycle* sc, double* uv, size_t cap_points);
CL_API cl_status cl_singular_cycle_write_csv(const cl_singular_cycle* sc, const char* path);

/* ---- blow-up ---------------------------------------------------------- */

typedef struct cl_blowup_constants {
    double c1;
    double c2;
} cl_blowup_constants;

typedef enum cl_local_order { CL_ORDER_SECOND = 0, CL_ORDER_FULL = 1 } cl_local_order;

CL_API cl_status cl_blowup_constants_get(const cl_params* p, cl_blowup_constants* out);
CL_API cl_status cl_k2_field(const cl_params* p, double x2, double y2, double r2, cl_local_order order,
                             double out[2]);
CL_API cl_status cl_k2_exact(const cl_params* p, double x2_0, double y2_0, double t, double out[2]);
CL_API cl_status cl_k2_blowup_time(const cl_params* p, double x2_0, double* t_star);
CL_API cl_status cl_exit_value(const cl_params* p, double x2_0, double y2_0, double* out);
CL_API cl_status cl_predict_fiber(const cl_params* p, double k, double alpha, double* v_exit);

typedef struct cl_k2_options {
    double r2;
    cl_local_order order;
    double x2_max;
    cl_integrator_config integrator;
} cl_k2_options;

CL_API cl_k2_options cl_k2_options_default(void);

typedef struct cl_k2_family cl_k2_family;

typedef struct cl_k2_orbit_info {
    double x2_0;
    double y2_0;
    double t_star;
    size_t n_points;
} cl_k2_orbit_info;

CL_API cl_status cl_k2_family_compute(const cl_params* p, const double* x2_starts, size_t n_starts, double y2_0,
                                      const cl_k2_options* opt, cl_k2_family** out);
CL_API void cl_k2_family_free(cl_k2_family* f);
CL_API size_t cl_k2_family_size(const cl_k2_family* f);
CL_API cl_status cl_k2_orbit_info_get(const cl_k2_family* f, size_t orbit, cl_k2_orbit_info* out);
CL_API cl_status cl_k2_orbit_point(const cl_k2_family* f, size_t orbit, size_t i, double* t, double* x2,
                                   double* y2);
CL_API cl_status cl_k2_family_write_csv(const cl_k2_family* f, const char* path);

/* ---- limit cycles ----------------------------------------------------- */

typedef struct cl_cycle_config {
    cl_integrator_config integrator; /* atol_u applies to ln u */
    double tolerance;
    int max_returns;
    size_t min_samples;
    double return_horizon;
} cl_cycle_config;

CL_API cl_cycle_config cl_cycle_config_default(void);

typedef struct cl_cycle cl_cycle;

typedef struct cl_cycle_summary {
    double eps;
    double alpha;
    double period;
    double section_level;
    double ln_u_cross;
    double u_cross;
    double k_hat;     /* u_cross / eps */
    double ln_k_hat;
    double v_fiber;
    double descent;   /* e1/a - v_fiber */
    double k_fiber;   /* -c2 / (c1 descent) */
    int returns;
    size_t n_samples;
    size_t n_separations;
} cl_cycle_summary;

CL_API cl_status cl_cycle_find(const cl_params* p, double alpha, const cl_cycle_config* cfg, cl_cycle** out);
CL_API void cl_cycle_free(cl_cycle* c);
CL_API cl_status cl_cycle_summary_get(const cl_cycle* c, cl_cycle_summary* out);
CL_API cl_status cl_cycle_sample(const cl_cycle* c, size_t i, double* t, double* u, double* v, double* ln_u);
CL_API cl_status cl_cycle_separation(const cl_cycle* c, size_t i, double* out);
CL_API cl_status cl_cycle_canard_arc_extent(const cl_cycle* c, double ln_u_threshold, double v_low, double v_high,
                                            double* out);
CL_API cl_status cl_cycle_write_csv(const cl_cycle* c, const char* path);

/* First return of (ln u, v) to the downward section v = e1/a + alpha. */
CL_API cl_status cl_poincare_map(const cl_params* p, double alpha, double ln_u, double v, const cl_cycle_config* cfg,
                                 double out[2], double* return_time);

/* Symmetric Hausdorff distance between polylines given as (u, v) pairs. */
CL_API cl_status cl_hausdorff(const double* a_uv, size_t n_a, const double* b_uv, size_t n_b, double* out);

/* ---- convergence sweep ------------------------------------------------ */

typedef struct cl_sweep cl_sweep;

typedef struct cl_sweep_options {
    cl_cycle_config cycle;
    int parallel;
    double hausdorff_spacing;
} cl_sweep_options;

CL_API cl_sweep_options cl_sweep_options_default(void);

typedef struct cl_sweep_row {
    double eps;
    double distance;
    double k_hat;
    double ln_k_hat;
    double descent;
    double k_fiber;
    double period;
} cl_sweep_row;

typedef struct cl_sweep_summary {
    double alpha;
    double reference_k;
    double slope;
    int distances_decreasing;
    int slope_in_band;
    int slope_flagged;
    size_t n_rows;
} cl_sweep_summary;

CL_API cl_status cl_sweep_run(const cl_params* p, double alpha, const double* eps_list, size_t n_eps,
                              const cl_sweep_options* opt, cl_sweep** out);
CL_API void cl_sweep_free(cl_sweep* s);
CL_API cl_status cl_sweep_summary_get(const cl_sweep* s, cl_sweep_summary* out);
CL_API cl_status cl_sweep_row_get(const cl_sweep* s, size_t i, cl_sweep_row* out);
CL_API cl_status cl_sweep_write_csv(const cl_sweep* s, const char* path);
CL_API cl_status cl_sweep_write_json(const cl_sweep* s, const char* path);
/* The reference singular cycle used for the distances. */
CL_API cl_status cl_sweep_reference(const cl_sweep* s, cl_singular_cycle** out);

#ifdef __cplusplus
}
#endif

#endif
