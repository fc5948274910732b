#ifndef BOHRWAVE_BOHRWAVE_H
#define BOHRWAVE_BOHRWAVE_H

#include <stddef.h>

#if defined(BOHRWAVE_BUILDING_LIBRARY)
#define BW_API __attribute__((visibility("default")))
#else
#define BW_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Every fallible call returns one; bw_last_error() holds the message. */
typedef enum bw_status {
    BW_OK = 0,
    BW_ERR_INVALID_ARGUMENT = 1,
    BW_ERR_DOMAIN = 2,
    BW_ERR_ACCURACY = 3,
    BW_ERR_OVERFLOW = 4,
    BW_ERR_SUPERLUMINAL = 5,
    BW_ERR_UNPHYSICAL_AMPLITUDE = 6,
    BW_ERR_ZERO_CHARGE = 7,
    BW_ERR_SUPERCRITICAL_CHARGE = 8,
    BW_ERR_EVANESCENT_REGIME = 9,
    BW_ERR_UNMATCHED_PARITY = 10,
    BW_ERR_NODE_ON_ORBIT = 11,
    BW_ERR_UNDEFINED_POTENTIAL = 12,
    BW_ERR_SINGULARITY = 13,
    BW_ERR_INTEGRATION_FAILURE = 14,
    BW_ERR_GUIDANCE_SINGULARITY = 15,
    BW_ERR_USAGE = 16,
    BW_ERR_INTERNAL = 99
} bw_status;

typedef struct bw_orbit bw_orbit;
typedef struct bw_curves bw_curves;
typedef struct bw_grid bw_grid;
typedef struct bw_trajectory bw_trajectory;
typedef struct bw_report bw_report;

/* Model parameters; natural units c = hbar = 1. */
typedef struct bw_params {
    double alpha;
    double b;
    double xi_charge;   /* beta = xi_charge * alpha */
    double omega0;
    double m_eff;
    int has_particle;   /* nonzero: m_eff follows from (m_p, sigma, omega_p) per orbit */
    double m_p;
    double sigma;
    double omega_p;
    const char* alpha_exact; /* optional "p/q" or decimal; overrides alpha */
    const char* b_exact;     /* optional; overrides b */
    int require_positive_frequencies;
} bw_params;

typedef struct bw_orbit_values {
    double n, N, m_plus, m_minus;
    double v, r, P, E;
    double omega_plus, omega_minus, k_plus, k_minus, epsilon;
    double Omega_p;
    int has_z0_mod2;
    double z0_mod2;
    int selection_ok;
    double selection_residual;
    double m_eff, s, a0;
    double lagrangian, period;
} bw_orbit_values;

typedef struct bw_state {
    double t;
    double pos[3];
    double vel[3];
    double tau;
    double z_phase;
    double action;
} bw_state;

typedef struct bw_integrate_options {
    double periods;
    double tol;
    double omega_p_scale;      /* multiplies the phase-harmonized Omega_p */
    int samples_per_period;    /* 0 records every accepted step */
    double radius_scale;       /* start at radius_scale * r_n with the circular speed */
    double u0;                 /* field amplitude at the particle; <= 0 selects |z0| or 1 */
} bw_integrate_options;

typedef struct bw_trajectory_summary {
    double radius_deviation;
    double mean_radius_drift;
    double energy_drift;
    double angular_momentum_drift;
    double action_per_period;
    double clock_ratio;
    int has_constraint;
    double constraint_abs;
    double constraint_phase;
    double constraint_slope;
    long accepted_steps;
    long rejected_steps;
} bw_trajectory_summary;

typedef struct bw_curves_summary {
    double delta;
    double u0;
    int undersampled;
    double closure;
    int total_zero_count;
    int phase_zero_count;
    int envelope_zero_count;
    double expected_phase_zero_count;
    double expected_envelope_zero_count;
} bw_curves_summary;

typedef struct bw_grid_summary {
    int grid_n;
    int plane;          /* 0 equatorial, 1 meridian */
    double extent;      /* half-width, units of a0 */
    double cell;
    double a0;
    double r_orbit;     /* units of a0 */
    size_t argmax;
    double argmax_x;
    double argmax_y;
    double radial_argmax;
} bw_grid_summary;

typedef struct bw_check_config {
    bw_params params;
    const double* n_values;
    size_t n_count;
    int strict_selection;
    int asymptotic_l_max;
} bw_check_config;

typedef struct bw_check_item {
    const char* name;
    const char* identity;
    double measured;
    double threshold;
    int passed;
    const char* detail;
} bw_check_item;

BW_API const char* bw_version(void);
BW_API const char* bw_status_name(bw_status status);
/* Message of the last failure on the calling thread; empty after success. */
BW_API const char* bw_last_error(void);

BW_API void bw_params_default(bw_params* params);
BW_API double bw_positive_frequency_alpha_bound(void);

/* Orbits */
BW_API bw_status bw_orbit_solve(const bw_params* params, double n, bw_orbit** out);
BW_API void bw_orbit_free(bw_orbit* orbit);
BW_API bw_status bw_orbit_get(const bw_orbit* orbit, bw_orbit_values* out);

/* Exact mode numbers b m_pm = n^2/alpha +- n as reduced fractions "p/q". */
BW_API bw_status bw_mode_numbers_exact(const char* alpha, const char* b, const char* n, char* m_plus,
                                       size_t m_plus_size, char* m_minus, size_t m_minus_size, int* integer);
/* Exact decimal expansion of a rational "p/q"; repeating expansions stay as "p/q". */
BW_API bw_status bw_rational_to_decimal(const char* value, char* out, size_t out_size);
BW_API bw_status bw_fine_structure_from_modes(double m_plus, double m_minus, double b, double* alpha);
BW_API bw_status bw_selection_rule(const bw_params* params, double n, double tol, int* ok, double* residual);
BW_API bw_status bw_effective_mass(double m_p, double sigma, double omega_p, double z0_mod, double* out);

/* Fields */
BW_API bw_status bw_field_on_orbit(const bw_orbit* orbit, double u0, double t, double phi, double* re, double* im);
BW_API bw_status bw_pair_eval(const bw_orbit* orbit, double u0, double t, double r, double theta, double phi,
                              double* re, double* im);
/* sign: +1 or -1. h is the finite-difference step. */
BW_API bw_status bw_quantum_potential(const bw_orbit* orbit, int sign, double h, double* measured, double* predicted);
BW_API bw_status bw_bohmian_velocity(const bw_orbit* orbit, double t, double r, double theta, double phi,
                                     double velocity[3]);
BW_API bw_status bw_radial(int l, double omega, double beta, double omega0, double r, double* out);
BW_API bw_status bw_kummer_m(double a_re, double a_im, double b_re, double b_im, double z_re, double z_im,
                             double* out_re, double* out_im);

/* Figure-style curves at t = 0; which: 0 total field, 1 phase wave, 2 orbit circle. */
BW_API bw_status bw_orbit_wave(const bw_orbit* orbit, double u0, double delta, int samples, bw_curves** out);
BW_API void bw_curves_free(bw_curves* curves);
BW_API size_t bw_curves_size(const bw_curves* curves);
BW_API bw_status bw_curves_point(const bw_curves* curves, int which, size_t index, double* phi, double* x, double* y);
BW_API bw_status bw_curves_summary_get(const bw_curves* curves, bw_curves_summary* out);

/* Intensity maps of the matched mode pair; plane 0 equatorial, 1 meridian. */
BW_API bw_status bw_intensity_map(const bw_orbit* orbit, int plane, double extent, int grid_n, int threads,
                                  bw_grid** out);
BW_API void bw_grid_free(bw_grid* grid);
BW_API bw_status bw_grid_summary_get(const bw_grid* grid, bw_grid_summary* out);
/* Cell centres along each axis, grid_n values, units of a0. */
BW_API const double* bw_grid_axis(const bw_grid* grid);
/* Row-major |u|^2, grid_n * grid_n values. */
BW_API const double* bw_grid_intensity(const bw_grid* grid);
/* Local maxima above fraction of the global maximum; writes up to capacity indices. */
BW_API size_t bw_grid_local_maxima(const bw_grid* grid, double fraction, size_t* indices, size_t capacity);

/* Trajectories from the circular initial state of an orbit. On integration
   failure the partial trajectory is still returned through out. */
BW_API void bw_integrate_options_default(bw_integrate_options* options);
BW_API bw_status bw_integrate(const bw_orbit* orbit, const bw_integrate_options* options, bw_trajectory** out);
BW_API void bw_trajectory_free(bw_trajectory* trajectory);
BW_API size_t bw_trajectory_size(const bw_trajectory* trajectory);
BW_API bw_status bw_trajectory_sample(const bw_trajectory* trajectory, size_t index, bw_state* out);
BW_API bw_status bw_trajectory_summary_get(const bw_trajectory* trajectory, bw_trajectory_summary* out);

/* Invariant suite */
BW_API void bw_check_config_default(bw_check_config* config);
BW_API bw_status bw_run_checks(const bw_check_config* config, bw_report** out);
BW_API void bw_report_free(bw_report* report);
BW_API size_t bw_report_size(const bw_report* report);
BW_API bw_status bw_report_item(const bw_report* report, size_t index, bw_check_item* out);
BW_API int bw_report_passed(const bw_report* report);

#ifdef __cplusplus
}
#endif

#endif
