/*
   Copyright 2026 The bdec Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

/*
 * C interface to the bdec core: chaotic billiards, Benettin Lyapunov
 * exponents and semiclassical purity decay under a high-temperature bath.
 *
 * Objects are opaque handles created by bdec_*_create functions and released
 * with the matching bdec_*_destroy. Every fallible call returns a
 * bdec_status; on failure a message for the calling thread is available
 * from bdec_last_error(). Output parameters are written only on success.
 */

#ifndef BDEC_H
#define BDEC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(BDEC_BUILDING)
#    define BDEC_API __declspec(dllexport)
#  else
#    define BDEC_API __declspec(dllimport)
#  endif
#else
#  define BDEC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bdec_status {
    BDEC_OK = 0,
    BDEC_ERR_INVALID_ARGUMENT = 1, /* null pointer, bad enum, bad length */
    BDEC_ERR_GEOMETRY = 2,
    BDEC_ERR_TANGENCY = 3,
    BDEC_ERR_REFLECT = 4,
    BDEC_ERR_RANGE = 5,
    BDEC_ERR_DOMAIN = 6,
    BDEC_ERR_FIT = 7,
    BDEC_ERR_INTERNAL = 8
} bdec_status;

BDEC_API const char *bdec_status_string(bdec_status status);
/* Message of the last failure on this thread; empty string if none. */
BDEC_API const char *bdec_last_error(void);
BDEC_API const char *bdec_version(void);

/* ------------------------------------------------------------------ */
/* Geometry                                                             */

typedef struct bdec_domain bdec_domain;

BDEC_API bdec_status bdec_domain_create_rectangle(double lx, double ly, bdec_domain **out);
BDEC_API bdec_status bdec_domain_create_disk(double radius, bdec_domain **out);
BDEC_API bdec_status bdec_domain_create_stadium(double half_length, double radius, bdec_domain **out);
BDEC_API bdec_status bdec_domain_create_sinai(double side, double radius, bdec_domain **out);
BDEC_API void bdec_domain_destroy(bdec_domain *domain);

BDEC_API bdec_status bdec_domain_area(const bdec_domain *domain, double *out);
BDEC_API bdec_status bdec_domain_perimeter(const bdec_domain *domain, double *out);
BDEC_API bdec_status bdec_domain_diameter(const bdec_domain *domain, double *out);
BDEC_API bdec_status bdec_domain_centroid(const bdec_domain *domain, double *x, double *y);
BDEC_API bdec_status bdec_domain_contains(const bdec_domain *domain, double x, double y, int *out);

typedef struct bdec_collision {
    double time;
    double x, y;
    double nx, ny; /* inward unit normal */
} bdec_collision;

BDEC_API bdec_status bdec_next_collision(const bdec_domain *domain, double ox, double oy, double dx, double dy,
                                         double speed, bdec_collision *out);

/* ------------------------------------------------------------------ */
/* Physical parameters                                                  */

typedef struct bdec_constants {
    double hbar;
    double mass;
    double kB;
} bdec_constants;

typedef struct bdec_bath {
    double gamma;
    double temperature;
} bdec_bath;

typedef struct bdec_packet {
    double rx, ry;
    double px, py;
    double sigma;
} bdec_packet;

typedef struct bdec_model_params {
    double a1, a2, b1, b2, b3, beta, Lambda, tau_o, kT_over_Delta;
    int has_lyapunov;
} bdec_model_params;

typedef enum bdec_coefficients {
    BDEC_COEFFICIENTS_PUBLISHED = 0,
    BDEC_COEFFICIENTS_GAUSSIAN_AVERAGE = 1
} bdec_coefficients;

/* lambda <= 0 omits the Lyapunov groups (has_lyapunov = 0). */
BDEC_API bdec_status bdec_derived_params(const bdec_packet *packet, const bdec_bath *bath,
                                         const bdec_constants *constants, double lambda, double area, double t_o,
                                         bdec_coefficients coefficients, bdec_model_params *out);

BDEC_API bdec_status bdec_wigner_density(const bdec_packet *packet, const bdec_constants *constants, double rx,
                                         double ry, double px, double py, double *out);

/* ------------------------------------------------------------------ */
/* Closed-form purity laws (tau = gamma t)                              */

BDEC_API bdec_status bdec_purity_free_flight(double tau, double a1, double a2, double *out);
BDEC_API bdec_status bdec_purity_free_flight_gaussian(double tau, double a1, double a2, double *out);
BDEC_API bdec_status bdec_purity_ergodic(double tau, double tau_o, double kT_over_Delta, double *out);
BDEC_API bdec_status bdec_purity_lyapunov(double tau, double b1, double b2, double b3, double Lambda, double *out);
BDEC_API bdec_status bdec_purity_lyapunov_asymptotic(double tau, double beta, double Lambda, double *out);

/* ------------------------------------------------------------------ */
/* Dynamics                                                             */

typedef struct bdec_lyapunov_options {
    double speed;
    double t_max;
    double renorm_interval; /* 0: one mean free time */
    double d0;              /* 0: 1e-8 diameter */
    uint64_t ensemble;
    uint64_t seed;
    unsigned workers;
} bdec_lyapunov_options;

typedef struct bdec_lyapunov_result {
    double lambda;
    double std_error;
    double half_horizon_lambda;
    double uncertainty; /* std_error and finite-horizon drift in quadrature */
    uint64_t ensemble_size;
    double horizon;
    uint64_t resampled;
    int converged;
} bdec_lyapunov_result;

BDEC_API void bdec_lyapunov_options_init(bdec_lyapunov_options *opts);
BDEC_API bdec_status bdec_lyapunov(const bdec_domain *domain, const bdec_lyapunov_options *opts,
                                   bdec_lyapunov_result *out);

BDEC_API bdec_status bdec_mean_free_time(const bdec_domain *domain, double speed, uint64_t ensemble, double t_max,
                                         uint64_t seed, unsigned workers, double *value, double *std_error);

/* ------------------------------------------------------------------ */
/* Purity series                                                        */

typedef struct bdec_series bdec_series;

typedef enum bdec_separation_model {
    BDEC_SEPARATION_FREE_FLIGHT = 0,
    BDEC_SEPARATION_LYAPUNOV = 1,
    BDEC_SEPARATION_ERGODIC = 2
} bdec_separation_model;

typedef enum bdec_gaussian_average {
    BDEC_AVERAGE_NUMERICAL = 0,
    BDEC_AVERAGE_DETERMINANT = 1
} bdec_gaussian_average;

typedef struct bdec_mc_options {
    uint64_t n_pairs;
    uint64_t seed;
    unsigned workers;
} bdec_mc_options;

typedef struct bdec_series_info {
    size_t size;
    uint64_t n_pairs;
    uint64_t draws;
    uint64_t rejected_draws;
    uint64_t tangency_resamples;
    int underflow;
    int rejection_warning;
    const char *provenance; /* owned by the series */
} bdec_series_info;

/* times are physical times, sorted and non-negative. */
BDEC_API bdec_status bdec_purity_mc(const bdec_domain *domain, const bdec_packet *packet, const bdec_bath *bath,
                                    const bdec_constants *constants, const double *times, size_t n_times,
                                    const bdec_mc_options *opts, bdec_series **out);

/* model_param: lambda for LYAPUNOV, <(dq)^2> for ERGODIC, ignored otherwise.
   t_o: start of decay for ERGODIC, ignored otherwise. */
BDEC_API bdec_status bdec_purity_quadrature(bdec_separation_model model, double model_param, double t_o,
                                            const bdec_packet *packet, const bdec_bath *bath,
                                            const bdec_constants *constants, const double *times, size_t n_times,
                                            bdec_gaussian_average method, bdec_series **out);

BDEC_API void bdec_series_destroy(bdec_series *series);
BDEC_API bdec_status bdec_series_info_get(const bdec_series *series, bdec_series_info *out);
BDEC_API bdec_status bdec_series_point(const bdec_series *series, size_t index, double *t, double *tau,
                                       double *purity, double *std_error);

/* ------------------------------------------------------------------ */
/* Analysis                                                             */

typedef struct bdec_rate_fit {
    double rate;
    double intercept;
    double tau_lo, tau_hi;
    double residual_rms;
    uint64_t n_points;
    double rate_early, rate_late; /* NaN with fewer than ten points */
    double instability;
} bdec_rate_fit;

/* Null window selects the automatic window. */
BDEC_API bdec_status bdec_fit_rate(const bdec_series *series, const double *tau_window, bdec_rate_fit *out);

typedef struct bdec_sweep bdec_sweep;

typedef struct bdec_sweep_row {
    double gamma;
    double temperature;
    double kappa;
    double rate_tau;
    double rate_t;
    double lambda;
    double ratio;
    int ok;
    double instability;
    const char *status; /* owned by the sweep */
} bdec_sweep_row;

/* time_window: null, or {t_lo, t_hi} in physical time. */
BDEC_API bdec_status bdec_bath_sweep(const bdec_domain *domain, const bdec_packet *packet,
                                     const bdec_constants *constants, const double *gammas, size_t n_gammas,
                                     const double *temperatures, size_t n_temperatures, const double *times,
                                     size_t n_times, const bdec_mc_options *mc, const bdec_lyapunov_options *lyapunov,
                                     const double *time_window, bdec_sweep **out);
BDEC_API void bdec_sweep_destroy(bdec_sweep *sweep);
BDEC_API size_t bdec_sweep_size(const bdec_sweep *sweep);
BDEC_API bdec_status bdec_sweep_row_get(const bdec_sweep *sweep, size_t index, bdec_sweep_row *out);
BDEC_API bdec_status bdec_sweep_lyapunov(const bdec_sweep *sweep, bdec_lyapunov_result *out);
/* max/min rate over successful rows; NaN with fewer than two. */
BDEC_API bdec_status bdec_sweep_spread(const bdec_sweep *sweep, double *out);

BDEC_API bdec_status bdec_ergodic_average_analytic(const bdec_domain *domain, double *out);
BDEC_API bdec_status bdec_ergodic_average_mc(const bdec_domain *domain, uint64_t n_pairs, uint64_t seed,
                                             unsigned workers, double *value, double *std_error);

#ifdef __cplusplus
}
#endif

#endif /* BDEC_H */
