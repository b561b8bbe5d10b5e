#ifndef IVREPR_H
#define IVREPR_H

/*
 * ivrepr - forward-starting implied volatility and the implied-variance
 * representation for local volatility models.
 *
 * C interface to the ivrepr core. All objects are opaque handles created
 * and destroyed through this API; every function that can fail returns an
 * ivr_status and leaves a human-readable message retrievable through
 * ivr_last_error() (thread-local).
 *
 * Conventions: zero rates and dividends, calls only. Volatilities are
 * annualized, times in years, prices in currency units.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define IVR_API __declspec(dllexport)
#else
#  define IVR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef int32_t ivr_status;

enum {
  IVR_OK = 0,
  IVR_ERR_INVALID_ARGUMENT = 1, /* bad handle, non-finite input, violated precondition */
  IVR_ERR_DOMAIN = 2,           /* input outside the mathematical domain (e.g. price bounds) */
  IVR_ERR_CONFIG = 3,           /* scenario config unreadable or schema-invalid */
  IVR_ERR_NUMERICAL = 4,        /* solver failure, grid too narrow, bracket violation */
  IVR_ERR_TOLERANCE = 5,        /* verification ran but a residual exceeds its tolerance */
  IVR_ERR_IO = 6                /* artifact read/write failure */
};

/* Message describing the most recent failure on this thread. */
IVR_API const char* ivr_last_error(void);

IVR_API const char* ivr_version(void);

/* ------------------------------------------------------------------ */
/* Black-Scholes analytics (zero rates, calls)                        */
/* ------------------------------------------------------------------ */

/* Price of a call with remaining time tau; tau = 0 or vol = 0 gives intrinsic. */
IVR_API ivr_status ivr_bs_price(double spot, double tau, double vol,
                                double strike, double* out);

/* Gamma and vega require tau > 0 and vol > 0 (degenerate limits rejected). */
IVR_API ivr_status ivr_bs_gamma(double spot, double tau, double vol,
                                double strike, double* out);
IVR_API ivr_status ivr_bs_vega(double spot, double tau, double vol,
                               double strike, double* out);

/* Valuation-equation residual dC/dt + (1/2) vol^2 S^2 d2C/dS2, closed form. */
IVR_API ivr_status ivr_bs_theta_residual(double spot, double tau, double vol,
                                         double strike, double* out);

/* Inverts the call price; price must lie strictly between intrinsic and spot. */
IVR_API ivr_status ivr_bs_implied_vol(double price, double spot, double tau,
                                      double strike, double* out);

/* ------------------------------------------------------------------ */
/* Local volatility surfaces                                           */
/* ------------------------------------------------------------------ */

typedef struct ivr_surface ivr_surface;

IVR_API ivr_status ivr_surface_create_constant(double sigma, ivr_surface** out);

/* Piecewise-constant in time: sigma[i] applies on [times[i], times[i+1]),
 * the last value extends to infinity. times[0] must be 0. */
IVR_API ivr_status ivr_surface_create_time_dependent(const double* times,
                                                     const double* sigmas,
                                                     int32_t n,
                                                     ivr_surface** out);

/* sigma(t,S) = alpha * S^(beta-1). */
IVR_API ivr_status ivr_surface_create_cev(double alpha, double beta,
                                          ivr_surface** out);

/* Bilinear table on (t, log S) loaded from CSV with header "t,logS,sigma". */
IVR_API ivr_status ivr_surface_create_tabulated_csv(const char* path,
                                                    ivr_surface** out);

IVR_API ivr_status ivr_surface_vol(const ivr_surface* s, double t, double spot,
                                   double* out);

IVR_API void ivr_surface_free(ivr_surface* s);

/* ------------------------------------------------------------------ */
/* Forward (Fokker-Planck) density                                     */
/* ------------------------------------------------------------------ */

typedef struct ivr_density ivr_density;

/* Solves the forward Kolmogorov equation for the marginal densities of the
 * driftless diffusion dS/S = sigma(t,S) dW started at spot.
 * time_steps >= 2, space_nodes >= 4, width > 0 (log-space half-width in
 * units of the reference volatility times sqrt(maturity)). */
IVR_API ivr_status ivr_density_solve(const ivr_surface* s, double spot,
                                     double maturity, int32_t time_steps,
                                     int32_t space_nodes, double width,
                                     ivr_density** out);

IVR_API int32_t ivr_density_time_count(const ivr_density* d);
IVR_API int32_t ivr_density_space_count(const ivr_density* d);
IVR_API ivr_status ivr_density_time_node(const ivr_density* d, int32_t i,
                                         double* out);
IVR_API ivr_status ivr_density_spot_node(const ivr_density* d, int32_t j,
                                         double* out);

/* Density of S_{t_i} at spot node j, per unit of S. */
IVR_API ivr_status ivr_density_value(const ivr_density* d, int32_t i,
                                     int32_t j, double* out);

/* Call price C(K,T) by quadrature against the terminal density. */
IVR_API ivr_status ivr_density_call_price(const ivr_density* d, double strike,
                                          double* out);

IVR_API void ivr_density_free(ivr_density* d);

/* ------------------------------------------------------------------ */
/* Forward-starting implied volatility curve                           */
/* ------------------------------------------------------------------ */

typedef struct ivr_curve ivr_curve;

/* Solves E[C_BS(t, S_t, K, T; sigma_bar(t))] = C(K,T) on every time node
 * in [0, T - dt]. */
IVR_API ivr_status ivr_curve_build(const ivr_density* d, double strike,
                                   ivr_curve** out);

IVR_API int32_t ivr_curve_size(const ivr_curve* c);
IVR_API ivr_status ivr_curve_node(const ivr_curve* c, int32_t i, double* t,
                                  double* sigma_bar, double* residual);
IVR_API ivr_status ivr_curve_target_price(const ivr_curve* c, double* out);

IVR_API void ivr_curve_free(ivr_curve* c);

/* ------------------------------------------------------------------ */
/* Monte Carlo                                                         */
/* ------------------------------------------------------------------ */

/* Log-Euler call price estimate; deterministic for a given seed and
 * independent of internal sharding. */
IVR_API ivr_status ivr_mc_call_price(const ivr_surface* s, double spot,
                                     double strike, double maturity,
                                     int64_t paths, int32_t steps,
                                     uint64_t seed, double* price,
                                     double* std_error);

/* Price under the state-switching model: local-vol dynamics to tau, then
 * Black-Scholes with volatility sigma_tau, priced by conditioning. */
IVR_API ivr_status ivr_switch_price(const ivr_surface* s, double spot,
                                    double strike, double maturity, double tau,
                                    double sigma_tau, int64_t paths,
                                    int32_t steps, uint64_t seed, double* price,
                                    double* std_error);

/* ------------------------------------------------------------------ */
/* Full verification and the scenario runner                           */
/* ------------------------------------------------------------------ */

/* Runs the end-to-end representation check (density -> curve -> forward
 * variance two ways -> implied variance) and returns the report as a
 * JSON string allocated with malloc; free it with ivr_string_free.
 * Returns IVR_ERR_TOLERANCE if the report fails its tolerances. */
IVR_API ivr_status ivr_verify(const ivr_surface* s, double spot, double strike,
                              double maturity, int32_t time_steps,
                              int32_t space_nodes, double width,
                              char** report_json);

IVR_API void ivr_string_free(char* s);

/* Executes one CLI command ("price", "curve", "verify", "mlp", "switch")
 * against a scenario config file, writing artifacts to out_dir (or to the
 * directory named in the config when out_dir is NULL). */
IVR_API ivr_status ivr_run(const char* command, const char* config_path,
                           const char* out_dir);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* IVREPR_H */
