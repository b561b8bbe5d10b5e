#pragma once

#include <cmath>

#include "normal.hpp"

namespace ivrepr {

// European call: strike and maturity (years). Rates and dividends are zero
// throughout the library, so the forward equals the spot.
struct CallSpec {
    double strike = 0.0;
    double maturity = 0.0;
};

// Market state for Black-Scholes valuation: spot, remaining time tau = T - t,
// and the (annualized) volatility parameter.
struct BsQuote {
    double spot = 0.0;
    double tau = 0.0;
    double vol = 0.0;
};

namespace bs {

// Call value from log-spot x = ln S, with sv = vol * sqrt(tau) > 0.
// Hot path for quadratures: the caller precomputes x and ln K.
inline double call_from_logspot(double x, double spot, double log_strike,
                                double strike, double sv) {
    const double d1 = (x - log_strike) / sv + 0.5 * sv;
    const double d2 = d1 - sv;
    double p = spot * norm_cdf(d1) - strike * norm_cdf(d2);
    const double intrinsic = spot > strike ? spot - strike : 0.0;
    return p > intrinsic ? p : intrinsic;
}

// Call price; tau = 0 or vol = 0 degenerates to intrinsic value.
double price(const BsQuote& q, const CallSpec& c);

// d2C/dS2; requires tau > 0 and vol > 0.
double gamma(const BsQuote& q, const CallSpec& c);

// dC/dvol; requires tau > 0 and vol > 0.
double vega(const BsQuote& q, const CallSpec& c);

// dC/dt + (1/2) vol^2 S^2 d2C/dS2 with both terms in closed form. The
// valuation equation makes this identically zero; the function exists so
// tests can measure how far the two evaluations drift apart.
double theta_identity_residual(const BsQuote& q, const CallSpec& c);

// Inverts price() in the volatility. The price must lie strictly inside the
// no-arbitrage interval ((S-K)+, S); throws std::domain_error naming the
// violated bound otherwise. Safeguarded Newton, |price error| <= 1e-10.
double implied_vol(double price, double spot, double tau, const CallSpec& c);

} // namespace bs
} // namespace ivrepr
