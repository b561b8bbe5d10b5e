#include "bs.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ivrepr::bs {
namespace {

void require_finite(const BsQuote& q, const CallSpec& c) {
    if (!(std::isfinite(q.spot) && std::isfinite(q.tau) && std::isfinite(q.vol)))
        throw std::invalid_argument("bs: non-finite quote");
    if (!(std::isfinite(c.strike) && std::isfinite(c.maturity)))
        throw std::invalid_argument("bs: non-finite call spec");
    if (!(q.spot > 0.0))
        throw std::invalid_argument("bs: spot must be positive");
    if (q.tau < 0.0)
        throw std::invalid_argument("bs: negative remaining time");
    if (q.vol < 0.0)
        throw std::invalid_argument("bs: negative volatility");
    if (!(c.strike > 0.0))
        throw std::invalid_argument("bs: strike must be positive");
}

void require_nondegenerate(const BsQuote& q) {
    if (q.tau == 0.0 || q.vol == 0.0)
        throw std::invalid_argument(
            "bs: gamma/vega undefined at tau = 0 or vol = 0");
}

inline double d1_of(const BsQuote& q, const CallSpec& c, double sv) {
    return (std::log(q.spot / c.strike)) / sv + 0.5 * sv;
}

} // namespace

double price(const BsQuote& q, const CallSpec& c) {
    require_finite(q, c);
    const double intrinsic = q.spot > c.strike ? q.spot - c.strike : 0.0;
    if (q.tau == 0.0 || q.vol == 0.0) return intrinsic;
    const double sv = q.vol * std::sqrt(q.tau);
    const double d1 = d1_of(q, c, sv);
    const double p = q.spot * norm_cdf(d1) - c.strike * norm_cdf(d1 - sv);
    // rounding can nick the intrinsic floor deep in the money
    return p > intrinsic ? p : intrinsic;
}

double gamma(const BsQuote& q, const CallSpec& c) {
    require_finite(q, c);
    require_nondegenerate(q);
    const double sv = q.vol * std::sqrt(q.tau);
    return norm_pdf(d1_of(q, c, sv)) / (q.spot * sv);
}

double vega(const BsQuote& q, const CallSpec& c) {
    require_finite(q, c);
    require_nondegenerate(q);
    const double sv = q.vol * std::sqrt(q.tau);
    return q.spot * norm_pdf(d1_of(q, c, sv)) * std::sqrt(q.tau);
}

double theta_identity_residual(const BsQuote& q, const CallSpec& c) {
    require_finite(q, c);
    require_nondegenerate(q);
    const double sqrt_tau = std::sqrt(q.tau);
    const double sv = q.vol * sqrt_tau;
    // dC/dt = -S phi(d1) vol / (2 sqrt(tau)) at zero rates
    const double dCdt =
        -q.spot * norm_pdf(d1_of(q, c, sv)) * q.vol / (2.0 * sqrt_tau);
    const double diffusion =
        0.5 * q.vol * q.vol * q.spot * q.spot * gamma(q, c);
    return dCdt + diffusion;
}

double implied_vol(double target, double spot, double tau, const CallSpec& c) {
    if (!(std::isfinite(target) && std::isfinite(spot) && std::isfinite(tau)))
        throw std::invalid_argument("implied_vol: non-finite input");
    if (!(spot > 0.0) || !(tau > 0.0) || !(c.strike > 0.0))
        throw std::invalid_argument("implied_vol: spot, tau, strike must be positive");
    const double intrinsic = spot > c.strike ? spot - c.strike : 0.0;
    if (!(target > intrinsic))
        throw std::domain_error(
            "implied_vol: price " + std::to_string(target) +
            " at or below the intrinsic bound " + std::to_string(intrinsic));
    if (!(target < spot))
        throw std::domain_error("implied_vol: price " + std::to_string(target) +
                                " at or above the spot bound " +
                                std::to_string(spot));

    const BsQuote base{spot, tau, 0.0};
    auto f = [&](double vol) {
        BsQuote q = base;
        q.vol = vol;
        return price(q, c) - target;
    };

    double lo = 0.0, flo = intrinsic - target; // < 0 by the domain check
    double hi = 1.0, fhi = f(hi);
    int guard = 0;
    while (fhi < 0.0) {
        lo = hi;
        flo = fhi;
        hi *= 2.0;
        fhi = f(hi);
        if (++guard > 64)
            throw std::domain_error("implied_vol: no volatility reproduces the price");
    }

    // Safeguarded Newton: vega steps, bisection whenever a step leaves the
    // bracket or does not halve it. Vega vanishes in the wings, so Newton
    // alone is unsafe.
    constexpr double price_tol = 1e-10;
    constexpr int max_iter = 100;
    (void)flo;
    (void)fhi;
    double x = 0.5 * (lo + hi);
    double fx = f(x);
    double step_old = hi - lo;
    for (int i = 0; i < max_iter; ++i) {
        if (std::abs(fx) <= price_tol) return x;
        if (fx > 0.0)
            hi = x;
        else
            lo = x;
        double next;
        const double v = (x > 0.0) ? vega({spot, tau, x}, c) : 0.0;
        const double newton = (v > 1e-300) ? x - fx / v : lo - 1.0;
        if (newton > lo && newton < hi &&
            std::abs(newton - x) <= 0.5 * step_old) {
            step_old = std::abs(newton - x);
            next = newton;
        } else {
            step_old = 0.5 * (hi - lo);
            next = 0.5 * (lo + hi);
        }
        if (next == x) return x; // bracket exhausted at rounding width
        x = next;
        fx = f(x);
    }
    throw std::domain_error("implied_vol: no convergence after 100 iterations");
}

} // namespace ivrepr::bs
