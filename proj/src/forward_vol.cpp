#include "forward_vol.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "errors.hpp"
#include "roots.hpp"

namespace ivrepr {

double expected_bs_price(const DensitySurface& d, size_t time_index,
                         const CallSpec& c, double vol) {
    const auto& g = d.grid();
    if (time_index + 1 >= g.times.size())
        throw std::invalid_argument(
            "expected_bs_price: defined for t < T only");
    if (!(vol >= 0.0) || !std::isfinite(vol))
        throw std::invalid_argument("expected_bs_price: vol must be >= 0");
    const double tau = c.maturity - g.times[time_index];
    if (vol == 0.0) return d.partial_payoff(time_index, c.strike);

    const double sv = vol * std::sqrt(tau);
    const double log_strike = std::log(c.strike);
    auto q = d.row(time_index);
    const size_t n = q.size();
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) {
        if (q[i] == 0.0) continue;
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        acc += w * q[i] *
               bs::call_from_logspot(g.x[i], g.spots[i], log_strike, c.strike, sv);
    }
    return acc * g.dx;
}

double solve_sigma_bar(const DensitySurface& d, size_t time_index,
                       const CallSpec& c, double target, double warm_start,
                       double* residual) {
    const double spot0 = d.spot0();
    const double slack = 1e-6 * spot0;
    const double lower = d.partial_payoff(time_index, c.strike);
    const double upper = d.mean_spot(time_index);
    if (lower > target + slack)
        throw NumericalError(
            "solve_sigma_bar: lower bracketing inequality E[(S_t-K)+] <= C(K,T) "
            "violated at t index " + std::to_string(time_index) + " (E = " +
            std::to_string(lower) + ", C = " + std::to_string(target) +
            "); suspect density truncation bias");
    if (target > upper + slack)
        throw NumericalError(
            "solve_sigma_bar: upper bracketing inequality C(K,T) <= E[S_t] "
            "violated at t index " + std::to_string(time_index) + " (E[S_t] = " +
            std::to_string(upper) + ", C = " + std::to_string(target) + ")");

    auto f = [&](double vol) {
        return expected_bs_price(d, time_index, c, vol) - target;
    };
    const double f_tol = 1e-9 * spot0;
    double lo = 0.0;
    double flo = lower - target;
    if (flo >= 0.0) {
        // target indistinguishable from the vol = 0 limit
        if (flo <= slack) {
            if (residual) *residual = std::abs(flo);
            throw NumericalError(
                "solve_sigma_bar: target equals the zero-vol bound at t index " +
                std::to_string(time_index) + "; sigma_bar is not resolvable");
        }
        throw NumericalError("solve_sigma_bar: bracket lost at t index " +
                             std::to_string(time_index));
    }
    double hi = warm_start > 0.0 ? warm_start : 1.0;
    double fhi = f(hi);
    int guard = 0;
    while (fhi < 0.0) {
        lo = hi;
        flo = fhi;
        hi *= 2.0;
        fhi = f(hi);
        if (++guard > 60)
            throw NumericalError(
                "solve_sigma_bar: no upper bracket below vol = " +
                std::to_string(hi));
    }
    RootResult r = brent(f, lo, hi, flo, fhi, f_tol);
    if (!r.converged)
        throw NumericalError("solve_sigma_bar: Brent iteration stalled at t index " +
                             std::to_string(time_index) + " (residual " +
                             std::to_string(r.f) + ")");
    if (residual) *residual = std::abs(r.f);
    return r.x;
}

ForwardVolCurve build_curve(const DensitySurface& d, const CallSpec& c) {
    const auto& g = d.grid();
    if (!(c.strike > g.spots.front() && c.strike < g.spots.back()))
        throw NumericalError("build_curve: strike outside the density grid support");
    if (std::abs(c.maturity - d.maturity()) > 1e-12 * std::max(1.0, d.maturity()))
        throw std::invalid_argument(
            "build_curve: call maturity must match the density horizon");

    const CallPriceResult target = d.call_price(c.strike);
    if (target.truncated)
        throw NumericalError("build_curve: target price truncated (bias bound " +
                             std::to_string(target.truncation_bound) + ")");

    ForwardVolCurve curve;
    curve.call = c;
    curve.spot0 = d.spot0();
    curve.target_price = target.price;
    curve.dt = g.dt;
    const size_t m_nodes = g.times.size() - 1; // curve stops at T - dt
    curve.times.assign(g.times.begin(), g.times.begin() + m_nodes);
    curve.sigma_bar.resize(m_nodes);
    curve.residuals.resize(m_nodes);

    // t = 0: the density is the exact point mass, so the node reduces to a
    // plain implied-vol inversion of the target price.
    try {
        curve.sigma_bar[0] =
            bs::implied_vol(target.price, curve.spot0, c.maturity, c);
    } catch (const std::domain_error& e) {
        throw NumericalError(std::string("build_curve: t = 0 inversion failed: ") +
                             e.what());
    }
    curve.residuals[0] = std::abs(
        bs::price({curve.spot0, c.maturity, curve.sigma_bar[0]}, c) - target.price);

    size_t failures = 0;
    std::string first_failure;
    double warm = curve.sigma_bar[0];
    for (size_t m = 1; m < m_nodes; ++m) {
        try {
            curve.sigma_bar[m] =
                solve_sigma_bar(d, m, c, target.price, warm, &curve.residuals[m]);
            warm = curve.sigma_bar[m];
        } catch (const NumericalError& e) {
            if (failures++ == 0) first_failure = e.what();
        }
    }
    if (failures > 0)
        throw NumericalError("build_curve: " + std::to_string(failures) +
                             " node(s) failed; first: " + first_failure);
    return curve;
}

} // namespace ivrepr
