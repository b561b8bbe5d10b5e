#pragma once

#include <cstddef>
#include <vector>

#include "bs.hpp"
#include "density.hpp"

namespace ivrepr {

// sigma_bar(t) per time node: the unique volatility that makes the expected
// Black-Scholes value at t reproduce the time-0 call price. Defined on
// [0, T - dt]; the node at t = 0 is the plain implied volatility of the
// target price.
struct ForwardVolCurve {
    CallSpec call;
    double spot0 = 0.0;
    double target_price = 0.0;           // C(K,T)
    double dt = 0.0;
    std::vector<double> times;           // t_0 = 0 .. t_{M-1} = T - dt
    std::vector<double> sigma_bar;
    std::vector<double> residuals;       // |E[C_BS] - C(K,T)| per node

    size_t size() const { return times.size(); }
    // w(t) = sigma_bar(t)^2 * (T - t), the total variance still to run
    double remaining_variance(size_t m) const {
        return sigma_bar[m] * sigma_bar[m] * (call.maturity - times[m]);
    }
};

// E[C_BS(t_m, S, K, T; vol)] against the density row at t_m; strictly
// increasing in vol, equal to E[(S - K)+] at vol = 0.
double expected_bs_price(const DensitySurface& d, size_t time_index,
                         const CallSpec& c, double vol);

// Solves expected_bs_price(vol) = target by bracketed Brent iteration after
// verifying the two bracketing inequalities E[(S_t-K)+] <= target <= E[S_t].
// warm_start (> 0) seeds the bracket from a neighboring node.
double solve_sigma_bar(const DensitySurface& d, size_t time_index,
                       const CallSpec& c, double target,
                       double warm_start = 0.0, double* residual = nullptr);

// Builds the whole curve: exact point-mass inversion at t = 0, per-node
// solves elsewhere, warm-started left to right. All-or-nothing: any node
// failure rejects the curve.
ForwardVolCurve build_curve(const DensitySurface& d, const CallSpec& c);

} // namespace ivrepr
