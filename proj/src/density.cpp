#include "density.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "errors.hpp"

namespace ivrepr {
namespace {

// Tridiagonal solve (Thomas); diag is overwritten, rhs becomes the solution.
void solve_tridiagonal(std::vector<double>& lower, std::vector<double>& diag,
                       std::vector<double>& upper, std::vector<double>& rhs) {
    const size_t n = diag.size();
    for (size_t i = 1; i < n; ++i) {
        const double w = lower[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    rhs[n - 1] /= diag[n - 1];
    for (size_t i = n - 1; i-- > 0;)
        rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

// Conservative discretization of the generator acting on the x-density q:
//   dq/dt = d/dx[ D q ] + d2/dx2[ D q ],  D = sigma^2 / 2,
// written in flux form with zero flux through both boundaries, so the
// full-node sum of q is preserved exactly by every implicit step.
struct Operator {
    std::vector<double> lower, diag, upper; // A coefficients per row

    void assemble(const LocalVolSurface& surface, const SpaceTimeGrid& g,
                  double t) {
        const size_t n = g.x.size();
        lower.assign(n, 0.0);
        diag.assign(n, 0.0);
        upper.assign(n, 0.0);
        const double r = 1.0 / g.dx;
        std::vector<double> d(n);
        for (size_t i = 0; i < n; ++i) {
            const double s = surface(t, g.spots[i]);
            d[i] = 0.5 * s * s;
        }
        diag[0] = r * d[0] * (0.5 - r);
        upper[0] = r * d[1] * (0.5 + r);
        for (size_t i = 1; i + 1 < n; ++i) {
            lower[i] = r * d[i - 1] * (r - 0.5);
            diag[i] = -2.0 * r * r * d[i];
            upper[i] = r * d[i + 1] * (r + 0.5);
        }
        lower[n - 1] = r * d[n - 2] * (r - 0.5);
        diag[n - 1] = -r * d[n - 1] * (0.5 + r);
    }
};

// One theta-step of length dt_step with the operator held at eval_time:
//   (I - theta dt A) q_new = (I + (1-theta) dt A) q_old
void theta_step(const LocalVolSurface& surface, const SpaceTimeGrid& g,
                Operator& op, std::vector<double>& q, double eval_time,
                double dt_step, double theta) {
    op.assemble(surface, g, eval_time);
    const size_t n = q.size();
    std::vector<double> rhs(n), lo(n), di(n), up(n);
    const double ex = (1.0 - theta) * dt_step;
    rhs[0] = q[0] + ex * (op.diag[0] * q[0] + op.upper[0] * q[1]);
    for (size_t i = 1; i + 1 < n; ++i)
        rhs[i] = q[i] + ex * (op.lower[i] * q[i - 1] + op.diag[i] * q[i] +
                              op.upper[i] * q[i + 1]);
    rhs[n - 1] =
        q[n - 1] + ex * (op.lower[n - 1] * q[n - 2] + op.diag[n - 1] * q[n - 1]);
    const double im = theta * dt_step;
    for (size_t i = 0; i < n; ++i) {
        lo[i] = -im * op.lower[i];
        di[i] = 1.0 - im * op.diag[i];
        up[i] = -im * op.upper[i];
    }
    solve_tridiagonal(lo, di, up, rhs);
    q.swap(rhs);
}

} // namespace

DensitySurface::DensitySurface(SpaceTimeGrid grid, double spot,
                               std::vector<double> values,
                               DensityDiagnostics diag)
    : grid_(std::move(grid)), spot_(spot), values_(std::move(values)),
      diag_(diag) {}

std::span<const double> DensitySurface::row(size_t m) const {
    const size_t n = grid_.x.size();
    return {values_.data() + m * n, n};
}

double DensitySurface::value(size_t m, size_t n) const {
    return row(m)[n] / grid_.spots[n];
}

double DensitySurface::expectation(size_t m,
                                   const std::function<double(double)>& g) const {
    auto q = row(m);
    const size_t n = q.size();
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double gi = g(grid_.spots[i]);
        if (!std::isfinite(gi))
            throw std::invalid_argument(
                "expectation: integrand not finite at S = " +
                std::to_string(grid_.spots[i]));
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        acc += w * gi * q[i];
    }
    return acc * grid_.dx;
}

double DensitySurface::mass(size_t m) const {
    auto q = row(m);
    double acc = 0.5 * (q.front() + q.back());
    for (size_t i = 1; i + 1 < q.size(); ++i) acc += q[i];
    return acc * grid_.dx;
}

double DensitySurface::mean_spot(size_t m) const {
    auto q = row(m);
    const size_t n = q.size();
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        acc += w * grid_.spots[i] * q[i];
    }
    return acc * grid_.dx;
}

double DensitySurface::partial_payoff(size_t m, double strike) const {
    auto q = row(m);
    const size_t n = q.size();
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double pay = grid_.spots[i] - strike;
        if (pay <= 0.0) continue;
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        acc += w * pay * q[i];
    }
    return acc * grid_.dx;
}

CallPriceResult DensitySurface::call_price(double strike) const {
    if (!(strike > 0.0) || !std::isfinite(strike))
        throw std::invalid_argument("call_price: strike must be positive");
    const size_t last = grid_.times.size() - 1;
    CallPriceResult res;
    res.price = partial_payoff(last, strike);
    if (strike >= grid_.spots.back() || strike <= grid_.spots.front()) {
        res.truncated = true;
        const double spot_deficit = std::max(0.0, spot_ - mean_spot(last));
        const double mass_deficit = std::max(0.0, 1.0 - mass(last));
        res.truncation_bound = spot_deficit + mass_deficit * strike;
    }
    return res;
}

DensitySurface solve_forward_density(const LocalVolSurface& surface, double spot,
                                     const SpaceTimeGrid& grid,
                                     const SolverOptions& opts) {
    const size_t n = grid.x.size();
    const size_t steps = grid.time_steps();
    std::vector<double> values((steps + 1) * n, 0.0);

    std::vector<double> q(n, 0.0);
    q[grid.spot_index] = 1.0 / grid.dx; // point mass at the spot node
    std::copy(q.begin(), q.end(), values.begin());

    Operator op;
    DensityDiagnostics diag;
    for (size_t m = 0; m < steps; ++m) {
        const double t0 = grid.times[m];
        const double t1 = grid.times[m + 1];
        if (m == 0) {
            // Rannacher start: two implicit-Euler half-steps damp the modes
            // the point mass excites before Crank-Nicolson takes over.
            const double half = 0.5 * (t1 - t0);
            theta_step(surface, grid, op, q, t0 + half, half, 1.0);
            theta_step(surface, grid, op, q, t1, half, 1.0);
        } else {
            theta_step(surface, grid, op, q, 0.5 * (t0 + t1), t1 - t0, 0.5);
        }
        double clamped = 0.0;
        double* out = values.data() + (m + 1) * n;
        for (size_t i = 0; i < n; ++i) {
            if (q[i] < 0.0) {
                clamped -= q[i];
                out[i] = 0.0;
            } else {
                out[i] = q[i];
            }
        }
        diag.clamped_mass_max = std::max(diag.clamped_mass_max, clamped * grid.dx);
    }

    for (size_t m = 1; m <= steps; ++m) {
        const double* row = values.data() + m * n;
        double total = 0.5 * (row[0] + row[n - 1]);
        double mean = 0.5 * (row[0] * grid.spots[0] + row[n - 1] * grid.spots[n - 1]);
        for (size_t i = 1; i + 1 < n; ++i) {
            total += row[i];
            mean += row[i] * grid.spots[i];
        }
        total *= grid.dx;
        mean *= grid.dx;
        diag.mass_err_max = std::max(diag.mass_err_max, std::abs(total - 1.0));
        diag.martingale_err_max =
            std::max(diag.martingale_err_max, std::abs(mean - spot) / spot);
        diag.boundary_mass =
            std::max(diag.boundary_mass, (row[0] + row[n - 1]) * grid.dx);
    }
    const DensityDiagnostics dd = diag;

    if (dd.boundary_mass > opts.boundary_mass_tol)
        throw NumericalError(
            "density grid too narrow: boundary mass " +
            std::to_string(dd.boundary_mass) + " exceeds tolerance " +
            std::to_string(opts.boundary_mass_tol) +
            " (leaked probability would bias every expectation); widen the grid");
    if (dd.clamped_mass_max > opts.clamped_mass_tol)
        throw NumericalError("density solve: clamped negative mass " +
                             std::to_string(dd.clamped_mass_max) +
                             " exceeds tolerance");
    if (dd.mass_err_max > opts.mass_tol)
        throw NumericalError("density solve: mass conservation error " +
                             std::to_string(dd.mass_err_max));
    if (dd.martingale_err_max > opts.martingale_tol)
        throw NumericalError("density solve: martingale drift " +
                             std::to_string(dd.martingale_err_max) +
                             " relative to spot");
    return DensitySurface(grid, spot, std::move(values), dd);
}

} // namespace ivrepr
