#pragma once

#include <functional>
#include <span>
#include <vector>

#include "grid.hpp"
#include "local_vol.hpp"

namespace ivrepr {

struct DensityDiagnostics {
    double mass_err_max = 0.0;        // max over m>=1 of |∫p dS - 1|
    double martingale_err_max = 0.0;  // max over m>=1 of |∫S p dS - S0| / S0
    double boundary_mass = 0.0;       // max over m>=1 of mass in the outermost cells
    double clamped_mass_max = 0.0;    // negative undershoot removed per time node
};

struct SolverOptions {
    double boundary_mass_tol = 1e-5;
    double mass_tol = 1e-6;
    double martingale_tol = 1e-3;   // relative to spot
    double clamped_mass_tol = 1e-8;
};

// Call price read off a density row; `truncated` flags a strike outside the
// grid support together with a bound on the resulting bias.
struct CallPriceResult {
    double price = 0.0;
    bool truncated = false;
    double truncation_bound = 0.0;
};

// Marginal densities p(t_m, S) of the driftless local-vol diffusion on a
// SpaceTimeGrid. Rows are stored as densities of x = log S; the initial row
// is the exact point mass at the spot node and every later row comes from
// the forward Kolmogorov solve. Immutable once built.
class DensitySurface {
public:
    DensitySurface(SpaceTimeGrid grid, double spot, std::vector<double> values,
                   DensityDiagnostics diag);

    const SpaceTimeGrid& grid() const { return grid_; }
    double spot0() const { return spot_; }
    double maturity() const { return grid_.times.back(); }
    size_t time_count() const { return grid_.times.size(); }
    size_t space_count() const { return grid_.x.size(); }

    // density of log S at time node m
    std::span<const double> row(size_t m) const;
    // density per unit S at (m, n)
    double value(size_t m, size_t n) const;

    // trapezoid quadrature of g(S) against p(t_m, S)
    double expectation(size_t m, const std::function<double(double)>& g) const;

    double mass(size_t m) const;
    double mean_spot(size_t m) const;
    // E[(S_{t_m} - K)+]
    double partial_payoff(size_t m, double strike) const;
    // C(K,T) against the terminal row
    CallPriceResult call_price(double strike) const;

    const DensityDiagnostics& diagnostics() const { return diag_; }

private:
    SpaceTimeGrid grid_;
    double spot_;
    std::vector<double> values_; // (M+1) x (N+1), row-major, x-density
    DensityDiagnostics diag_;
};

// Solves the forward equation with Crank-Nicolson (Rannacher-started) on
// the given grid. Throws NumericalError when the grid is too narrow for the
// diffusion (boundary mass above tolerance) or a conservation check fails.
DensitySurface solve_forward_density(const LocalVolSurface& surface, double spot,
                                     const SpaceTimeGrid& grid,
                                     const SolverOptions& opts = {});

} // namespace ivrepr
