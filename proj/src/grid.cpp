#include "grid.hpp"

#include <cmath>
#include <stdexcept>

namespace ivrepr {

SpaceTimeGrid make_grid(const LocalVolSurface& surface, double spot,
                        double maturity, size_t time_steps, size_t space_cells,
                        double width) {
    if (!(spot > 0.0) || !std::isfinite(spot))
        throw std::invalid_argument("grid: spot must be positive");
    if (!(maturity > 0.0) || !std::isfinite(maturity))
        throw std::invalid_argument("grid: maturity must be positive");
    if (time_steps < 2) throw std::invalid_argument("grid: need at least 2 time steps");
    if (space_cells < 4) throw std::invalid_argument("grid: need at least 4 space cells");
    if (!(width > 0.0) || !std::isfinite(width))
        throw std::invalid_argument("grid: width must be positive");

    SpaceTimeGrid g;
    g.dt = maturity / static_cast<double>(time_steps);
    g.times.resize(time_steps + 1);
    for (size_t m = 0; m <= time_steps; ++m)
        g.times[m] = g.dt * static_cast<double>(m);
    g.times.back() = maturity;

    double sigma_ref = 0.0;
    for (double t : g.times) sigma_ref = std::max(sigma_ref, surface(t, spot));
    g.sigma_ref = sigma_ref;

    const double half_width = width * sigma_ref * std::sqrt(maturity);
    g.dx = 2.0 * half_width / static_cast<double>(space_cells);
    const double xc = std::log(spot);
    g.spot_index = space_cells / 2;
    g.x.resize(space_cells + 1);
    g.spots.resize(space_cells + 1);
    for (size_t n = 0; n <= space_cells; ++n) {
        g.x[n] = xc + (static_cast<double>(n) - static_cast<double>(g.spot_index)) * g.dx;
        g.spots[n] = std::exp(g.x[n]);
    }
    g.x[g.spot_index] = xc;
    g.spots[g.spot_index] = spot;
    return g;
}

} // namespace ivrepr
