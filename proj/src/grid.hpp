#pragma once

#include <cstddef>
#include <vector>

#include "local_vol.hpp"

namespace ivrepr {

// Uniform tensor grid: time nodes 0 = t_0 < ... < t_M = T and log-spot nodes
// centered on log(spot), half-width `width` in units of sigma_ref*sqrt(T).
// sigma_ref is the largest surface volatility along the spot level, so the
// span scales with the realized diffusion. A node always sits exactly at
// log(spot); the Dirac initial condition lives there.
struct SpaceTimeGrid {
    std::vector<double> times;     // M+1 nodes
    std::vector<double> x;         // N+1 log-spot nodes
    std::vector<double> spots;     // exp(x)
    double dt = 0.0;
    double dx = 0.0;
    size_t spot_index = 0;         // node at log(spot)
    double sigma_ref = 0.0;

    size_t time_steps() const { return times.size() - 1; }
    size_t space_cells() const { return x.size() - 1; }
};

SpaceTimeGrid make_grid(const LocalVolSurface& surface, double spot,
                        double maturity, size_t time_steps, size_t space_cells,
                        double width);

} // namespace ivrepr
