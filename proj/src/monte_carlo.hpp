#pragma once

#include <cstdint>
#include <vector>

#include "bs.hpp"
#include "local_vol.hpp"

namespace ivrepr {

// Terminal/monitoring values of log-Euler paths. Bit-for-bit reproducible
// from (seed, paths, steps): each path draws from its own generator seeded
// by (seed, path index), and reductions run in path order, so the result is
// independent of how work is sharded across threads.
struct McSample {
    uint64_t seed = 0;
    int64_t paths = 0;
    int32_t steps = 0;
    std::vector<double> monitor_times;
    std::vector<double> values; // paths x monitor_times, row-major
};

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

// Simulates x = log S with the scheme dx = -sigma^2/2 dt + sigma dW on a
// uniform step grid over [0, maturity]; monitoring times snap to the nearest
// step boundary. shards = 0 picks the hardware thread count.
McSample mc_simulate(const LocalVolSurface& surface, double spot,
                     double maturity, const std::vector<double>& monitor_times,
                     int64_t paths, int32_t steps, uint64_t seed,
                     unsigned shards = 0);

// Plain MC call price from the terminal distribution.
McEstimate mc_call_price(const LocalVolSurface& surface, double spot,
                         const CallSpec& c, int64_t paths, int32_t steps,
                         uint64_t seed, unsigned shards = 0);

} // namespace ivrepr
