#include "monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace ivrepr {
namespace {

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// xoshiro256++, seeded per path so the draw sequence depends only on
// (seed, path index).
struct Xoshiro {
    uint64_t s[4];

    Xoshiro(uint64_t seed, uint64_t path_index) {
        uint64_t sm = seed ^ (0xD1B54A32D192ED03ull * (path_index + 1));
        for (auto& w : s) w = splitmix64(sm);
    }

    static inline uint64_t rotl(uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    inline uint64_t next() {
        const uint64_t result = rotl(s[0] + s[3], 23) + s[0];
        const uint64_t t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = rotl(s[3], 45);
        return result;
    }

    // uniform on (0, 1]
    inline double uniform() {
        return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
    }
};

// Box-Muller pair, second value cached.
struct NormalRng {
    Xoshiro rng;
    double cached = 0.0;
    bool has_cached = false;

    NormalRng(uint64_t seed, uint64_t path_index) : rng(seed, path_index) {}

    inline double next() {
        if (has_cached) {
            has_cached = false;
            return cached;
        }
        const double r = std::sqrt(-2.0 * std::log(rng.uniform()));
        const double theta = 2.0 * std::numbers::pi * rng.uniform();
        cached = r * std::sin(theta);
        has_cached = true;
        return r * std::cos(theta);
    }
};

// Runs fn(path_index) over [0, paths) on `shards` threads in contiguous
// blocks. Results must be written to per-path slots; nothing here depends on
// the block layout.
template <typename Fn>
void parallel_paths(int64_t paths, unsigned shards, const Fn& fn) {
    if (shards == 0) shards = std::max(1u, std::thread::hardware_concurrency());
    shards = static_cast<unsigned>(
        std::min<int64_t>(shards, std::max<int64_t>(1, paths)));
    if (shards == 1) {
        for (int64_t i = 0; i < paths; ++i) fn(i);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(shards);
    const int64_t block = (paths + shards - 1) / shards;
    for (unsigned w = 0; w < shards; ++w) {
        const int64_t lo = static_cast<int64_t>(w) * block;
        const int64_t hi = std::min(paths, lo + block);
        if (lo >= hi) break;
        workers.emplace_back([lo, hi, &fn] {
            for (int64_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : workers) t.join();
}

// Per-step volatility as a function of (t, x). Specialized per family to
// keep the hot loop free of dispatch.
template <typename VolFn>
void run_paths(const VolFn& vol, double x0, double maturity,
               const std::vector<int32_t>& monitor_steps, int64_t paths,
               int32_t steps, uint64_t seed, unsigned shards,
               std::vector<double>& out) {
    const double dt = maturity / steps;
    const double sqrt_dt = std::sqrt(dt);
    const size_t n_mon = monitor_steps.size();
    parallel_paths(paths, shards, [&](int64_t p) {
        NormalRng rng(seed, static_cast<uint64_t>(p));
        double x = x0;
        size_t mi = 0;
        double* slot = out.data() + static_cast<size_t>(p) * n_mon;
        while (mi < n_mon && monitor_steps[mi] == 0) {
            slot[mi] = std::exp(x);
            ++mi;
        }
        for (int32_t k = 0; k < steps; ++k) {
            const double s = vol(dt * k, x);
            x += s * (sqrt_dt * rng.next() - 0.5 * s * dt);
            while (mi < n_mon && monitor_steps[mi] == k + 1) {
                slot[mi] = std::exp(x);
                ++mi;
            }
        }
    });
}

void simulate_dispatch(const LocalVolSurface& surface, double x0,
                       double maturity,
                       const std::vector<int32_t>& monitor_steps, int64_t paths,
                       int32_t steps, uint64_t seed, unsigned shards,
                       std::vector<double>& out) {
    const double lo = surface.clamp_min();
    const double hi = surface.clamp_max();
    if (const auto* c = surface.as<LocalVolSurface::Constant>()) {
        const double s = std::clamp(c->sigma, lo, hi);
        run_paths([s](double, double) { return s; }, x0, maturity, monitor_steps,
                  paths, steps, seed, shards, out);
    } else if (const auto* cev = surface.as<LocalVolSurface::Cev>()) {
        const double bm1 = cev->beta - 1.0;
        const double alpha = cev->alpha;
        run_paths(
            [=](double, double x) {
                return std::clamp(alpha * std::exp(bm1 * x), lo, hi);
            },
            x0, maturity, monitor_steps, paths, steps, seed, shards, out);
    } else {
        run_paths(
            [&surface](double t, double x) { return surface(t, std::exp(x)); },
            x0, maturity, monitor_steps, paths, steps, seed, shards, out);
    }
}

} // namespace

McSample mc_simulate(const LocalVolSurface& surface, double spot,
                     double maturity, const std::vector<double>& monitor_times,
                     int64_t paths, int32_t steps, uint64_t seed,
                     unsigned shards) {
    if (!(spot > 0.0) || !std::isfinite(spot))
        throw std::invalid_argument("mc_simulate: spot must be positive");
    if (!(maturity > 0.0))
        throw std::invalid_argument("mc_simulate: maturity must be positive");
    if (paths < 1) throw std::invalid_argument("mc_simulate: need paths >= 1");
    if (steps < 1) throw std::invalid_argument("mc_simulate: need steps >= 1");

    McSample sample;
    sample.seed = seed;
    sample.paths = paths;
    sample.steps = steps;
    sample.monitor_times = monitor_times;
    std::vector<int32_t> monitor_steps;
    monitor_steps.reserve(monitor_times.size());
    for (double t : monitor_times) {
        if (!(t >= 0.0) || t > maturity * (1.0 + 1e-12))
            throw std::invalid_argument(
                "mc_simulate: monitoring time outside [0, maturity]");
        monitor_steps.push_back(static_cast<int32_t>(
            std::lround(t / maturity * static_cast<double>(steps))));
    }
    if (!std::is_sorted(monitor_steps.begin(), monitor_steps.end()))
        throw std::invalid_argument("mc_simulate: monitoring times must be sorted");

    sample.values.resize(static_cast<size_t>(paths) * monitor_times.size());
    simulate_dispatch(surface, std::log(spot), maturity, monitor_steps, paths,
                      steps, seed, shards, sample.values);
    return sample;
}

McEstimate mc_call_price(const LocalVolSurface& surface, double spot,
                         const CallSpec& c, int64_t paths, int32_t steps,
                         uint64_t seed, unsigned shards) {
    McSample s = mc_simulate(surface, spot, c.maturity, {c.maturity}, paths,
                             steps, seed, shards);
    double sum = 0.0, sum_sq = 0.0;
    for (double v : s.values) {
        const double pay = v > c.strike ? v - c.strike : 0.0;
        sum += pay;
        sum_sq += pay * pay;
    }
    const double n = static_cast<double>(paths);
    McEstimate est;
    est.value = sum / n;
    const double var =
        (n > 1.0) ? std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0)) : 0.0;
    est.std_error = std::sqrt(var / n);
    return est;
}

} // namespace ivrepr
