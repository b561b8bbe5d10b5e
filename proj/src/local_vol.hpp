#pragma once

#include <string>
#include <variant>
#include <vector>

namespace ivrepr {

// Instantaneous volatility sigma(t, S) of the driftless diffusion
// dS/S = sigma(t,S) dW. Four families; every evaluation is clamped to
// [clamp_min, clamp_max] so the generator stays uniformly elliptic on any
// grid the PDE solver builds.
class LocalVolSurface {
public:
    struct Constant {
        double sigma;
    };
    // sigma[i] applies on [times[i], times[i+1]); the last value extends
    // beyond the final breakpoint. Evaluation exactly at an interior
    // breakpoint returns the two-sided average, which keeps trapezoid
    // time-integrals across the jump at their usual order.
    struct TimeDependent {
        std::vector<double> times;  // times[0] == 0, strictly increasing
        std::vector<double> sigmas; // same length
    };
    // sigma(t,S) = alpha * S^(beta - 1)
    struct Cev {
        double alpha;
        double beta;
    };
    // Bilinear interpolation on (t, log S); queries outside the table clamp
    // to the nearest edge. Values stored row-major, t outer, logS inner.
    struct Tabulated {
        std::vector<double> times;
        std::vector<double> log_spots;
        std::vector<double> sigmas; // times.size() * log_spots.size()
    };

    static LocalVolSurface constant(double sigma);
    static LocalVolSurface time_dependent(std::vector<double> times,
                                          std::vector<double> sigmas);
    static LocalVolSurface cev(double alpha, double beta);
    static LocalVolSurface tabulated(Tabulated table);

    // Loads a Tabulated surface from CSV with header "t,logS,sigma",
    // row-major and complete; throws ConfigError on any schema violation.
    static LocalVolSurface tabulated_from_csv(const std::string& path);

    double operator()(double t, double spot) const;

    // Interior time breakpoints where sigma(t, .) jumps (TimeDependent only).
    std::vector<double> time_discontinuities() const;

    double clamp_min() const { return clamp_min_; }
    double clamp_max() const { return clamp_max_; }

    const char* family_name() const;

    template <typename T>
    const T* as() const {
        return std::get_if<T>(&family_);
    }

private:
    using Family = std::variant<Constant, TimeDependent, Cev, Tabulated>;
    explicit LocalVolSurface(Family f) : family_(std::move(f)) {}

    Family family_;
    double clamp_min_ = 1e-4;
    double clamp_max_ = 5.0;
};

} // namespace ivrepr
