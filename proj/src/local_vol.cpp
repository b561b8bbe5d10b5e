#include "local_vol.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "errors.hpp"

namespace ivrepr {
namespace {

void check_sigma(double s, const char* family) {
    if (!std::isfinite(s) || s <= 0.0)
        throw std::invalid_argument(std::string(family) +
                                    ": volatility values must be positive");
}

// index of the left neighbor of x in a sorted axis, clamped to [0, n-2]
size_t left_index(const std::vector<double>& axis, double x) {
    if (axis.size() < 2) return 0;
    auto it = std::upper_bound(axis.begin(), axis.end(), x);
    if (it == axis.begin()) return 0;
    size_t i = static_cast<size_t>(it - axis.begin()) - 1;
    return std::min(i, axis.size() - 2);
}

} // namespace

LocalVolSurface LocalVolSurface::constant(double sigma) {
    check_sigma(sigma, "constant");
    return LocalVolSurface(Constant{sigma});
}

LocalVolSurface LocalVolSurface::time_dependent(std::vector<double> times,
                                                std::vector<double> sigmas) {
    if (times.empty() || times.size() != sigmas.size())
        throw std::invalid_argument(
            "time_dependent: times and sigmas must be nonempty and equal length");
    if (times.front() != 0.0)
        throw std::invalid_argument("time_dependent: first breakpoint must be 0");
    for (size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument(
                "time_dependent: breakpoints must be strictly increasing");
    for (double s : sigmas) check_sigma(s, "time_dependent");
    return LocalVolSurface(TimeDependent{std::move(times), std::move(sigmas)});
}

LocalVolSurface LocalVolSurface::cev(double alpha, double beta) {
    if (!std::isfinite(alpha) || alpha <= 0.0)
        throw std::invalid_argument("cev: alpha must be positive");
    if (!std::isfinite(beta))
        throw std::invalid_argument("cev: beta must be finite");
    return LocalVolSurface(Cev{alpha, beta});
}

LocalVolSurface LocalVolSurface::tabulated(Tabulated table) {
    if (table.times.empty() || table.log_spots.empty())
        throw std::invalid_argument("tabulated: empty axes");
    if (table.sigmas.size() != table.times.size() * table.log_spots.size())
        throw std::invalid_argument("tabulated: value count does not match axes");
    for (size_t i = 1; i < table.times.size(); ++i)
        if (!(table.times[i] > table.times[i - 1]))
            throw std::invalid_argument("tabulated: time axis not increasing");
    for (size_t i = 1; i < table.log_spots.size(); ++i)
        if (!(table.log_spots[i] > table.log_spots[i - 1]))
            throw std::invalid_argument("tabulated: logS axis not increasing");
    for (double s : table.sigmas) check_sigma(s, "tabulated");
    return LocalVolSurface(std::move(table));
}

LocalVolSurface LocalVolSurface::tabulated_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("tabulated surface: cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line))
        throw ConfigError("tabulated surface: empty file '" + path + "'");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "t,logS,sigma")
        throw ConfigError("tabulated surface: expected header 't,logS,sigma', got '" +
                          line + "'");

    struct Row {
        double t, x, sigma;
    };
    std::vector<Row> rows;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ss(line);
        Row r{};
        char c1 = 0, c2 = 0;
        if (!(ss >> r.t >> c1 >> r.x >> c2 >> r.sigma) || c1 != ',' || c2 != ',' ||
            !(ss >> std::ws).eof())
            throw ConfigError("tabulated surface: malformed row at line " +
                              std::to_string(line_no));
        if (!std::isfinite(r.t) || !std::isfinite(r.x) || !std::isfinite(r.sigma) ||
            r.sigma <= 0.0)
            throw ConfigError("tabulated surface: invalid values at line " +
                              std::to_string(line_no));
        rows.push_back(r);
    }
    if (rows.empty())
        throw ConfigError("tabulated surface: no data rows in '" + path + "'");

    // Row-major: the first time block fixes the logS axis, every later block
    // must repeat it exactly.
    Tabulated table;
    size_t i = 0;
    while (i < rows.size() && rows[i].t == rows[0].t) {
        if (!table.log_spots.empty() && !(rows[i].x > table.log_spots.back()))
            throw ConfigError("tabulated surface: logS not strictly increasing "
                              "within a time block");
        table.log_spots.push_back(rows[i].x);
        ++i;
    }
    const size_t nx = table.log_spots.size();
    if (rows.size() % nx != 0)
        throw ConfigError("tabulated surface: incomplete grid (row count not a "
                          "multiple of the logS axis)");
    const size_t nt = rows.size() / nx;
    table.times.reserve(nt);
    table.sigmas.reserve(rows.size());
    for (size_t bi = 0; bi < nt; ++bi) {
        const double t = rows[bi * nx].t;
        if (!table.times.empty() && !(t > table.times.back()))
            throw ConfigError("tabulated surface: time blocks not strictly increasing");
        table.times.push_back(t);
        for (size_t j = 0; j < nx; ++j) {
            const Row& r = rows[bi * nx + j];
            if (r.t != t || r.x != table.log_spots[j])
                throw ConfigError(
                    "tabulated surface: grid not row-major or axis mismatch at data row " +
                    std::to_string(bi * nx + j + 1));
            table.sigmas.push_back(r.sigma);
        }
    }
    return tabulated(std::move(table));
}

double LocalVolSurface::operator()(double t, double spot) const {
    double sigma = std::visit(
        [&](const auto& fam) -> double {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, Constant>) {
                return fam.sigma;
            } else if constexpr (std::is_same_v<T, TimeDependent>) {
                const auto& ts = fam.times;
                if (t <= ts.front()) return fam.sigmas.front();
                auto it = std::lower_bound(ts.begin(), ts.end(), t);
                if (it != ts.end() && *it == t && it != ts.begin()) {
                    // At an interior breakpoint, return the root-mean-square of
                    // the two one-sided values: trapezoid integrals of sigma^2
                    // across the jump then keep their usual order.
                    const size_t k = static_cast<size_t>(it - ts.begin());
                    const double a = fam.sigmas[k - 1], b = fam.sigmas[k];
                    return std::sqrt(0.5 * (a * a + b * b));
                }
                const size_t k = static_cast<size_t>(it - ts.begin());
                return fam.sigmas[k - 1];
            } else if constexpr (std::is_same_v<T, Cev>) {
                return fam.alpha * std::pow(spot, fam.beta - 1.0);
            } else {
                const double x = std::log(spot);
                const auto& tt = fam.times;
                const auto& xx = fam.log_spots;
                const size_t it0 = left_index(tt, t);
                const size_t ix0 = left_index(xx, x);
                const size_t it1 = std::min(it0 + 1, tt.size() - 1);
                const size_t ix1 = std::min(ix0 + 1, xx.size() - 1);
                double wt = 0.0, wx = 0.0;
                if (it1 > it0)
                    wt = std::clamp((t - tt[it0]) / (tt[it1] - tt[it0]), 0.0, 1.0);
                if (ix1 > ix0)
                    wx = std::clamp((x - xx[ix0]) / (xx[ix1] - xx[ix0]), 0.0, 1.0);
                const size_t nx = xx.size();
                const double v00 = fam.sigmas[it0 * nx + ix0];
                const double v01 = fam.sigmas[it0 * nx + ix1];
                const double v10 = fam.sigmas[it1 * nx + ix0];
                const double v11 = fam.sigmas[it1 * nx + ix1];
                return (1.0 - wt) * ((1.0 - wx) * v00 + wx * v01) +
                       wt * ((1.0 - wx) * v10 + wx * v11);
            }
        },
        family_);
    return std::clamp(sigma, clamp_min_, clamp_max_);
}

std::vector<double> LocalVolSurface::time_discontinuities() const {
    if (const auto* td = as<TimeDependent>()) {
        std::vector<double> out;
        for (size_t i = 1; i < td->times.size(); ++i)
            if (td->sigmas[i] != td->sigmas[i - 1]) out.push_back(td->times[i]);
        return out;
    }
    return {};
}

const char* LocalVolSurface::family_name() const {
    switch (family_.index()) {
        case 0: return "constant";
        case 1: return "time_dependent";
        case 2: return "cev";
        default: return "tabulated";
    }
}

} // namespace ivrepr
