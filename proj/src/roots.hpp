#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace ivrepr {

struct RootResult {
    double x = 0.0;
    double f = 0.0;   // residual at x
    int iterations = 0;
    bool converged = false;
};

// Brent's method on [a,b] with f(a), f(b) of opposite sign (or zero).
// Stops when |f| <= f_tol or the bracket collapses to rounding width.
inline RootResult brent(const std::function<double(double)>& f, double a,
                        double b, double fa, double fb, double f_tol,
                        int max_iter = 200) {
    if (fa * fb > 0.0)
        throw std::invalid_argument("brent: root not bracketed");
    if (std::abs(fa) < std::abs(fb)) {
        std::swap(a, b);
        std::swap(fa, fb);
    }
    double c = a, fc = fa;
    double d = b - a, e = d;
    RootResult res;
    for (int iter = 1; iter <= max_iter; ++iter) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 =
            2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 1e-300;
        const double xm = 0.5 * (c - b);
        if (std::abs(fb) <= f_tol || std::abs(xm) <= tol1 || fb == 0.0) {
            res.x = b;
            res.f = fb;
            res.iterations = iter;
            res.converged = std::abs(fb) <= f_tol || fb == 0.0;
            return res;
        }
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            // inverse quadratic / secant step
            const double s = fb / fa;
            double p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q),
                                   std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            e = d = b - a;
        }
    }
    res.x = b;
    res.f = fb;
    res.iterations = max_iter;
    res.converged = false;
    return res;
}

inline RootResult brent(const std::function<double(double)>& f, double a,
                        double b, double f_tol, int max_iter = 200) {
    return brent(f, a, b, f(a), f(b), f_tol, max_iter);
}

} // namespace ivrepr
