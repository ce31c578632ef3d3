#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <string>

#include "steklov/errors.hpp"

namespace steklov {

struct RootResult {
    double root = 0.0;
    double f_root = 0.0;   // residual of f at the returned root
    double lo = 0.0;       // bracket actually used
    double hi = 0.0;
    int iterations = 0;
};

/**
 * Brent's method on a sign-changing bracket [a, b]. Derivative-free,
 * combines bisection with inverse quadratic interpolation; terminates at
 * relative tolerance rel_tol on the abscissa.
 *
 * Throws numerical_error if f(a) and f(b) do not straddle zero.
 */
inline RootResult brent(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-14, int max_iter = 200) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return {a, 0.0, a, b, 0};
    if (fb == 0.0) return {b, 0.0, a, b, 0};
    if ((fa > 0.0) == (fb > 0.0)) {
        throw numerical_error("brent: no sign change on bracket [" + std::to_string(a) + ", " +
                              std::to_string(b) + "]");
    }
    const double a0 = a, b0 = b;
    double c = a, fc = fa;
    double d = b - a, e = d;
    int it = 0;
    for (; it < max_iter; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a; fc = fa; d = b - a; e = d;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::fabs(b) + 0.5 * rel_tol * std::fabs(b);
        const double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0) break;
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            double p, q;
            const double s = fb / fa;
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
            p = std::fabs(p);
            if (2.0 * p < std::fmin(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
                e = d; d = p / q;
            } else {
                d = xm; e = d;
            }
        } else {
            d = xm; e = d;
        }
        a = b; fa = fb;
        b += (std::fabs(d) > tol1) ? d : std::copysign(tol1, xm);
        fb = f(b);
    }
    return {b, fb, a0, b0, it};
}

/// Grows hi geometrically until f changes sign on [lo, hi] (or throws after
/// max_grow doublings). Used when an analytic upper bracket end might sit
/// exactly on the root.
inline double ensure_upper_bracket(const std::function<double(double)>& f, double lo, double hi,
                                   int max_grow = 60) {
    const double flo = f(lo);
    double fhi = f(hi);
    for (int i = 0; i < max_grow && (flo > 0.0) == (fhi > 0.0); ++i) {
        hi = lo + 2.0 * (hi - lo);
        fhi = f(hi);
    }
    if ((flo > 0.0) == (f(hi) > 0.0)) {
        throw numerical_error("ensure_upper_bracket: no sign change found");
    }
    return hi;
}

struct RichardsonResult {
    double order = std::numeric_limits<double>::quiet_NaN();
    double limit = 0.0;
};

/**
 * Extrapolates a sequence v_i computed at resolutions N_i = N_0 * ratio^i
 * (ratio > 1) assuming v_i = v* + C N_i^{-p}. The order p is fitted from the
 * last three values; if the differences have collapsed to roundoff the last
 * value is returned unchanged with order NaN.
 */
inline RichardsonResult richardson_extrapolate(std::span<const double> values, double ratio) {
    if (values.size() < 3) {
        throw domain_error("richardson_extrapolate: need at least 3 values");
    }
    const double v1 = values[values.size() - 3];
    const double v2 = values[values.size() - 2];
    const double v3 = values[values.size() - 1];
    const double d12 = v2 - v1;
    const double d23 = v3 - v2;
    const double scale = std::fmax(std::fabs(v3), 1e-300);
    if (std::fabs(d23) < 1e-15 * scale || d12 / d23 <= 1.0) {
        return {std::numeric_limits<double>::quiet_NaN(), v3};
    }
    const double p = std::log(d12 / d23) / std::log(ratio);
    const double limit = v3 + d23 / (std::pow(ratio, p) - 1.0);
    return {p, limit};
}

} // namespace steklov
