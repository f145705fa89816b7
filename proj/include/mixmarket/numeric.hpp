#pragma once

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "mixmarket/errors.hpp"

namespace mixmarket::num {

/// n equally spaced points covering [a, b] inclusive.
inline std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    if (n == 1) {
        out.push_back(a);
        return out;
    }
    const double h = (b - a) / (n - 1);
    for (int i = 0; i < n; ++i) out.push_back(i == n - 1 ? b : a + i * h);
    return out;
}

/// Root of f on [lo, hi] by bisection. Requires a sign change; keeps halving
/// until the bracket is narrower than x_tol or float resolution is hit.
template <class F>
double bisect_root(F&& f, double lo, double hi, double x_tol) {
    double flo = f(lo);
    double fhi = f(hi);
    if (std::isnan(flo) || std::isnan(fhi))
        throw ConvergenceError("bisect_root: NaN at bracket endpoint");
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw ConvergenceError("bisect_root: no sign change on bracket");
    while (hi - lo > x_tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break; // bracket at float resolution
        const double fm = f(mid);
        if (std::isnan(fm)) throw ConvergenceError("bisect_root: NaN inside bracket");
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    return 0.5 * (lo + hi);
}

namespace detail {

inline double simpson(double fa, double fm, double fb, double h) {
    return (fa + 4.0 * fm + fb) * h / 6.0;
}

template <class F>
double adapt_simpson(F& f, double a, double m, double b, double fa, double fm, double fb,
                     double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double err = left + right - whole;
    if (depth <= 0 || std::fabs(err) <= 15.0 * tol) return left + right + err / 15.0;
    return adapt_simpson(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adapt_simpson(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance tol.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol = 1e-9, int max_depth = 48) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    return detail::adapt_simpson(f, a, m, b, fa, fm, fb, detail::simpson(fa, fm, fb, b - a),
                                 tol, max_depth);
}

/// Maximum of f on [a, b] by golden-section search. Returns the best point
/// evaluated (including the endpoints), ties broken toward the smaller x.
template <class F>
std::pair<double, double> golden_section_max(F&& f, double a, double b, double x_tol) {
    constexpr double invphi = 0.6180339887498948482;
    double best_x = a;
    double best_f = f(a);
    auto consider = [&](double x, double fx) {
        if (fx > best_f || (fx == best_f && x < best_x)) {
            best_x = x;
            best_f = fx;
        }
    };
    consider(b, f(b));
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    consider(x1, f1);
    consider(x2, f2);
    while (b - a > x_tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            if (x2 <= x1 || x2 >= b) break;
            f2 = f(x2);
            consider(x2, f2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            if (x1 <= a || x1 >= x2) break;
            f1 = f(x1);
            consider(x1, f1);
        }
    }
    return {best_x, best_f};
}

/// Central finite difference (f(x+h) - f(x-h)) / 2h.
template <class F>
double central_difference(F&& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Compensated (Kahan) accumulator.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

} // namespace mixmarket::num
