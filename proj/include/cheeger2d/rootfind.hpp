#pragma once

#include <cmath>

namespace cheeger2d {

// Root of a decreasing function with f(lo) > 0 > f(hi); absolute tolerance on
// the bracket width.
template <typename F>
double bisect_decreasing(F&& f, double lo, double hi, double tol, int max_iter = 200) {
    for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
        double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Threshold of a monotone predicate: pred(lo) == false, pred(hi) == true.
template <typename P>
double bisect_predicate(P&& pred, double lo, double hi, double tol, int max_iter = 200) {
    for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
        double mid = 0.5 * (lo + hi);
        (pred(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

// Golden-section minimization of a unimodal function on [lo, hi].
template <typename F>
double golden_min(F&& f, double lo, double hi, double tol, int max_iter = 200) {
    const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < max_iter && b - a > tol; ++i) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace cheeger2d
