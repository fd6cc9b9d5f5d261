#include "tbell/numerics.hpp"

#include <stdexcept>

namespace tbell::numerics {

Extremum golden_section_maximize(const std::function<double(double)>& f, double a, double b, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        // Bracket stopped shrinking in floating point.
        if (!(c < d)) {
            break;
        }
    }
    const double x = 0.5 * (a + b);
    const double fx = f(x);
    if (fc > fx && fc >= fd) {
        return {c, fc};
    }
    if (fd > fx) {
        return {d, fd};
    }
    return {x, fx};
}

double bisect_flip(const std::function<bool(double)>& pred, double lo, double hi, double tol) {
    const bool at_lo = pred(lo);
    if (at_lo == pred(hi)) {
        throw std::invalid_argument("bisect_flip: predicate does not change over the bracket");
    }
    for (int iter = 0; iter < 200 && std::abs(hi - lo) > tol; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) {
            break;
        }
        if (pred(mid) == at_lo) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
    const double f_lo = f(lo);
    if (f_lo == 0.0) {
        return lo;
    }
    const double f_hi = f(hi);
    if (f_hi == 0.0) {
        return hi;
    }
    if ((f_lo > 0.0) == (f_hi > 0.0)) {
        throw std::invalid_argument("bisect_root: root is not bracketed");
    }
    const bool lo_positive = f_lo > 0.0;
    return bisect_flip([&](double x) { return (f(x) > 0.0) == lo_positive; }, lo, hi, tol);
}

}  // namespace tbell::numerics
