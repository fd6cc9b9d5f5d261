// numerics.hpp - one-dimensional search primitives used by the correlator
// quadrature and the inequality optimizers.
#pragma once

#include <cmath>
#include <functional>

namespace tbell::numerics {

struct Extremum {
    double x;
    double value;
};

// Golden-section search for the maximum of a unimodal f on [a, b]; stops when
// the bracket is narrower than tol.
Extremum golden_section_maximize(const std::function<double(double)>& f, double a, double b, double tol);

// Locates the point in [lo, hi] where pred changes value, given pred(lo) != pred(hi).
// Returns the midpoint of the final bracket of width <= tol.
double bisect_flip(const std::function<bool(double)>& pred, double lo, double hi, double tol);

// Root of f on [lo, hi] by bisection. f(lo) and f(hi) must not share a strict
// sign; an endpoint with f == 0 is returned as is.
double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol);

}  // namespace tbell::numerics
