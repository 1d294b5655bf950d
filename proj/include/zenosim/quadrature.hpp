#pragma once

#include <functional>

namespace zenosim::quad {

struct Result {
    double value = 0.0;
    double abs_err = 0.0;

    Result& operator+=(const Result& other) {
        value += other.value;
        abs_err += other.abs_err;
        return *this;
    }
};

using Fn = std::function<double(double)>;

// Adaptive Simpson on [a, b]; subdivides until the local error estimate drops
// below tol (absolute). max_panel pre-splits the interval so that slowly
// varying oscillations cannot alias past the initial samples.
Result adaptive_simpson(const Fn& f, double a, double b, double tol,
                        double max_panel = 0.0);

// Integral of an eventually-alternating oscillatory integrand over
// [a, infinity), partitioned into cells of width `cell` (one sign-lobe each).
// Plain summation when the cells die quickly; Euler transformation of the
// partial sums otherwise, which also evaluates conditionally convergent
// tails (envelopes as slow as 1/omega).
Result oscillatory_cells(const Fn& f, double a, double cell, double tol,
                         int max_cells = 384);

} // namespace zenosim::quad
