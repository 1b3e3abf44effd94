#pragma once

#include <functional>
#include <limits>

namespace lamespec::quadrature {

struct Result {
    double value = 0.0;
    double error_estimate = 0.0;
    int intervals = 0;
};

struct Options {
    double abs_tol = 1e-12;
    double rel_tol = 1e-13;
    int max_intervals = 20000;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature on [a, b]. `b` may be
/// +infinity, in which case x = a + u / (1 - u) maps onto [0, 1).
/// Throws NonConvergence when the interval budget runs out before the
/// requested tolerance is met.
Result integrate(const std::function<double(double)>& f, double a, double b, Options options = {});

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace lamespec::quadrature
