#pragma once

#include <vector>

namespace lamespec::special {

/// Gamma(x) for x > 0 by the Lanczos approximation (g = 7, 9 terms),
/// relative accuracy ~1e-15 on the positive axis.
double gamma(double x);

/// Upper incomplete gamma Gamma(s, x) for s a positive integer or
/// half-integer, x >= 0, via the recurrence from Gamma(1, x) and Gamma(1/2, x).
double upper_incomplete_gamma_half_integer(double s, double x);

/// J_m(x) by the ascending power series. Accurate for moderate x (< ~12);
/// beyond that cancellation destroys it.
double bessel_j_series(int m, double x);

/// J_0(x) ... J_{max_order}(x) for x >= 0 by Miller's backward recurrence,
/// normalised with J_0 + 2 sum_k J_{2k} = 1.
std::vector<double> bessel_j_sequence(int max_order, double x);

/// J_m(x) for integer m >= 0 (negative x handled by parity).
double bessel_j(int m, double x);

/// J_m'(x) = (J_{m-1}(x) - J_{m+1}(x)) / 2, with J_0' = -J_1.
double bessel_j_derivative(int m, double x);

}  // namespace lamespec::special
