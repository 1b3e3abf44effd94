#include "lamespec/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "lamespec/errors.hpp"

namespace lamespec::special {

double gamma(double x) {
    if (!(x > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "gamma is only implemented for x > 0");
    }
    static constexpr std::array<double, 9> kCoeffs = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    if (x < 0.5) {
        // Reflection keeps the series in its accurate half-plane.
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma(1.0 - x));
    }
    const double z = x - 1.0;
    double sum = kCoeffs[0];
    for (std::size_t i = 1; i < kCoeffs.size(); ++i) sum += kCoeffs[i] / (z + static_cast<double>(i));
    const double g = 7.0;
    const double t = z + g + 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * sum;
}

double upper_incomplete_gamma_half_integer(double s, double x) {
    const double twice = 2.0 * s;
    if (!(s > 0.0) || std::abs(twice - std::round(twice)) > 1e-12 || !(x >= 0.0)) {
        throw Error(ErrorKind::InvalidArgument,
                    "incomplete gamma needs s in {1/2, 1, 3/2, ...} and x >= 0");
    }
    const bool half = static_cast<long>(std::round(twice)) % 2 == 1;
    double a = half ? 0.5 : 1.0;
    double value = half ? std::sqrt(std::numbers::pi) * std::erfc(std::sqrt(x)) : std::exp(-x);
    while (a < s - 0.25) {
        value = a * value + std::pow(x, a) * std::exp(-x);
        a += 1.0;
    }
    return value;
}

double bessel_j_series(int m, double x) {
    if (m < 0) throw Error(ErrorKind::InvalidArgument, "Bessel order must be non-negative");
    // Extended precision absorbs the cancellation between terms for x up to ~10.
    const long double half = 0.5L * x;
    long double term = 1.0L;
    for (int k = 1; k <= m; ++k) term *= half / k;
    long double sum = term;
    const long double q = -half * half;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<long double>(k) * (k + m));
        sum += term;
        if (std::abs(term) <= 1e-21L * std::abs(sum)) break;
    }
    return static_cast<double>(sum);
}

std::vector<double> bessel_j_sequence(int max_order, double x) {
    if (max_order < 0) throw Error(ErrorKind::InvalidArgument, "Bessel order must be non-negative");
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw Error(ErrorKind::InvalidArgument, "bessel_j_sequence needs finite x >= 0");
    }
    std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
    if (x == 0.0) {
        out[0] = 1.0;
        return out;
    }
    // Start well above both the order and the turning point x; recurrence
    // downward is stable for the minimal solution J.
    const double top = std::max(static_cast<double>(max_order), x);
    int start = static_cast<int>(top + 20.0 + 4.0 * std::sqrt(top) + 10.0 * std::cbrt(top));
    if (start % 2) ++start;

    std::vector<double> j(static_cast<std::size_t>(start) + 2, 0.0);
    j[static_cast<std::size_t>(start) + 1] = 0.0;
    j[static_cast<std::size_t>(start)] = 1e-300;
    double norm = 0.0;
    for (int k = start; k >= 1; --k) {
        const auto ku = static_cast<std::size_t>(k);
        j[ku - 1] = (2.0 * k / x) * j[ku] - j[ku + 1];
        if (std::abs(j[ku - 1]) > 1e250) {
            for (std::size_t i = ku - 1; i < j.size(); ++i) j[i] *= 1e-250;
        }
    }
    norm = j[0];
    for (int k = 2; k <= start; k += 2) norm += 2.0 * j[static_cast<std::size_t>(k)];
    for (int m = 0; m <= max_order; ++m) {
        out[static_cast<std::size_t>(m)] = j[static_cast<std::size_t>(m)] / norm;
    }
    return out;
}

double bessel_j(int m, double x) {
    if (m < 0) throw Error(ErrorKind::InvalidArgument, "Bessel order must be non-negative");
    const double sign = (x < 0.0 && (m % 2)) ? -1.0 : 1.0;
    return sign * bessel_j_sequence(m, std::abs(x))[static_cast<std::size_t>(m)];
}

double bessel_j_derivative(int m, double x) {
    if (m < 0) throw Error(ErrorKind::InvalidArgument, "Bessel order must be non-negative");
    const double sign = (x < 0.0 && !(m % 2)) ? -1.0 : 1.0;
    const auto seq = bessel_j_sequence(m + 1, std::abs(x));
    const auto mu = static_cast<std::size_t>(m);
    if (m == 0) return -sign * seq[1];
    return sign * 0.5 * (seq[mu - 1] - seq[mu + 1]);
}

}  // namespace lamespec::special
