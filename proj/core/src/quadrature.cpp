#include "lamespec/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "lamespec/errors.hpp"

namespace lamespec::quadrature {

namespace {

// Kronrod 15-point abscissae/weights with the embedded Gauss 7-point weights.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

template <typename F>
Segment kronrod(const F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod_sum = fc * kKronrodWeights[7];
    double gauss_sum = fc * kGaussWeights[3];
    for (std::size_t i = 0; i < 7; ++i) {
        const double dx = half * kNodes[i];
        const double pair = f(center - dx) + f(center + dx);
        kronrod_sum += kKronrodWeights[i] * pair;
        if (i % 2 == 1) gauss_sum += kGaussWeights[i / 2] * pair;
    }
    const double value = kronrod_sum * half;
    const double error = std::abs((kronrod_sum - gauss_sum) * half);
    return {a, b, value, error};
}

template <typename F>
Result adaptive(const F& f, double a, double b, const Options& options) {
    std::priority_queue<Segment> heap;
    Segment first = kronrod(f, a, b);
    double total = first.value;
    double total_error = first.error;
    heap.push(first);
    int intervals = 1;
    while (total_error > std::max(options.abs_tol, options.rel_tol * std::abs(total))) {
        if (intervals >= options.max_intervals) {
            throw Error(ErrorKind::NonConvergence,
                        "adaptive quadrature exceeded " + std::to_string(options.max_intervals) +
                            " intervals (error estimate " + std::to_string(total_error) + ")");
        }
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Segment left = kronrod(f, worst.a, mid);
        Segment right = kronrod(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++intervals;
        // Recompute from scratch now and then to flush accumulated round-off.
        if (intervals % 64 == 0) {
            std::vector<Segment> all;
            total = total_error = 0.0;
            while (!heap.empty()) {
                all.push_back(heap.top());
                heap.pop();
            }
            for (const Segment& s : all) {
                total += s.value;
                total_error += s.error;
                heap.push(s);
            }
        }
    }
    return {total, total_error, intervals};
}

}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b, Options options) {
    if (std::isnan(a) || std::isnan(b) || !(b >= a) || std::isinf(a)) {
        throw Error(ErrorKind::InvalidArgument, "quadrature interval must satisfy finite a <= b");
    }
    if (a == b) return {};
    if (std::isinf(b)) {
        auto mapped = [&](double u) {
            if (u >= 1.0) return 0.0;
            const double one_minus = 1.0 - u;
            return f(a + u / one_minus) / (one_minus * one_minus);
        };
        return adaptive(mapped, 0.0, 1.0, options);
    }
    return adaptive(f, a, b, options);
}

}  // namespace lamespec::quadrature
