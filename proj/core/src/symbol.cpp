#include "lamespec/symbol.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "lamespec/errors.hpp"

namespace lamespec {

namespace {

using Complex = std::complex<double>;

/// Row-major dense complex matrix, only as large as the symbol (n <= ~8).
struct DenseComplex {
    std::size_t n;
    std::vector<Complex> a;

    explicit DenseComplex(std::size_t dim) : n(dim), a(dim * dim) {}
    Complex& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    Complex operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

/// Partial-pivot LU factorization held in place, with the row permutation.
class DenseLu {
public:
    DenseLu(DenseComplex m, double pivot_floor) : lu_(std::move(m)), perm_(lu_.n) {
        const std::size_t n = lu_.n;
        for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t piv = k;
            double best = std::abs(lu_(k, k));
            for (std::size_t i = k + 1; i < n; ++i) {
                if (std::abs(lu_(i, k)) > best) {
                    best = std::abs(lu_(i, k));
                    piv = i;
                }
            }
            if (!(best > pivot_floor)) {
                throw Error(ErrorKind::SingularMatrix,
                            "lambda I - A is numerically singular (pivot " + std::to_string(best) +
                                " at column " + std::to_string(k) + ")",
                            "move lambda away from tau|xi|^2 and (2tau+mu)|xi|^2");
            }
            if (piv != k) {
                for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
                std::swap(perm_[k], perm_[piv]);
                sign_ = -sign_;
            }
            for (std::size_t i = k + 1; i < n; ++i) {
                const Complex f = lu_(i, k) / lu_(k, k);
                lu_(i, k) = f;
                for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
            }
        }
    }

    Complex determinant() const {
        Complex det = sign_;
        for (std::size_t k = 0; k < lu_.n; ++k) det *= lu_(k, k);
        return det;
    }

    DenseComplex inverse() const {
        const std::size_t n = lu_.n;
        DenseComplex inv(n);
        std::vector<Complex> col(n);
        for (std::size_t c = 0; c < n; ++c) {
            for (std::size_t i = 0; i < n; ++i) col[i] = perm_[i] == c ? 1.0 : 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < i; ++j) col[i] -= lu_(i, j) * col[j];
            }
            for (std::size_t ii = n; ii-- > 0;) {
                for (std::size_t j = ii + 1; j < n; ++j) col[ii] -= lu_(ii, j) * col[j];
                col[ii] /= lu_(ii, ii);
            }
            for (std::size_t i = 0; i < n; ++i) inv(i, c) = col[i];
        }
        return inv;
    }

private:
    DenseComplex lu_;
    std::vector<std::size_t> perm_;
    double sign_ = 1.0;
};

DenseComplex shifted_symbol(const SymbolMatrix& a, Complex lambda) {
    DenseComplex m(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) m(i, j) = -a(i, j);
        m(i, i) += lambda;
    }
    return m;
}

double pole_scale(const LameParameters& params, double xi_norm_sq) {
    return std::max(1.0, params.pressure() * xi_norm_sq);
}

void require_dimension(int n) {
    if (n < 1) {
        throw Error(ErrorKind::InvalidArgument, "dimension n must be >= 1, got " + std::to_string(n));
    }
}

void require_xi_norm(double xi_norm_sq) {
    if (!(xi_norm_sq >= 0.0) || !std::isfinite(xi_norm_sq)) {
        throw Error(ErrorKind::InvalidArgument, "|xi|^2 must be finite and non-negative");
    }
}

Complex trace_closed_unchecked(const LameParameters& p, int n, double xi_norm_sq, Complex lambda) {
    const double s = p.shear() * xi_norm_sq;
    const double q = p.pressure() * xi_norm_sq;
    if (n == 1) return 1.0 / (lambda - q);
    const double numerator_coeff = ((2.0 * n - 1.0) * p.tau() + (n - 1.0) * p.mu()) * xi_norm_sq;
    return (static_cast<double>(n) * lambda - numerator_coeff) / ((lambda - s) * (lambda - q));
}

}  // namespace

SymbolMatrix::SymbolMatrix(LameParameters params, std::vector<double> xi)
    : params_(params), xi_(std::move(xi)), xi_norm_sq_(0.0) {
    if (xi_.empty()) {
        throw Error(ErrorKind::InvalidArgument, "xi must have at least one component");
    }
    for (double v : xi_) {
        if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "xi must be finite");
        xi_norm_sq_ += v * v;
    }
    const std::size_t n = xi_.size();
    const double coupling = params_.tau() + params_.mu();
    entries_.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            entries_[i * n + j] = coupling * xi_[i] * xi_[j];
        }
        entries_[i * n + i] += params_.tau() * xi_norm_sq_;
    }
}

SymbolMatrix build_symbol(const LameParameters& params, std::span<const double> xi) {
    return SymbolMatrix(params, std::vector<double>(xi.begin(), xi.end()));
}

ComplexScalar resolvent_trace_closed(const LameParameters& params, int n, double xi_norm_sq,
                                     ComplexScalar lambda, double pole_tolerance) {
    require_dimension(n);
    require_xi_norm(xi_norm_sq);
    const Complex z = lambda.value();
    const double threshold = pole_tolerance * pole_scale(params, xi_norm_sq);
    const double shear_pole = params.shear() * xi_norm_sq;
    const double pressure_pole = params.pressure() * xi_norm_sq;
    if (std::abs(z - pressure_pole) < threshold || (n > 1 && std::abs(z - shear_pole) < threshold)) {
        throw Error(ErrorKind::PoleProximity,
                    "lambda lies within " + std::to_string(threshold) +
                        " of a pole of the resolvent trace",
                    "choose lambda away from tau|xi|^2 and (2tau+mu)|xi|^2");
    }
    return ComplexScalar::from(trace_closed_unchecked(params, n, xi_norm_sq, z));
}

ComplexScalar resolvent_trace_bruteforce(const LameParameters& params, std::span<const double> xi,
                                         ComplexScalar lambda, double pivot_tolerance) {
    const SymbolMatrix a = build_symbol(params, xi);
    const DenseLu lu(shifted_symbol(a, lambda.value()),
                     pivot_tolerance * pole_scale(params, a.xi_norm_sq()));
    const DenseComplex inv = lu.inverse();
    Complex trace = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) trace += inv(i, i);
    return ComplexScalar::from(trace);
}

ComplexScalar symbol_determinant_closed(const LameParameters& params, int n, double xi_norm_sq,
                                        ComplexScalar lambda) {
    require_dimension(n);
    require_xi_norm(xi_norm_sq);
    const Complex z = lambda.value();
    const Complex shear_factor = z - params.shear() * xi_norm_sq;
    const Complex pressure_factor = z - params.pressure() * xi_norm_sq;
    return ComplexScalar::from(std::pow(shear_factor, n - 1) * pressure_factor);
}

ComplexScalar symbol_determinant_dense(const LameParameters& params, std::span<const double> xi,
                                       ComplexScalar lambda) {
    const SymbolMatrix a = build_symbol(params, xi);
    // A zero pivot is a legitimate zero determinant here, not an error.
    DenseComplex m = shifted_symbol(a, lambda.value());
    try {
        return ComplexScalar::from(DenseLu(std::move(m), 0.0).determinant());
    } catch (const Error&) {
        return {0.0, 0.0};
    }
}

double parametrix_residual(const LameParameters& params, std::span<const double> xi,
                           ComplexScalar lambda, double pole_tolerance) {
    const SymbolMatrix a = build_symbol(params, xi);
    // Validates pole proximity with the same rule as the closed form.
    (void)resolvent_trace_closed(params, static_cast<int>(a.dim()), a.xi_norm_sq(), lambda,
                                 pole_tolerance);
    const DenseComplex shifted = shifted_symbol(a, lambda.value());
    const DenseComplex b0 = DenseLu(shifted, 0.0).inverse();
    const auto n = static_cast<Eigen::Index>(a.dim());
    Eigen::MatrixXcd residual(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            Complex sum = 0.0;
            for (Eigen::Index k = 0; k < n; ++k) {
                sum += b0(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) *
                       shifted(static_cast<std::size_t>(k), static_cast<std::size_t>(j));
            }
            residual(i, j) = sum - (i == j ? 1.0 : 0.0);
        }
    }
    if (residual.isZero(0.0)) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(residual);
    return svd.singularValues()(0);
}

double residue_heat_symbol(const LameParameters& params, int n, double xi_norm_sq, double t) {
    require_dimension(n);
    require_xi_norm(xi_norm_sq);
    if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "t must be positive");
    return (n - 1.0) * std::exp(-t * params.shear() * xi_norm_sq) +
           std::exp(-t * params.pressure() * xi_norm_sq);
}

Contour default_contour(const LameParameters& params, double xi_norm_sq, int nodes) {
    const double center = 0.5 * (params.shear() + params.pressure()) * xi_norm_sq;
    const double half_separation = 0.5 * (params.pressure() - params.shear()) * xi_norm_sq;
    double radius = 1.5 * half_separation + std::abs(center);
    if (radius == 0.0) radius = 1.0;
    return {center, radius, nodes};
}

double contour_integral_oracle(const LameParameters& params, int n, double xi_norm_sq, double t,
                               std::optional<Contour> contour) {
    require_dimension(n);
    require_xi_norm(xi_norm_sq);
    if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "t must be positive");
    const Contour c = contour.value_or(default_contour(params, xi_norm_sq));
    if (c.nodes < 16) {
        throw Error(ErrorKind::ContourMisconfigured, "contour needs at least 16 nodes");
    }
    if (!(c.radius > 0.0) || !std::isfinite(c.radius) || !std::isfinite(c.center)) {
        throw Error(ErrorKind::ContourMisconfigured, "contour radius must be positive and finite");
    }
    for (double pole : {params.shear() * xi_norm_sq, params.pressure() * xi_norm_sq}) {
        if (!(std::abs(pole - c.center) < c.radius)) {
            throw Error(ErrorKind::ContourMisconfigured,
                        "contour does not strictly enclose the pole at " + std::to_string(pole),
                        "increase the radius or recentre the circle");
        }
    }
    // Trapezoid rule on lambda = c + r e^{i phi}; d lambda = i (lambda - c) d phi.
    Complex sum = 0.0;
    const double step = 2.0 * std::numbers::pi / c.nodes;
    for (int k = 0; k < c.nodes; ++k) {
        const Complex offset = std::polar(c.radius, step * k);
        const Complex z = c.center + offset;
        sum += std::exp(-t * z) * trace_closed_unchecked(params, n, xi_norm_sq, z) * offset;
    }
    return (sum / static_cast<double>(c.nodes)).real();
}

double SymbolCheckReport::max_rel_err() const noexcept {
    return std::max({max_rel_err_trace, max_rel_err_determinant, max_rel_err_scaling,
                     max_rel_err_eigenvalues});
}

SymbolCheckReport symbol_property_check(int n, int draws, std::uint64_t seed, double tolerance) {
    require_dimension(n);
    if (draws < 1) throw Error(ErrorKind::InvalidArgument, "draws must be >= 1");

    SymbolCheckReport report;
    report.n = n;
    report.draws = draws;
    report.seed = seed;
    report.tolerance = tolerance;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto log_uniform = [&](double lo, double hi) {
        return lo * std::pow(hi / lo, unit(rng));
    };

    auto rel = [](Complex a, Complex b) { return std::abs(a - b) / std::abs(b); };

    for (int d = 0; d < draws; ++d) {
        const double tau = log_uniform(0.1, 10.0);
        const double mu = -tau + log_uniform(0.05, 10.0) * tau;
        const LameParameters params(tau, mu);

        std::vector<double> xi(static_cast<std::size_t>(n));
        const double scale = log_uniform(0.1, 10.0);
        double norm_sq = 0.0;
        do {
            norm_sq = 0.0;
            for (double& v : xi) {
                v = scale * gauss(rng);
                norm_sq += v * v;
            }
        } while (norm_sq == 0.0);

        const double shear_pole = params.shear() * norm_sq;
        const double pressure_pole = params.pressure() * norm_sq;
        const double min_distance = 0.1 * pressure_pole;
        Complex z;
        do {
            z = {pressure_pole * (-2.0 + 5.0 * unit(rng)), pressure_pole * (-1.0 + 2.0 * unit(rng))};
        } while (std::abs(z - shear_pole) < min_distance || std::abs(z - pressure_pole) < min_distance);
        const ComplexScalar lambda = ComplexScalar::from(z);

        const Complex closed = resolvent_trace_closed(params, n, norm_sq, lambda).value();
        const Complex brute = resolvent_trace_bruteforce(params, xi, lambda).value();
        report.max_rel_err_trace = std::max(report.max_rel_err_trace, rel(closed, brute));

        const Complex det_closed = symbol_determinant_closed(params, n, norm_sq, lambda).value();
        const Complex det_dense = symbol_determinant_dense(params, xi, lambda).value();
        report.max_rel_err_determinant =
            std::max(report.max_rel_err_determinant, rel(det_closed, det_dense));

        report.max_parametrix_residual =
            std::max(report.max_parametrix_residual, parametrix_residual(params, xi, lambda));

        const double s = log_uniform(0.1, 10.0);
        const Complex scaled =
            resolvent_trace_closed(params, n, s * norm_sq, ComplexScalar::from(s * z)).value();
        report.max_rel_err_scaling = std::max(report.max_rel_err_scaling, rel(scaled * s, closed));

        const SymbolMatrix a(params, xi);
        Eigen::MatrixXd dense(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) dense(i, j) = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dense, Eigen::EigenvaluesOnly);
        for (int i = 0; i < n; ++i) {
            const double expected = i + 1 < n ? shear_pole : pressure_pole;
            report.max_rel_err_eigenvalues = std::max(
                report.max_rel_err_eigenvalues, std::abs(eig.eigenvalues()(i) - expected) / pressure_pole);
        }
    }
    report.pass = report.max_rel_err_trace < tolerance && report.max_rel_err_determinant < tolerance &&
                  report.max_parametrix_residual < tolerance && report.max_rel_err_scaling < tolerance &&
                  report.max_rel_err_eigenvalues < 1e-12;
    return report;
}

}  // namespace lamespec
