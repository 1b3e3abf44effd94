#include "lamespec/trace_fit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "lamespec/domain.hpp"
#include "lamespec/errors.hpp"
#include "lamespec/special_functions.hpp"

namespace lamespec {

namespace {

void require_nonempty(const Spectrum& spectrum) {
    if (spectrum.eigenvalues.empty()) throw Error(ErrorKind::InvalidArgument, "spectrum is empty");
}

double lambda_at(const Spectrum& spectrum, std::size_t one_based) {
    return spectrum.eigenvalues[std::min(one_based, spectrum.count()) - 1];
}

template <typename F>
auto with_stage(const char* stage, F&& f) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const Error& e) {
        throw StageError(stage, e);
    }
}

}  // namespace

TraceSample heat_trace_partial(const Spectrum& spectrum, double t) {
    require_nonempty(spectrum);
    if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "t must be positive");
    TraceSample sample;
    sample.t = t;
    double carry = 0.0;
    for (double lambda : spectrum.eigenvalues) {
        const double y = std::exp(-t * lambda) - carry;
        const double next = sample.theta + y;
        carry = (next - sample.theta) - y;
        sample.theta = next;
    }
    const double half_n = 0.5 * spectrum.dim;
    const double lambda_n = spectrum.eigenvalues.back();
    if (lambda_n > 0.0) {
        const double c = static_cast<double>(spectrum.count()) / std::pow(lambda_n, half_n);
        sample.truncation_bound =
            c * half_n * std::pow(t, -half_n) * special::upper_incomplete_gamma_half_integer(half_n, t * lambda_n);
    }
    return sample;
}

TimeWindow select_window(const Spectrum& spectrum, double tol, double ratio) {
    require_nonempty(spectrum);
    if (!(tol > 0.0) || !(ratio > 1.0)) {
        throw Error(ErrorKind::InvalidArgument, "window tolerance must be > 0 and ratio > 1");
    }
    const std::size_t n_eig = spectrum.count();
    if (n_eig < kMinWindowEigenvalues) {
        throw Error(ErrorKind::EmptyWindow,
                    "spectrum has " + std::to_string(n_eig) + " eigenvalues; at least " +
                        std::to_string(kMinWindowEigenvalues) + " are required",
                    "compute at least " + std::to_string(kMinWindowEigenvalues) + " eigenvalues");
    }
    const double lambda_n = spectrum.eigenvalues.back();
    auto excess = [&](double t) {
        const auto s = heat_trace_partial(spectrum, t);
        return s.truncation_bound / s.theta - tol;
    };
    double lo = std::log(1e-4 / lambda_n);
    double hi = std::log(1e4 / lambda_n);
    if (!(excess(std::exp(lo)) > 0.0) || !(excess(std::exp(hi)) < 0.0)) {
        throw Error(ErrorKind::EmptyWindow, "truncation ratio does not cross the tolerance");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        (excess(std::exp(mid)) > 0.0 ? lo : hi) = mid;
    }
    TimeWindow window;
    window.t_min = std::exp(hi);
    const double lambda_10 = lambda_at(spectrum, 10);
    window.t_max = ratio * window.t_min;
    if (lambda_10 > 0.0) window.t_max = std::min(window.t_max, 1.0 / lambda_10);
    if (!(window.t_max > window.t_min)) {
        const double growth = std::pow(1.5 * window.t_min / window.t_max, 0.5 * spectrum.dim);
        const auto needed = static_cast<std::size_t>(std::ceil(static_cast<double>(n_eig) * growth));
        throw Error(ErrorKind::EmptyWindow,
                    "empty fit window: t_min = " + std::to_string(window.t_min) +
                        " exceeds 1 / lambda_10 = " + std::to_string(window.t_max),
                    "compute roughly N >= " + std::to_string(needed) + " eigenvalues");
    }
    return window;
}

std::vector<TraceSample> sample_window(const Spectrum& spectrum, const TimeWindow& window, int count) {
    if (count < 2) throw Error(ErrorKind::InvalidArgument, "need at least 2 samples");
    if (!(window.t_min > 0.0) || !(window.t_max > window.t_min)) {
        throw Error(ErrorKind::InvalidArgument, "window must satisfy 0 < t_min < t_max");
    }
    std::vector<TraceSample> samples;
    samples.reserve(static_cast<std::size_t>(count));
    const double log_ratio = std::log(window.t_max / window.t_min);
    for (int i = 0; i < count; ++i) {
        const double t = i == count - 1 ? window.t_max : window.t_min * std::exp(log_ratio * i / (count - 1));
        samples.push_back(heat_trace_partial(spectrum, t));
    }
    return samples;
}

FitResult fit_asymptotics(std::span<const TraceSample> samples, int n, const FitOptions& options) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be >= 1");
    if (samples.size() < 8) {
        throw Error(ErrorKind::InvalidArgument, "fit needs at least 8 samples, got " + std::to_string(samples.size()));
    }
    const auto m = static_cast<Eigen::Index>(samples.size());
    const Eigen::Index p = options.guard_term ? 3 : 2;
    Eigen::MatrixXd design(m, p);
    Eigen::VectorXd rhs(m);
    Eigen::VectorXd weight(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto& s = samples[static_cast<std::size_t>(i)];
        if (!(s.t > 0.0) || !(s.theta > 0.0) || !(s.truncation_bound >= 0.0)) {
            throw Error(ErrorKind::InvalidArgument, "trace samples need t > 0, theta > 0, bound >= 0");
        }
        design(i, 0) = 1.0;
        design(i, 1) = std::sqrt(s.t);
        if (options.guard_term) design(i, 2) = s.t;
        rhs[i] = s.theta * std::pow(s.t, 0.5 * n);
        // Standard deviation of theta: the truncation bound plus a relative floor.
        const double sigma = (s.truncation_bound + options.noise_floor * s.theta) * std::pow(s.t, 0.5 * n);
        weight[i] = 1.0 / (sigma * sigma);
    }
    const Eigen::VectorXd root_w = weight.cwiseSqrt();
    const Eigen::MatrixXd weighted = root_w.asDiagonal() * design;
    const Eigen::VectorXd col_scale = weighted.colwise().norm().transpose();
    const Eigen::MatrixXd scaled = weighted * col_scale.cwiseInverse().asDiagonal();

    const Eigen::MatrixXd normal = scaled.transpose() * scaled;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> normal_eigen(normal);
    const double emin = normal_eigen.eigenvalues().minCoeff();
    const double emax = normal_eigen.eigenvalues().maxCoeff();
    const double condition = emin > 0.0 ? emax / emin : INFINITY;
    if (!(condition <= 1e8)) {
        throw Error(ErrorKind::RankDeficient,
                    "normal system condition number " + std::to_string(condition) + " exceeds 1e8",
                    "widen the window or drop the guard term");
    }

    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(scaled);
    const Eigen::VectorXd coef = qr.solve(root_w.cwiseProduct(rhs)).cwiseQuotient(col_scale);
    const Eigen::VectorXd residual = rhs - design * coef;

    FitResult fit;
    fit.a0_hat = coef[0];
    fit.a1_hat = coef[1];
    if (options.guard_term) fit.c_hat = coef[2];
    fit.window = {samples.front().t, samples.back().t};
    fit.n_samples = static_cast<int>(m);
    fit.condition = condition;
    const double wrss = residual.cwiseAbs2().dot(weight);
    fit.residual_rms = std::sqrt(wrss / weight.sum());

    const double variance = m > p ? wrss / static_cast<double>(m - p) : 0.0;
    const Eigen::VectorXd inv_scale = col_scale.cwiseInverse();
    const Eigen::MatrixXd cov = variance * inv_scale.asDiagonal() * normal.inverse() * inv_scale.asDiagonal();
    fit.a0_sigma = std::sqrt(std::max(0.0, cov(0, 0)));
    fit.a1_sigma = std::sqrt(std::max(0.0, cov(1, 1)));
    fit.a0_a1_covariance = cov(0, 1);
    if (options.guard_term) fit.c_sigma = std::sqrt(std::max(0.0, cov(2, 2)));
    return fit;
}

RecoveredGeometry end_to_end_recover(const Spectrum& spectrum, const LameParameters& params, int n,
                                     BoundaryCondition bc, const RecoverOptions& options) {
    with_stage("consistency", [&] {
        if (spectrum.bc != bc) {
            throw Error(ErrorKind::InconsistentInput, "spectrum boundary condition is " +
                                                          std::string(to_string(spectrum.bc)) + ", requested " +
                                                          std::string(to_string(bc)));
        }
        if (!(spectrum.params == params)) {
            throw Error(ErrorKind::InconsistentInput, "spectrum Lame parameters differ from the requested ones");
        }
        if (spectrum.dim != n) {
            throw Error(ErrorKind::InconsistentInput, "spectrum dimension " + std::to_string(spectrum.dim) +
                                                          " differs from n = " + std::to_string(n));
        }
        spectrum.validate();
        return 0;
    });

    const TimeWindow window =
        with_stage("window", [&] { return select_window(spectrum, options.tol, options.window_ratio); });
    const auto samples = with_stage("sampling", [&] { return sample_window(spectrum, window, options.samples); });
    FitOptions fit_options;
    fit_options.guard_term = options.guard_term;
    fit_options.noise_floor = options.noise_floor;
    const FitResult fit = with_stage("fit", [&] { return fit_asymptotics(samples, n, fit_options); });

    RecoveredGeometry out;
    out.fit = fit;
    out.bc = bc;
    out.params = params;
    out.geometry = with_stage("recover", [&] { return recover_geometry(fit.a0_hat, fit.a1_hat, params, n, bc); });
    out.audit = with_stage("audit", [&] { return isoperimetric_audit(out.geometry, options.ball_tolerance); });

    // Delta method: ratio = (B / a1) (A / a0)^{-(n-1)/n}.
    const double k = (n - 1.0) / n;
    const double d_a = -k * out.audit.ratio / fit.a0_hat;
    const double d_b = out.audit.ratio / fit.a1_hat;
    const double var = d_a * d_a * fit.a0_sigma * fit.a0_sigma + d_b * d_b * fit.a1_sigma * fit.a1_sigma +
                       2.0 * d_a * d_b * fit.a0_a1_covariance;
    out.ratio_sigma = std::sqrt(std::max(0.0, var));

    if (spectrum.domain_meta && spectrum.domain_meta->dim() == n) {
        const GeometricData truth = exact_geometry(*spectrum.domain_meta);
        out.truth = truth;
        out.volume_rel_err = std::abs(out.geometry.volume - truth.volume) / truth.volume;
        out.boundary_rel_err = std::abs(out.geometry.boundary_area - truth.boundary_area) / truth.boundary_area;
        if (spectrum.domain_meta->has_corners()) {
            out.notes.emplace_back("domain has corners; boundary coefficient is exploratory");
        }
    }
    if (bc == BoundaryCondition::Neumann && n >= 2) out.notes.emplace_back("natural-BC approximation");
    return out;
}

WeylPoint weyl_point(const Spectrum& spectrum, double volume, double eta) {
    require_nonempty(spectrum);
    WeylPoint point;
    point.eta = eta;
    point.empirical = static_cast<std::size_t>(
        std::upper_bound(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end(), eta) -
        spectrum.eigenvalues.begin());
    point.predicted = weyl_count_prediction(spectrum.params, spectrum.dim, volume, eta);
    point.relative_deviation = static_cast<double>(point.empirical) / point.predicted - 1.0;
    return point;
}

WeylPoint weyl_check(const Spectrum& spectrum, double volume) {
    require_nonempty(spectrum);
    const auto index = static_cast<std::size_t>(std::ceil(0.9 * static_cast<double>(spectrum.count())));
    return weyl_point(spectrum, volume, lambda_at(spectrum, std::max<std::size_t>(index, 1)));
}

std::vector<WeylPoint> weyl_table(const Spectrum& spectrum, double volume, int points) {
    require_nonempty(spectrum);
    if (points < 1) throw Error(ErrorKind::InvalidArgument, "need at least one table point");
    std::vector<WeylPoint> table;
    const double top = spectrum.eigenvalues.back();
    for (int i = 1; i <= points; ++i) table.push_back(weyl_point(spectrum, volume, top * i / points));
    return table;
}

}  // namespace lamespec
