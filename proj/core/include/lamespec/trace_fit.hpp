#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lamespec/heat_kernel.hpp"
#include "lamespec/spectrum.hpp"

namespace lamespec {

struct TraceSample {
    double t = 0.0;
    double theta = 0.0;             ///< partial trace sum_k exp(-t lambda_k)
    double truncation_bound = 0.0;  ///< estimated mass of the eigenvalues beyond lambda_N
};

/// The tail bound integrates exp(-t eta) against the Weyl density c (n/2)
/// eta^{n/2 - 1}, with c = N / lambda_N^{n/2} fitted to the spectrum itself,
/// giving c (n/2) t^{-n/2} Gamma(n/2, t lambda_N).
TraceSample heat_trace_partial(const Spectrum& spectrum, double t);

struct TimeWindow {
    double t_min = 0.0;
    double t_max = 0.0;
};

inline constexpr std::size_t kMinWindowEigenvalues = 50;

/// t_min solves truncation_bound / theta = tol; t_max = min(ratio t_min, 1 / lambda_10).
/// Throws EmptyWindow when the spectrum is too short.
TimeWindow select_window(const Spectrum& spectrum, double tol = 1e-4, double ratio = 20.0);

/// `count` geometrically spaced samples covering the window, endpoints included.
std::vector<TraceSample> sample_window(const Spectrum& spectrum, const TimeWindow& window, int count = 16);

struct FitOptions {
    /// Adds C t to the model; C is reported but does not enter recovery.
    bool guard_term = true;
    /// Relative noise floor added to the truncation bound when weighting samples.
    double noise_floor = 1e-8;
};

struct FitResult {
    double a0_hat = 0.0;
    double a1_hat = 0.0;
    std::optional<double> c_hat;
    TimeWindow window;
    double residual_rms = 0.0;
    double condition = 0.0;  ///< of the column-scaled normal matrix
    int n_samples = 0;
    double a0_sigma = 0.0;
    double a1_sigma = 0.0;
    double a0_a1_covariance = 0.0;
    std::optional<double> c_sigma;
};

/// Weighted least squares for theta t^{n/2} = A + B sqrt(t) (+ C t).
/// Throws RankDeficient when the condition number exceeds 1e8.
FitResult fit_asymptotics(std::span<const TraceSample> samples, int n, const FitOptions& options = {});

struct RecoverOptions {
    double tol = 1e-4;
    double window_ratio = 20.0;
    int samples = 16;
    bool guard_term = true;
    double noise_floor = 1e-8;
    double ball_tolerance = kDefaultBallTolerance;
};

struct RecoveredGeometry {
    GeometricData geometry;
    FitResult fit;
    IsoperimetricAudit audit;
    double ratio_sigma = 0.0;  ///< propagated standard deviation of the isoperimetric ratio
    std::optional<double> volume_rel_err;
    std::optional<double> boundary_rel_err;
    std::optional<GeometricData> truth;
    BoundaryCondition bc = BoundaryCondition::Dirichlet;
    LameParameters params{1.0, 0.0};
    std::vector<std::string> notes;
};

/// select_window -> sample_window -> fit_asymptotics -> recover_geometry ->
/// isoperimetric_audit. Errors are rethrown as StageError naming the stage.
RecoveredGeometry end_to_end_recover(const Spectrum& spectrum, const LameParameters& params, int n,
                                     BoundaryCondition bc, const RecoverOptions& options = {});

struct WeylPoint {
    double eta = 0.0;
    std::size_t empirical = 0;
    double predicted = 0.0;
    double relative_deviation = 0.0;  ///< empirical / predicted - 1
};

/// Counts eigenvalues <= eta against the leading Weyl law for the given volume.
WeylPoint weyl_point(const Spectrum& spectrum, double volume, double eta);
/// The check at eta = lambda_{ceil(0.9 N)}.
WeylPoint weyl_check(const Spectrum& spectrum, double volume);
/// `points` evenly spaced eta values up to lambda_N.
std::vector<WeylPoint> weyl_table(const Spectrum& spectrum, double volume, int points);

}  // namespace lamespec
