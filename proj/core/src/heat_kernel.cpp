#include "lamespec/heat_kernel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lamespec/errors.hpp"
#include "lamespec/quadrature.hpp"
#include "lamespec/special_functions.hpp"

namespace lamespec {

namespace {

constexpr double kPi = std::numbers::pi;

void require_dimension(int n) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be >= 1");
}

/// (n-1)/(4 pi tau)^{p} + 1/(4 pi (2tau+mu))^{p}
double wave_sum(const LameParameters& params, int n, double p) {
    return (n - 1.0) / std::pow(4.0 * kPi * params.shear(), p) +
           1.0 / std::pow(4.0 * kPi * params.pressure(), p);
}

}  // namespace

void GeometricData::validate() const {
    if (dim < 1) throw Error(ErrorKind::InvalidArgument, "geometric data needs dim >= 1");
    if (!(volume > 0.0) || !std::isfinite(volume)) {
        throw Error(ErrorKind::InvalidArgument, "volume must be positive, got " + std::to_string(volume));
    }
    if (!(boundary_area > 0.0) || !std::isfinite(boundary_area)) {
        throw Error(ErrorKind::InvalidArgument,
                    "boundary area must be positive, got " + std::to_string(boundary_area));
    }
}

double interior_coefficient(const LameParameters& params, int n) {
    require_dimension(n);
    return wave_sum(params, n, 0.5 * n);
}

double boundary_coefficient(const LameParameters& params, int n, BoundaryCondition bc) {
    require_dimension(n);
    return boundary_sign(bc) * 0.25 * wave_sum(params, n, 0.5 * (n - 1));
}

HeatTraceCoefficients heat_trace_coefficients(const LameParameters& params, int n,
                                              BoundaryCondition bc) {
    return {n, params, bc, interior_coefficient(params, n), boundary_coefficient(params, n, bc)};
}

double theoretical_trace(const LameParameters& params, int n, const GeometricData& geom,
                         BoundaryCondition bc, double t) {
    if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "t must be positive");
    return interior_coefficient(params, n) * geom.volume * std::pow(t, -0.5 * n) +
           boundary_coefficient(params, n, bc) * geom.boundary_area * std::pow(t, -0.5 * (n - 1));
}

ImageTermResult image_term_quadrature(const LameParameters& params, int n, double t, double epsilon) {
    require_dimension(n);
    if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "t must be positive");
    if (!(epsilon > 0.0)) throw Error(ErrorKind::InvalidArgument, "collar width must be positive");

    const double shear_t = params.shear() * t;
    const double pressure_t = params.pressure() * t;
    const double shear_norm = (n - 1.0) / std::pow(4.0 * kPi * shear_t, 0.5 * n);
    const double pressure_norm = 1.0 / std::pow(4.0 * kPi * pressure_t, 0.5 * n);

    // e^{-(2x)^2 / (4 c t)} = e^{-x^2 / (c t)}
    auto integrand = [&](double x) {
        const double x2 = x * x;
        return shear_norm * std::exp(-x2 / shear_t) + pressure_norm * std::exp(-x2 / pressure_t);
    };

    ImageTermResult out;
    out.half_line_closed = std::abs(boundary_coefficient(params, n, BoundaryCondition::Dirichlet)) *
                           std::pow(t, -0.5 * (n - 1));
    // int_eps^inf e^{-x^2/s} dx = (sqrt(pi s) / 2) erfc(eps / sqrt(s))
    auto tail = [&](double norm, double s) {
        if (std::isinf(epsilon)) return 0.0;
        return norm * 0.5 * std::sqrt(kPi * s) * std::erfc(epsilon / std::sqrt(s));
    };
    out.tail_closed = tail(shear_norm, shear_t) + tail(pressure_norm, pressure_t);

    // Split at a few kernel widths so the adaptive rule sees the peak.
    const double width = std::sqrt(pressure_t);
    const double knee = std::min(epsilon, 12.0 * width);
    quadrature::Options opts;
    opts.abs_tol = 1e-12;
    opts.rel_tol = 1e-14;
    const auto head = quadrature::integrate(integrand, 0.0, knee, opts);
    out.collar_quadrature = head.value;
    out.quadrature_error = head.error_estimate;
    if (epsilon > knee) {
        const auto rest = quadrature::integrate(integrand, knee, epsilon, opts);
        out.collar_quadrature += rest.value;
        out.quadrature_error += rest.error_estimate;
    }
    return out;
}

double weyl_count_prediction(const LameParameters& params, int n, double volume, double eta) {
    require_dimension(n);
    if (!(eta > 0.0)) throw Error(ErrorKind::InvalidArgument, "eta must be positive");
    return volume / special::gamma(0.5 * n + 1.0) * interior_coefficient(params, n) *
           std::pow(eta, 0.5 * n);
}

double weyl_boundary_correction(const LameParameters& params, int n, double boundary_area,
                                double eta, BoundaryCondition bc) {
    require_dimension(n);
    if (!(eta > 0.0)) throw Error(ErrorKind::InvalidArgument, "eta must be positive");
    return boundary_coefficient(params, n, bc) * boundary_area * std::pow(eta, 0.5 * (n - 1)) /
           special::gamma(0.5 * (n + 1));
}

GeometricData recover_geometry(double a0_hat, double a1_hat, const LameParameters& params, int n,
                               BoundaryCondition bc) {
    require_dimension(n);
    if (!(a0_hat > 0.0) || !std::isfinite(a0_hat)) {
        throw Error(ErrorKind::InconsistentFit,
                    "fitted volume coefficient must be positive, got " + std::to_string(a0_hat));
    }
    const double a1_density = boundary_coefficient(params, n, bc);
    if (!std::isfinite(a1_hat) || a1_hat == 0.0 || (a1_hat > 0.0) != (a1_density > 0.0)) {
        throw Error(ErrorKind::InconsistentFit,
                    "fitted boundary coefficient " + std::to_string(a1_hat) +
                        " has the wrong sign for a " + std::string(to_string(bc)) + " spectrum",
                    "check the boundary condition recorded with the spectrum");
    }
    GeometricData geom{n, a0_hat / interior_coefficient(params, n), a1_hat / a1_density};
    return geom;
}

double unit_ball_volume(int n) {
    require_dimension(n);
    return std::pow(kPi, 0.5 * n) / special::gamma(0.5 * n + 1.0);
}

double unit_sphere_area(int n) { return n * unit_ball_volume(n); }

IsoperimetricAudit isoperimetric_audit(const GeometricData& geom, double relative_tolerance) {
    geom.validate();
    const int n = geom.dim;
    const double exponent = (n - 1.0) / n;
    IsoperimetricAudit audit;
    audit.ratio = geom.boundary_area / std::pow(geom.volume, exponent);
    audit.ball_ratio = unit_sphere_area(n) / std::pow(unit_ball_volume(n), exponent);
    audit.relative_excess = audit.ratio / audit.ball_ratio - 1.0;
    audit.tolerance = relative_tolerance;
    audit.is_ball_within_tol = std::abs(audit.relative_excess) <= relative_tolerance;
    return audit;
}

}  // namespace lamespec
