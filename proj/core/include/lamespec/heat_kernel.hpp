#pragma once

#include "lamespec/lame_parameters.hpp"

namespace lamespec {

/// Densities of the two-term small-t heat-trace expansion
///   Tr e^{-tP} ~ a0 |Omega| t^{-n/2} + a1 |dOmega| t^{-(n-1)/2}.
struct HeatTraceCoefficients {
    int dim = 0;
    LameParameters params{1.0, 0.0};
    BoundaryCondition bc = BoundaryCondition::Dirichlet;
    double a0_density = 0.0;  ///< per unit volume, > 0
    double a1_density = 0.0;  ///< per unit boundary area, sign included
};

/// Volume and boundary measure of a domain in R^n.
struct GeometricData {
    int dim = 0;
    double volume = 0.0;
    double boundary_area = 0.0;

    /// Throws InvalidArgument unless dim >= 1, volume > 0, boundary_area > 0.
    void validate() const;
};

/// (n-1)/(4 pi tau)^{n/2} + 1/(4 pi (2tau+mu))^{n/2}.
double interior_coefficient(const LameParameters& params, int n);

/// -+ (1/4) [(n-1)/(4 pi tau)^{(n-1)/2} + 1/(4 pi (2tau+mu))^{(n-1)/2}],
/// negative for Dirichlet, positive for Neumann.
double boundary_coefficient(const LameParameters& params, int n, BoundaryCondition bc);

HeatTraceCoefficients heat_trace_coefficients(const LameParameters& params, int n,
                                              BoundaryCondition bc);

/// a0 |Omega| t^{-n/2} + a1 |dOmega| t^{-(n-1)/2}.
double theoretical_trace(const LameParameters& params, int n, const GeometricData& geom,
                         BoundaryCondition bc, double t);

struct ImageTermResult {
    double collar_quadrature = 0.0;  ///< numeric integral over the collar [0, epsilon]
    double half_line_closed = 0.0;   ///< |a1_density| t^{-(n-1)/2}, the epsilon -> inf value
    double tail_closed = 0.0;        ///< integral over [epsilon, inf) via erfc
    double quadrature_error = 0.0;   ///< error estimate reported by the integrator
};

/// Reflected-kernel contribution per unit boundary area over a collar of
/// width epsilon (epsilon may be +infinity).
ImageTermResult image_term_quadrature(const LameParameters& params, int n, double t, double epsilon);

/// Leading Weyl count |Omega| a0 eta^{n/2} / Gamma(n/2 + 1).
double weyl_count_prediction(const LameParameters& params, int n, double volume, double eta);

/// Two-term Weyl correction for the boundary: a1 |dOmega| eta^{(n-1)/2} / Gamma((n+1)/2).
double weyl_boundary_correction(const LameParameters& params, int n, double boundary_area,
                                double eta, BoundaryCondition bc);

/// Inverts the coefficient map: volume = a0_hat / a0_density,
/// boundary_area = a1_hat / a1_density. Throws InconsistentFit when
/// a0_hat <= 0 or a1_hat has the wrong sign (or is zero) for bc.
GeometricData recover_geometry(double a0_hat, double a1_hat, const LameParameters& params, int n,
                               BoundaryCondition bc);

struct IsoperimetricAudit {
    double ratio = 0.0;       ///< |dOmega| / |Omega|^{(n-1)/n}
    double ball_ratio = 0.0;  ///< same for the unit ball
    double relative_excess = 0.0;
    double tolerance = 0.0;
    bool is_ball_within_tol = false;
};

inline constexpr double kDefaultBallTolerance = 0.05;

/// |B_1| in R^n.
double unit_ball_volume(int n);
/// |dB_1| in R^n.
double unit_sphere_area(int n);

IsoperimetricAudit isoperimetric_audit(const GeometricData& geom,
                                       double relative_tolerance = kDefaultBallTolerance);

}  // namespace lamespec
