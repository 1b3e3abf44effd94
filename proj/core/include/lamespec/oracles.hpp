#pragma once

#include <cstddef>
#include <vector>

#include "lamespec/spectrum.hpp"

namespace lamespec {

/// lambda_k = (2 tau + mu) (k pi / L)^2 with k = 1..K (Dirichlet) or k = 0..K-1 (Neumann).
Spectrum interval_spectrum_1d(const LameParameters& params, double length, BoundaryCondition bc, int count);

/// sum_k exp(-t lambda_k) over the interval spectrum, stopped once a term
/// drops below 1e-16.
double theta_trace_1d(const LameParameters& params, double length, BoundaryCondition bc, double t);

// Clamped disk of radius R. With u = grad(phi) + rot(psi), phi = J_m(alpha r) cos(m theta),
// psi = J_m(beta r) sin(m theta), alpha = sqrt(lambda / (2 tau + mu)), beta = sqrt(lambda / tau),
// the conditions u_r = u_theta = 0 at r = R have a nontrivial solution iff
//
//   D_m(lambda) = m^2 J_m(a) J_m(b) - a b J_m'(a) J_m'(b) = 0,   a = alpha R, b = beta R.
//
// For m = 0 this reduces to -a b J_1(a) J_1(b): a pressure family J_1(a) = 0 and a
// torsional family J_1(b) = 0, each simple. For m >= 1 every root is double (cos/sin pair).
// A Rayleigh-quotient bound gives lambda >= tau (m - 1)^2 / R^2 for mode m.

enum class DiskBranch { Coupled, Pressure, Torsional };

struct DiskModeRoot {
    int m = 0;
    int radial_index = 0;
    DiskBranch branch = DiskBranch::Coupled;
    double lambda = 0.0;
    int multiplicity = 0;
    /// |D_m(lambda)| divided by the magnitude of its two terms.
    double relative_residual = 0.0;
};

struct DiskDeterminant {
    double value = 0.0;
    double scale = 0.0;  ///< m^2 |J_m(a) J_m(b)| + a b |J_m'(a) J_m'(b)|
};

DiskDeterminant disk_determinant(const LameParameters& params, double radius, int m, double lambda);

struct DiskOracleOptions {
    /// Largest angular index; negative picks 1 + R sqrt(lambda_max / tau), past which no root exists.
    int m_max = -1;
    /// Scan spacing in lambda; 0 picks 0.1 tau / R^2. Must not exceed 0.5 tau / R^2.
    double scan_step = 0.0;
    double root_rel_tol = 1e-14;
    int threads = 1;
    bool audit = true;
};

struct DiskOracleResult {
    std::vector<DiskModeRoot> roots;  ///< sorted by (lambda, m)
    Spectrum spectrum;
    int m_max = 0;
    std::size_t count = 0;   ///< eigenvalues <= lambda_max with multiplicity
    double weyl_expected = 0.0;  ///< two-term Weyl count at lambda_max
    double weyl_band = 0.0;
};

/// All clamped-disk eigenvalues up to lambda_max. Throws IncompleteSpectrum
/// when the count leaves the two-term Weyl band (missed roots or a too
/// small m_max).
DiskOracleResult disk_dirichlet_roots(const LameParameters& params, double radius, double lambda_max,
                                      const DiskOracleOptions& options = {});

Spectrum disk_dirichlet_spectrum(const LameParameters& params, double radius, int m_max, double lambda_max);

/// Band used by the completeness audit: half the boundary correction plus 10.
double disk_weyl_band(const LameParameters& params, double radius, double lambda);

}  // namespace lamespec
