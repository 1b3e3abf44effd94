#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "lamespec/errors.hpp"
#include "lamespec/fem.hpp"
#include "lamespec/heat_kernel.hpp"
#include "lamespec/oracles.hpp"

namespace lamespec {
namespace {

constexpr double kPi = std::numbers::pi;
const LameParameters kFlagship(1.0, 1.0);

// Positive zeros of J_m from the standard library by scan and bisection.
std::vector<double> std_bessel_zeros(int m, int count) {
    std::vector<double> zeros;
    double a = 0.5;
    double fa = std::cyl_bessel_j(m, a);
    while (static_cast<int>(zeros.size()) < count) {
        const double b = a + 0.05;
        const double fb = std::cyl_bessel_j(m, b);
        if (fa * fb < 0.0) {
            double lo = a, hi = b;
            for (int it = 0; it < 100; ++it) {
                const double mid = 0.5 * (lo + hi);
                (std::cyl_bessel_j(m, lo) * std::cyl_bessel_j(m, mid) <= 0.0 ? hi : lo) = mid;
            }
            zeros.push_back(0.5 * (lo + hi));
        }
        a = b;
        fa = fb;
    }
    return zeros;
}

// D_m from the standard library's Bessel functions.
double std_determinant(const LameParameters& p, int m, double lambda) {
    const double a = std::sqrt(lambda / p.pressure());
    const double b = std::sqrt(lambda / p.tau());
    auto jd = [m](double x) {
        return m == 0 ? -std::cyl_bessel_j(1, x) : 0.5 * (std::cyl_bessel_j(m - 1, x) - std::cyl_bessel_j(m + 1, x));
    };
    return m * m * std::cyl_bessel_j(m, a) * std::cyl_bessel_j(m, b) - a * b * jd(a) * jd(b);
}

TEST(IntervalOracle, Eigenvalues) {
    const LameParameters p(1.0, -0.5);
    const Spectrum d = interval_spectrum_1d(p, kPi, BoundaryCondition::Dirichlet, 10);
    for (int k = 1; k <= 10; ++k) EXPECT_NEAR(d.eigenvalues[k - 1], 1.5 * k * k, 1e-12);
    const Spectrum n = interval_spectrum_1d(p, kPi, BoundaryCondition::Neumann, 10);
    EXPECT_EQ(n.eigenvalues[0], 0.0);
    EXPECT_EQ(d.dim, 1);
    EXPECT_NO_THROW(d.validate());
    EXPECT_NO_THROW(n.validate());
    // Interlacing.
    for (int k = 0; k + 1 < 10; ++k) {
        EXPECT_LE(n.eigenvalues[k], d.eigenvalues[k]);
        EXPECT_LE(d.eigenvalues[k], n.eigenvalues[k + 1]);
    }
}

TEST(IntervalOracle, ThetaIdentity) {
    const LameParameters p(1.0, -0.5);
    EXPECT_NEAR(theta_trace_1d(p, kPi, BoundaryCondition::Dirichlet, 0.01), kPi / std::sqrt(0.06 * kPi) - 0.5, 1e-10);
    EXPECT_NEAR(theta_trace_1d(p, kPi, BoundaryCondition::Neumann, 0.01), kPi / std::sqrt(0.06 * kPi) + 0.5, 1e-10);
    const double large = theta_trace_1d(p, kPi, BoundaryCondition::Dirichlet, 10.0);
    EXPECT_NEAR(large / std::exp(-15.0), 1.0, 1e-20 / std::exp(-15.0) + 1e-15);
    EXPECT_THROW(theta_trace_1d(p, -1.0, BoundaryCondition::Dirichlet, 0.1), Error);
}

TEST(DiskOracle, DeterminantScale) {
    const auto d = disk_determinant(kFlagship, 1.0, 2, 30.0);
    EXPECT_NEAR(d.value, std_determinant(kFlagship, 2, 30.0), 1e-12 * d.scale);
    EXPECT_GT(d.scale, std::abs(d.value));
}

TEST(DiskOracle, AxisymmetricBranches) {
    const auto result = disk_dirichlet_roots(kFlagship, 1.0, 400.0);
    const auto zeros = std_bessel_zeros(1, 12);
    std::vector<double> torsional, pressure;
    for (const auto& r : result.roots) {
        if (r.branch == DiskBranch::Torsional) torsional.push_back(r.lambda);
        if (r.branch == DiskBranch::Pressure) pressure.push_back(r.lambda);
        if (r.m == 0) {
            EXPECT_EQ(r.multiplicity, 1);
        } else {
            EXPECT_EQ(r.multiplicity, 2);
            EXPECT_EQ(r.branch, DiskBranch::Coupled);
        }
    }
    ASSERT_GE(torsional.size(), 5u);
    ASSERT_GE(pressure.size(), 3u);
    for (std::size_t s = 0; s < torsional.size(); ++s) {
        EXPECT_NEAR(torsional[s] / (kFlagship.tau() * zeros[s] * zeros[s]), 1.0, 1e-12);
    }
    for (std::size_t s = 0; s < pressure.size(); ++s) {
        EXPECT_NEAR(pressure[s] / (kFlagship.pressure() * zeros[s] * zeros[s]), 1.0, 1e-12);
    }
}

TEST(DiskOracle, RootsSatisfyDeterminant) {
    const auto result = disk_dirichlet_roots(kFlagship, 1.0, 600.0);
    for (const auto& r : result.roots) {
        EXPECT_LT(r.relative_residual, 1e-9);
        if (r.branch != DiskBranch::Coupled) continue;
        const double a = std::sqrt(r.lambda / kFlagship.pressure());
        const double b = std::sqrt(r.lambda / kFlagship.tau());
        const int m = r.m;
        auto jd = [m](double x) { return 0.5 * (std::cyl_bessel_j(m - 1, x) - std::cyl_bessel_j(m + 1, x)); };
        const double scale = m * m * std::abs(std::cyl_bessel_j(m, a) * std::cyl_bessel_j(m, b)) +
                             a * b * std::abs(jd(a) * jd(b));
        EXPECT_LT(std::abs(std_determinant(kFlagship, m, r.lambda)), 1e-9 * scale) << "m=" << m;
    }
}

TEST(DiskOracle, LowestCoupledRootAgainstIndependentScan) {
    const auto result = disk_dirichlet_roots(kFlagship, 1.0, 100.0);
    for (int m = 1; m <= 3; ++m) {
        double prev = std_determinant(kFlagship, m, 0.5);
        double lambda = 0.5;
        double root = 0.0;
        while (root == 0.0) {
            const double next = lambda + 0.01;
            const double value = std_determinant(kFlagship, m, next);
            if (prev * value < 0.0) {
                double lo = lambda, hi = next;
                for (int it = 0; it < 100; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    (std_determinant(kFlagship, m, lo) * std_determinant(kFlagship, m, mid) <= 0.0 ? hi : lo) = mid;
                }
                root = 0.5 * (lo + hi);
            }
            lambda = next;
            prev = value;
        }
        const auto it = std::find_if(result.roots.begin(), result.roots.end(), [m](const auto& r) { return r.m == m; });
        ASSERT_NE(it, result.roots.end());
        EXPECT_NEAR(it->lambda / root, 1.0, 1e-12) << "m=" << m;
    }
}

TEST(DiskOracle, SpectrumCountsMultiplicity) {
    const auto result = disk_dirichlet_roots(kFlagship, 1.0, 500.0);
    std::size_t total = 0;
    for (const auto& r : result.roots) total += static_cast<std::size_t>(r.multiplicity);
    EXPECT_EQ(total, result.count);
    EXPECT_EQ(result.spectrum.count(), result.count);
    EXPECT_TRUE(std::is_sorted(result.spectrum.eigenvalues.begin(), result.spectrum.eigenvalues.end()));
    EXPECT_LE(result.spectrum.eigenvalues.back(), 500.0);
    EXPECT_NO_THROW(result.spectrum.validate());
    EXPECT_LE(std::abs(static_cast<double>(result.count) - result.weyl_expected), result.weyl_band);
}

TEST(DiskOracle, RadiusScaling) {
    const auto unit = disk_dirichlet_roots(kFlagship, 1.0, 300.0).spectrum;
    const auto half = disk_dirichlet_roots(kFlagship, 0.5, 1200.0).spectrum;
    ASSERT_EQ(unit.count(), half.count());
    for (std::size_t i = 0; i < unit.count(); ++i) EXPECT_NEAR(half.eigenvalues[i] / unit.eigenvalues[i], 4.0, 1e-10);
}

TEST(DiskOracle, WeylSlope) {
    const auto spectrum = disk_dirichlet_roots(kFlagship, 1.0, 5000.0).spectrum;
    // Least squares N(eta) = a eta + b sqrt(eta) + c over a grid of eta.
    const int points = 200;
    Eigen::MatrixXd design(points, 3);
    Eigen::VectorXd counts(points);
    for (int i = 0; i < points; ++i) {
        const double eta = 500.0 + 4500.0 * i / (points - 1.0);
        design.row(i) << eta, std::sqrt(eta), 1.0;
        counts[i] = static_cast<double>(std::upper_bound(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end(), eta) -
                                        spectrum.eigenvalues.begin());
    }
    const Eigen::Vector3d coef = design.colPivHouseholderQr().solve(counts);
    const double predicted = weyl_count_prediction(kFlagship, 2, kPi, 1.0);
    EXPECT_NEAR(coef[0] / predicted, 1.0, 0.03);
}

TEST(DiskOracle, MissedRootsAreReported) {
    DiskOracleOptions options;
    options.m_max = 3;
    try {
        disk_dirichlet_roots(kFlagship, 1.0, 400.0, options);
        FAIL() << "expected IncompleteSpectrum";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::IncompleteSpectrum);
        EXPECT_NE(e.hint().find("m_max"), std::string::npos);
    }
    options.audit = false;
    EXPECT_NO_THROW(disk_dirichlet_roots(kFlagship, 1.0, 400.0, options));
}

TEST(DiskOracle, RejectsCoarseScan) {
    DiskOracleOptions options;
    options.scan_step = 0.6;
    EXPECT_THROW(disk_dirichlet_roots(kFlagship, 1.0, 100.0, options), Error);
    EXPECT_THROW(disk_dirichlet_roots(kFlagship, 1.0, -1.0), Error);
}

TEST(DiskOracle, AgreesWithCoarseFem) {
    const auto oracle = disk_dirichlet_roots(kFlagship, 1.0, 100.0).spectrum;
    const Mesh mesh = refine(generate_mesh(Domain{Disk{1.0}}, 0.125));
    const Spectrum fem = solve_lowest(assemble(mesh, kFlagship, BoundaryCondition::Dirichlet), 6);
    for (int i = 0; i < 6; ++i) {
        EXPECT_GT(fem.eigenvalues[i], oracle.eigenvalues[i] * (1 - 1e-6));
        EXPECT_NEAR(fem.eigenvalues[i] / oracle.eigenvalues[i], 1.0, 0.03);
    }
}

}  // namespace
}  // namespace lamespec
