#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "lamespec/errors.hpp"
#include "lamespec/symbol.hpp"

namespace lamespec {
namespace {

using Complex = std::complex<double>;

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorKind::Io;
}

TEST(LameParameters, RejectsNonElliptic) {
    EXPECT_EQ(kind_of([] { LameParameters(0.0, 1.0); }), ErrorKind::InvalidArgument);
    EXPECT_EQ(kind_of([] { LameParameters(1.0, -1.0); }), ErrorKind::InvalidArgument);
    EXPECT_EQ(kind_of([] { LameParameters(1.0, NAN); }), ErrorKind::InvalidArgument);
    EXPECT_DOUBLE_EQ(LameParameters(1.0, -0.5).pressure(), 1.5);
}

TEST(BuildSymbol, DiagonalCase) {
    const auto s = build_symbol(LameParameters(1.0, 0.0), std::vector<double>{1.0, 0.0});
    EXPECT_DOUBLE_EQ(s(0, 0), 2.0);
    EXPECT_DOUBLE_EQ(s(0, 1), 0.0);
    EXPECT_DOUBLE_EQ(s(1, 0), 0.0);
    EXPECT_DOUBLE_EQ(s(1, 1), 1.0);
}

TEST(BuildSymbol, ZeroFrequencyIsZero) {
    const auto s = build_symbol(LameParameters(1.0, 1.0), std::vector<double>{0.0, 0.0});
    for (double v : s.entries()) EXPECT_EQ(v, 0.0);
}

TEST(BuildSymbol, OffDiagonalCase) {
    const auto s = build_symbol(LameParameters(1.0, 0.0), std::vector<double>{1.0, 1.0});
    EXPECT_DOUBLE_EQ(s(0, 0), 3.0);
    EXPECT_DOUBLE_EQ(s(0, 1), 1.0);
    EXPECT_DOUBLE_EQ(s(1, 0), 1.0);
    EXPECT_DOUBLE_EQ(s(1, 1), 3.0);
}

TEST(BuildSymbol, RejectsEmptyOrNonFinite) {
    EXPECT_EQ(kind_of([] { build_symbol(LameParameters(1.0, 0.0), std::vector<double>{}); }),
              ErrorKind::InvalidArgument);
    EXPECT_EQ(kind_of([] { build_symbol(LameParameters(1.0, 0.0), std::vector<double>{INFINITY}); }),
              ErrorKind::InvalidArgument);
}

TEST(ResolventTrace, ScalarCase) {
    const LameParameters p(1.3, 0.4);
    const Complex lambda{2.0, 1.0};
    const Complex got = resolvent_trace_closed(p, 1, 0.7, ComplexScalar::from(lambda)).value();
    const Complex expected = 1.0 / (lambda - p.pressure() * 0.7);
    EXPECT_NEAR(std::abs(got - expected), 0.0, 1e-15);
}

TEST(ResolventTrace, TwoByTwoFixture) {
    const auto got = resolvent_trace_closed(LameParameters(1.0, 0.0), 2, 1.0, {5.0, 0.0});
    EXPECT_NEAR(got.re, 7.0 / 12.0, 1e-15);
    EXPECT_NEAR(got.im, 0.0, 1e-15);
    const auto dense = resolvent_trace_bruteforce(LameParameters(1.0, 0.0), std::vector<double>{1.0, 0.0}, {5.0, 0.0});
    EXPECT_NEAR(dense.re, 7.0 / 12.0, 1e-15);
}

TEST(ResolventTrace, ZeroFrequencyGivesDimension) {
    for (int n = 1; n <= 8; ++n) {
        const auto got = resolvent_trace_closed(LameParameters(1.0, 1.0), n, 0.0, {1.0, 0.0});
        EXPECT_DOUBLE_EQ(got.re, n);
    }
}

TEST(ResolventTrace, BruteForceScalar) {
    const auto got = resolvent_trace_bruteforce(LameParameters(1.0, 0.0), std::vector<double>{2.0}, {10.0, 0.0});
    EXPECT_NEAR(got.re, 0.5, 1e-15);
}

TEST(ResolventTrace, MatchesEigenInverseInThreeDimensions) {
    const LameParameters p(0.8, 0.3);
    const std::vector<double> xi{0.3, -1.2, 0.5};
    const Complex lambda{-0.7, 2.5};
    Eigen::Matrix3cd m;
    const double q = 0.09 + 1.44 + 0.25;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            m(i, j) = (i == j ? lambda - p.tau() * q : Complex{0.0}) - (p.tau() + p.mu()) * xi[i] * xi[j];
        }
    }
    const Complex oracle = m.inverse().trace();
    const Complex closed = resolvent_trace_closed(p, 3, q, ComplexScalar::from(lambda)).value();
    const Complex dense = resolvent_trace_bruteforce(p, xi, ComplexScalar::from(lambda)).value();
    EXPECT_LT(std::abs(closed - oracle) / std::abs(oracle), 1e-13);
    EXPECT_LT(std::abs(dense - oracle) / std::abs(oracle), 1e-13);
}

TEST(ResolventTrace, PoleProximityIsReported) {
    const LameParameters p(1.0, 1.0);
    EXPECT_EQ(kind_of([&] { resolvent_trace_closed(p, 2, 1.0, {3.0, 0.0}); }), ErrorKind::PoleProximity);
    EXPECT_EQ(kind_of([&] { resolvent_trace_closed(p, 2, 1.0, {1.0, 1e-12}); }), ErrorKind::PoleProximity);
    // The shear pole is removable in one dimension.
    EXPECT_NO_THROW(resolvent_trace_closed(p, 1, 1.0, {1.0, 0.0}));
    EXPECT_EQ(kind_of([&] { resolvent_trace_bruteforce(p, std::vector<double>{1.0, 0.0}, {3.0, 0.0}); }),
              ErrorKind::SingularMatrix);
}

TEST(ResolventTrace, RejectsBadDimension) {
    EXPECT_EQ(kind_of([] { resolvent_trace_closed(LameParameters(1.0, 0.0), 0, 1.0, {5.0, 0.0}); }),
              ErrorKind::InvalidArgument);
    EXPECT_EQ(kind_of([] { resolvent_trace_closed(LameParameters(1.0, 0.0), 2, -1.0, {5.0, 0.0}); }),
              ErrorKind::InvalidArgument);
}

TEST(Determinant, Fixture) {
    const auto got = symbol_determinant_closed(LameParameters(1.0, 0.0), 2, 1.0, {5.0, 0.0});
    EXPECT_DOUBLE_EQ(got.re, 12.0);
    const auto dense = symbol_determinant_dense(LameParameters(1.0, 0.0), std::vector<double>{1.0, 0.0}, {5.0, 0.0});
    EXPECT_NEAR(dense.re, 12.0, 1e-13);
}

TEST(Determinant, ZeroFrequencyIsPower) {
    const Complex lambda{1.5, -0.5};
    const auto got = symbol_determinant_closed(LameParameters(2.0, 1.0), 4, 0.0, ComplexScalar::from(lambda));
    EXPECT_LT(std::abs(got.value() - std::pow(lambda, 4)), 1e-13);
}

TEST(Determinant, FourDimensionsMatchEigen) {
    const LameParameters p(1.7, -1.2);
    const std::vector<double> xi{0.5, 0.1, -0.3, 0.9};
    double q = 0.0;
    for (double v : xi) q += v * v;
    const Complex lambda{0.4, -1.1};
    Eigen::Matrix4cd m;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            m(i, j) = (i == j ? lambda - p.tau() * q : Complex{0.0}) - (p.tau() + p.mu()) * xi[i] * xi[j];
        }
    }
    const Complex oracle = m.determinant();
    const Complex closed = symbol_determinant_closed(p, 4, q, ComplexScalar::from(lambda)).value();
    const Complex dense = symbol_determinant_dense(p, xi, ComplexScalar::from(lambda)).value();
    EXPECT_LT(std::abs(closed - oracle) / std::abs(oracle), 1e-13);
    EXPECT_LT(std::abs(dense - oracle) / std::abs(oracle), 1e-13);
}

TEST(Parametrix, Fixtures) {
    EXPECT_LT(parametrix_residual(LameParameters(1.0, 1.0), std::vector<double>{1.0, 2.0}, {-3.0, 0.0}), 1e-12);
    EXPECT_EQ(parametrix_residual(LameParameters(1.0, 1.0), std::vector<double>{0.0, 0.0}, {1.0, 0.0}), 0.0);
}

TEST(ResidueHeatSymbol, Fixtures) {
    EXPECT_DOUBLE_EQ(residue_heat_symbol(LameParameters(1.0, 1.0), 5, 0.0, 3.0), 5.0);
    EXPECT_NEAR(residue_heat_symbol(LameParameters(1.0, 0.0), 2, 1.0, 1.0), std::exp(-1.0) + std::exp(-2.0), 1e-15);
    EXPECT_NEAR(residue_heat_symbol(LameParameters(1.0, 0.0), 3, 2.0, 1e-12), 3.0, 1e-10);
}

TEST(ContourOracle, Fixtures) {
    const double fixture = contour_integral_oracle(LameParameters(1.0, 0.0), 2, 1.0, 1.0);
    EXPECT_NEAR(fixture, std::exp(-1.0) + std::exp(-2.0), 1e-12);
    EXPECT_NEAR(fixture, 0.50321, 5e-6);
    const LameParameters p(2.0, -1.0);
    const double expected = 2.0 * std::exp(-0.5 * 2.0 * 4.0) + std::exp(-0.5 * 3.0 * 4.0);
    EXPECT_NEAR(contour_integral_oracle(p, 3, 4.0, 0.5) / expected, 1.0, 1e-10);
    EXPECT_NEAR(contour_integral_oracle(LameParameters(1.0, 1.0), 4, 0.0, 0.7), 4.0, 1e-12);
}

TEST(ContourOracle, DefaultContourEnclosesPoles) {
    const LameParameters p(1.0, 3.0);
    const Contour c = default_contour(p, 2.0);
    EXPECT_LT(std::abs(2.0 - c.center), c.radius);
    EXPECT_LT(std::abs(10.0 - c.center), c.radius);
    EXPECT_EQ(default_contour(p, 0.0).radius, 1.0);
}

TEST(ContourOracle, MisconfiguredContour) {
    const LameParameters p(1.0, 1.0);
    EXPECT_EQ(kind_of([&] { contour_integral_oracle(p, 2, 1.0, 1.0, Contour{0.0, 2.0, 4096}); }),
              ErrorKind::ContourMisconfigured);
    EXPECT_EQ(kind_of([&] { contour_integral_oracle(p, 2, 1.0, 1.0, Contour{2.0, 5.0, 8}); }),
              ErrorKind::ContourMisconfigured);
}

TEST(SymbolCheck, PassesForAllDimensions) {
    for (int n = 1; n <= 8; ++n) {
        const auto report = symbol_property_check(n, 200);
        EXPECT_TRUE(report.pass) << "n=" << n << " err " << report.max_rel_err();
        EXPECT_EQ(report.draws, 200);
        EXPECT_EQ(report.seed, 42u);
    }
}

TEST(SymbolCheck, Deterministic) {
    const auto a = symbol_property_check(3, 50, 7);
    const auto b = symbol_property_check(3, 50, 7);
    EXPECT_EQ(a.max_rel_err_trace, b.max_rel_err_trace);
    EXPECT_EQ(a.max_parametrix_residual, b.max_parametrix_residual);
}

}  // namespace
}  // namespace lamespec
