#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <gtest/gtest.h>

#include "lamespec/errors.hpp"
#include "lamespec/fem.hpp"
#include "lamespec/lanczos.hpp"
#include "lamespec/sparse.hpp"

namespace lamespec {
namespace {

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorKind::Io;
}

// Lowest eigenvalues of (K, M) from Eigen's dense generalized solver.
std::vector<double> dense_lowest(const AssembledSystem& system, int k) {
    const Eigen::MatrixXd K(system.stiffness.to_eigen());
    const Eigen::MatrixXd M(system.mass.to_eigen());
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(K, M);
    const auto& values = solver.eigenvalues();
    return {values.data(), values.data() + k};
}

TEST(Sparse, AssembleAndMultiply) {
    SparseSymmetricMatrix m(3);
    m.add(0, 0, 2.0);
    m.add(1, 0, -1.0);
    m.add(0, 1, -1.0);
    m.add(2, 2, 4.0);
    m.add(2, 2, 1.0);
    m.compress();
    EXPECT_EQ(m.entries().size(), 3u);
    const Eigen::MatrixXd dense(m.to_eigen());
    Eigen::MatrixXd expected(3, 3);
    expected << 2, -2, 0, -2, 0, 0, 0, 0, 5;
    EXPECT_TRUE(dense.isApprox(expected));
    const Eigen::VectorXd x = Eigen::Vector3d(1.0, 2.0, 3.0);
    EXPECT_TRUE(m.multiply(x).isApprox(expected * x));
    EXPECT_THROW(m.add(3, 0, 1.0), Error);
    EXPECT_THROW(m.multiply(Eigen::VectorXd::Zero(2)), Error);
}

TEST(Element, StiffnessHandComputed) {
    const auto k = element_stiffness({0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, LameParameters(1.0, 0.0));
    const double expected[6][6] = {
        {1.5, 0.5, -1.0, 0.0, -0.5, -0.5},  {0.5, 1.5, -0.5, -0.5, 0.0, -1.0},
        {-1.0, -0.5, 1.0, 0.0, 0.0, 0.5},   {0.0, -0.5, 0.0, 0.5, 0.0, 0.0},
        {-0.5, 0.0, 0.0, 0.0, 0.5, 0.0},    {-0.5, -1.0, 0.5, 0.0, 0.0, 1.0},
    };
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) EXPECT_NEAR(k[i][j], expected[i][j], 1e-15) << i << "," << j;
    }
}

TEST(Element, StiffnessSplitsIntoLaplacianAndDivDiv) {
    const Point2 p0{0.2, 0.1}, p1{1.3, 0.4}, p2{0.5, 0.9};
    const auto weak = element_stiffness(p0, p1, p2, LameParameters(1.0, -0.5));
    const auto strong = element_stiffness(p0, p1, p2, LameParameters(1.0, 1.5));
    // K is affine in tau + mu: the difference isolates the div-div block.
    Eigen::MatrixXd divdiv(6, 6);
    Eigen::MatrixXd laplacian(6, 6);
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
            divdiv(i, j) = (strong[i][j] - weak[i][j]) / 2.0;
            laplacian(i, j) = weak[i][j] - 0.5 * divdiv(i, j);
        }
    }
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            EXPECT_NEAR(laplacian(2 * i, 2 * j + 1), 0.0, 1e-15);
            EXPECT_NEAR(laplacian(2 * i, 2 * j), laplacian(2 * i + 1, 2 * j + 1), 1e-15);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(divdiv);
    EXPECT_NEAR(eig.eigenvalues()(4), 0.0, 1e-14);
    EXPECT_GT(eig.eigenvalues()(5), 0.1);
}

TEST(Element, MassRowSums) {
    const Point2 p0{0.0, 0.0}, p1{2.0, 0.0}, p2{0.5, 1.5};
    const double area = 1.5;
    const auto m = element_mass(p0, p1, p2);
    for (int r = 0; r < 6; ++r) {
        double sum = 0.0;
        for (int c = 0; c < 6; ++c) sum += m[r][c];
        EXPECT_NEAR(sum, area / 3.0, 1e-15);
    }
    EXPECT_NEAR(m[0][0], area / 6.0, 1e-15);
    EXPECT_NEAR(m[0][2], area / 12.0, 1e-15);
    EXPECT_EQ(m[0][1], 0.0);
}

TEST(Assemble, NeumannKernelContainsTranslations) {
    const Mesh mesh = generate_mesh(Domain{Disk{1.0}}, 0.3);
    const auto system = assemble(mesh, LameParameters(1.0, 0.5), BoundaryCondition::Neumann);
    EXPECT_EQ(system.unknowns(), static_cast<int>(2 * mesh.node_count()));
    for (int component = 0; component < 2; ++component) {
        Eigen::VectorXd c = Eigen::VectorXd::Zero(system.unknowns());
        for (int v = 0; v < static_cast<int>(mesh.node_count()); ++v) c[2 * v + component] = 1.0;
        EXPECT_LT(system.stiffness.multiply(c).norm(), 1e-12);
        // Total mass of a unit field equals the mesh area.
        EXPECT_NEAR(c.dot(system.mass.multiply(c)), mesh_volume(mesh), 1e-12);
    }
}

TEST(Assemble, DirichletEliminatesBoundary) {
    const Mesh mesh = generate_mesh(Domain{Rectangle{1.0, 1.0}}, 0.25);
    const auto system = assemble(mesh, LameParameters(1.0, 1.0), BoundaryCondition::Dirichlet);
    EXPECT_EQ(system.unknowns(), 2 * 9);
    EXPECT_EQ(system.mesh_meta.domain_kind, "rectangle");
    for (std::size_t v = 0; v < mesh.node_count(); ++v) {
        EXPECT_EQ(system.node_dof[v] < 0, static_cast<bool>(mesh.boundary_node_flags[v]));
    }
}

TEST(Assemble, EmptyInterior) {
    Mesh mesh;
    mesh.nodes = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    mesh.triangles = {{0, 1, 2}};
    rebuild_boundary(mesh);
    EXPECT_EQ(kind_of([&] { assemble(mesh, LameParameters(1.0, 0.0), BoundaryCondition::Dirichlet); }),
              ErrorKind::EmptyInterior);
    EXPECT_NO_THROW(assemble(mesh, LameParameters(1.0, 0.0), BoundaryCondition::Neumann));
}

TEST(Lanczos, DiagonalPencil) {
    const int n = 300;
    Eigen::SparseMatrix<double> K(n, n), M(n, n);
    for (int i = 0; i < n; ++i) {
        K.insert(i, i) = (i + 1.0) * 2.0;
        M.insert(i, i) = 2.0;
    }
    const auto pairs = shift_invert_lanczos(K, M, 12, 0.0);
    ASSERT_EQ(pairs.values.size(), 12u);
    for (int i = 0; i < 12; ++i) {
        EXPECT_NEAR(pairs.values[i], i + 1.0, 1e-10);
        EXPECT_LE(pairs.residuals[i], 1e-8);
    }
    // M-orthonormal eigenvectors.
    const Eigen::MatrixXd gram = pairs.vectors.transpose() * M * pairs.vectors;
    EXPECT_TRUE(gram.isApprox(Eigen::MatrixXd::Identity(12, 12), 1e-10));
}

TEST(Lanczos, ShiftAboveLowestIsRejected) {
    const int n = 50;
    Eigen::SparseMatrix<double> K(n, n), M(n, n);
    for (int i = 0; i < n; ++i) {
        K.insert(i, i) = i + 1.0;
        M.insert(i, i) = 1.0;
    }
    EXPECT_EQ(kind_of([&] { shift_invert_lanczos(K, M, 3, 5.5); }), ErrorKind::InvalidArgument);
    EXPECT_EQ(kind_of([&] { shift_invert_lanczos(K, M, 3, 3.0); }), ErrorKind::FactorizationFailure);
    EXPECT_EQ(kind_of([&] { shift_invert_lanczos(K, M, 0, 0.0); }), ErrorKind::InvalidArgument);
}

TEST(SolveLowest, MatchesDenseGeneralizedSolver) {
    const Mesh mesh = generate_mesh(Domain{Disk{1.0}}, 0.25);
    for (auto bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Neumann}) {
        const auto system = assemble(mesh, LameParameters(1.0, 1.0), bc);
        const Spectrum s = solve_lowest(system, 15);
        const auto dense = dense_lowest(system, 15);
        ASSERT_EQ(s.count(), 15u);
        for (int i = 0; i < 15; ++i) {
            EXPECT_NEAR(s.eigenvalues[i], std::max(dense[i], 0.0), 1e-8 * std::max(1.0, dense[i])) << i;
        }
        EXPECT_EQ(s.bc, bc);
        EXPECT_NO_THROW(s.validate());
    }
}

TEST(SolveLowest, NeumannZeroModes) {
    const Mesh mesh = generate_mesh(Domain{Rectangle{1.0, 2.0}}, 0.2);
    const Spectrum s = solve_lowest(assemble(mesh, LameParameters(1.0, 0.5), BoundaryCondition::Neumann), 10);
    EXPECT_GE(s.zero_mode_count(1e-8 * s.eigenvalues.back()), 2u);
    EXPECT_NEAR(s.eigenvalues[0], 0.0, 1e-8 * s.eigenvalues.back());
    EXPECT_NEAR(s.eigenvalues[1], 0.0, 1e-8 * s.eigenvalues.back());
    EXPECT_GT(s.eigenvalues[2], 1e-3);
    EXPECT_NE(std::find(s.notes.begin(), s.notes.end(), "natural-BC approximation"), s.notes.end());
    EXPECT_NE(std::find(s.notes.begin(), s.notes.end(), "domain has corners"), s.notes.end());
}

TEST(SolveLowest, ParameterScaling) {
    const Mesh mesh = generate_mesh(Domain{Disk{1.0}}, 0.3);
    const LameParameters p(1.0, 0.5);
    const Spectrum a = solve_lowest(assemble(mesh, p, BoundaryCondition::Dirichlet), 8);
    const Spectrum b = solve_lowest(assemble(mesh, p.scaled(3.0), BoundaryCondition::Dirichlet), 8);
    for (int i = 0; i < 8; ++i) EXPECT_NEAR(b.eigenvalues[i] / a.eigenvalues[i], 3.0, 1e-9);
}

TEST(SolveLowest, RejectsTooManyEigenvalues) {
    const Mesh mesh = generate_mesh(Domain{Rectangle{1.0, 1.0}}, 0.5);
    const auto system = assemble(mesh, LameParameters(1.0, 0.0), BoundaryCondition::Dirichlet);
    EXPECT_EQ(kind_of([&] { solve_lowest(system, 3); }), ErrorKind::InvalidArgument);
}

TEST(ConvergenceStudy, SquareSecondOrder) {
    const auto study = convergence_study(Domain{Rectangle{1.0, 1.0}}, LameParameters(1.0, 0.0),
                                         BoundaryCondition::Dirichlet, 6, 3, 0.125);
    ASSERT_EQ(study.levels.size(), 3u);
    ASSERT_EQ(study.observed_order.size(), 6u);
    // For tau + mu = 0 the operator is the vector Laplacian: lambda = pi^2 (j^2 + k^2), each twice.
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double exact[6] = {2 * pi2, 2 * pi2, 5 * pi2, 5 * pi2, 5 * pi2, 5 * pi2};
    for (int i = 0; i < 6; ++i) {
        EXPECT_GT(study.observed_order[i], 1.7);
        EXPECT_LT(study.observed_order[i], 2.3);
        const double fine_err = std::abs(study.levels.back().eigenvalues[i] - exact[i]);
        const double extrap_err = std::abs(study.extrapolated.eigenvalues[i] - exact[i]);
        EXPECT_LT(extrap_err, fine_err);
    }
    EXPECT_TRUE(std::get<FemProvenance>(study.extrapolated.provenance).extrapolated);
    EXPECT_EQ(kind_of([] {
                  convergence_study(Domain{Disk{1.0}}, LameParameters(1.0, 0.0), BoundaryCondition::Dirichlet, 3, 2,
                                    0.2);
              }),
              ErrorKind::InvalidArgument);
}

}  // namespace
}  // namespace lamespec
