#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lamespec/lanczos.hpp"
#include "lamespec/mesh.hpp"
#include "lamespec/sparse.hpp"
#include "lamespec/spectrum.hpp"

namespace lamespec {

/// Vector P1 discretization of the Navier-Lame pencil on a triangle mesh.
/// Unknowns are numbered node-major, two components per free node.
struct AssembledSystem {
    SparseSymmetricMatrix stiffness;
    SparseSymmetricMatrix mass;
    /// First unknown of each node, or -1 for nodes removed by Dirichlet elimination.
    std::vector<int> node_dof;
    BoundaryCondition bc = BoundaryCondition::Dirichlet;
    LameParameters params{1.0, 0.0};
    FemProvenance mesh_meta;
    std::optional<Domain> domain;
    double diameter = 0.0;

    int unknowns() const noexcept { return stiffness.dim(); }
};

/// Stiffness of tau (grad u : grad v) + (tau + mu) (div u)(div v) for one
/// triangle, 6x6 with unknown order (x0, y0, x1, y1, x2, y2).
std::array<std::array<double, 6>, 6> element_stiffness(const Point2& p0, const Point2& p1, const Point2& p2,
                                                       const LameParameters& params);
/// Consistent P1 mass, area/12 (1 + delta_ij) per component.
std::array<std::array<double, 6>, 6> element_mass(const Point2& p0, const Point2& p1, const Point2& p2);

/// Dirichlet removes every boundary node; Neumann keeps all unknowns, which
/// is the natural condition of the bilinear form (rigid translations lie in
/// the kernel). Throws EmptyInterior when Dirichlet leaves nothing.
AssembledSystem assemble(const Mesh& mesh, const LameParameters& params, BoundaryCondition bc);

/// Default shift: 0 for Dirichlet, a small negative value for Neumann.
double default_shift(const AssembledSystem& system);

/// The k smallest eigenvalues by shift-invert Lanczos.
Spectrum solve_lowest(const AssembledSystem& system, int k, std::optional<double> sigma = std::nullopt,
                      const LanczosOptions& options = {});

struct ConvergenceStudy {
    std::vector<Spectrum> levels;     ///< coarse to fine
    Spectrum extrapolated;            ///< Richardson with order 2 on the two finest levels
    std::vector<double> observed_order;  ///< log2 of successive difference ratios, per eigenvalue
    std::vector<std::string> warnings;
};

/// Solves on `levels` uniformly refined meshes starting from target size h0.
/// Non-monotone sequences are reported in `warnings`, not thrown.
ConvergenceStudy convergence_study(const Domain& domain, const LameParameters& params, BoundaryCondition bc,
                                   int k, int levels, double h0, const LanczosOptions& options = {});

}  // namespace lamespec
