#include "lamespec/fem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lamespec/errors.hpp"

namespace lamespec {

namespace {

using Element = std::array<std::array<double, 6>, 6>;

struct Gradients {
    double area = 0.0;
    std::array<std::array<double, 2>, 3> grad{};
};

Gradients barycentric_gradients(const Point2& p0, const Point2& p1, const Point2& p2) {
    const std::array<Point2, 3> p{p0, p1, p2};
    Gradients g;
    g.area = 0.5 * ((p1[0] - p0[0]) * (p2[1] - p0[1]) - (p1[1] - p0[1]) * (p2[0] - p0[0]));
    if (!(g.area > 0.0)) throw Error(ErrorKind::InvalidMesh, "element with non-positive area");
    for (int i = 0; i < 3; ++i) {
        const auto& a = p[static_cast<std::size_t>((i + 1) % 3)];
        const auto& b = p[static_cast<std::size_t>((i + 2) % 3)];
        g.grad[static_cast<std::size_t>(i)] = {(a[1] - b[1]) / (2.0 * g.area), (b[0] - a[0]) / (2.0 * g.area)};
    }
    return g;
}

double mesh_diameter(const Mesh& mesh) {
    if (mesh.domain) return mesh.domain->diameter();
    double lo[2] = {INFINITY, INFINITY};
    double hi[2] = {-INFINITY, -INFINITY};
    for (const auto& p : mesh.nodes) {
        for (int c = 0; c < 2; ++c) {
            lo[c] = std::min(lo[c], p[static_cast<std::size_t>(c)]);
            hi[c] = std::max(hi[c], p[static_cast<std::size_t>(c)]);
        }
    }
    return std::hypot(hi[0] - lo[0], hi[1] - lo[1]);
}

}  // namespace

Element element_stiffness(const Point2& p0, const Point2& p1, const Point2& p2, const LameParameters& params) {
    const Gradients g = barycentric_gradients(p0, p1, p2);
    const double tau = params.tau();
    const double grad_div = params.tau() + params.mu();
    Element k{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const auto& gi = g.grad[static_cast<std::size_t>(i)];
            const auto& gj = g.grad[static_cast<std::size_t>(j)];
            const double dot = gi[0] * gj[0] + gi[1] * gj[1];
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    const double value = (a == b ? tau * dot : 0.0) +
                                         grad_div * gi[static_cast<std::size_t>(a)] * gj[static_cast<std::size_t>(b)];
                    k[static_cast<std::size_t>(2 * i + a)][static_cast<std::size_t>(2 * j + b)] = g.area * value;
                }
            }
        }
    }
    return k;
}

Element element_mass(const Point2& p0, const Point2& p1, const Point2& p2) {
    const double area = barycentric_gradients(p0, p1, p2).area;
    Element m{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const double value = area / 12.0 * (i == j ? 2.0 : 1.0);
            for (int a = 0; a < 2; ++a) {
                m[static_cast<std::size_t>(2 * i + a)][static_cast<std::size_t>(2 * j + a)] = value;
            }
        }
    }
    return m;
}

AssembledSystem assemble(const Mesh& mesh, const LameParameters& params, BoundaryCondition bc) {
    validate_mesh(mesh);
    AssembledSystem sys;
    sys.bc = bc;
    sys.params = params;
    sys.domain = mesh.domain;
    sys.node_dof.assign(mesh.nodes.size(), -1);
    int next = 0;
    for (std::size_t v = 0; v < mesh.nodes.size(); ++v) {
        if (bc == BoundaryCondition::Dirichlet && mesh.boundary_node_flags[v]) continue;
        sys.node_dof[v] = next;
        next += 2;
    }
    if (next == 0) {
        throw Error(ErrorKind::EmptyInterior, "no interior nodes remain after Dirichlet elimination",
                    "refine the mesh");
    }
    sys.stiffness = SparseSymmetricMatrix(next);
    sys.mass = SparseSymmetricMatrix(next);
    for (const auto& tri : mesh.triangles) {
        const auto& p0 = mesh.nodes[static_cast<std::size_t>(tri[0])];
        const auto& p1 = mesh.nodes[static_cast<std::size_t>(tri[1])];
        const auto& p2 = mesh.nodes[static_cast<std::size_t>(tri[2])];
        const Element ke = element_stiffness(p0, p1, p2, params);
        const Element me = element_mass(p0, p1, p2);
        for (int i = 0; i < 6; ++i) {
            const int gi = sys.node_dof[static_cast<std::size_t>(tri[static_cast<std::size_t>(i / 2)])];
            if (gi < 0) continue;
            for (int j = 0; j < 6; ++j) {
                const int gj = sys.node_dof[static_cast<std::size_t>(tri[static_cast<std::size_t>(j / 2)])];
                if (gj < 0) continue;
                const int row = gi + i % 2;
                const int col = gj + j % 2;
                if (row > col) continue;  // upper triangle only
                const double kv = ke[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                const double mv = me[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if (kv != 0.0) sys.stiffness.add(row, col, kv);
                if (mv != 0.0) sys.mass.add(row, col, mv);
            }
        }
    }
    sys.stiffness.compress();
    sys.mass.compress();

    sys.mesh_meta.domain_kind = mesh.domain ? mesh.domain->kind() : "mesh";
    sys.mesh_meta.nodes = mesh.nodes.size();
    sys.mesh_meta.triangles = mesh.triangles.size();
    sys.mesh_meta.unknowns = static_cast<std::size_t>(next);
    sys.mesh_meta.refinement_level = mesh.refinement_level;
    sys.mesh_meta.max_edge = max_edge_length(mesh);
    sys.diameter = mesh_diameter(mesh);
    return sys;
}

double default_shift(const AssembledSystem& system) {
    if (system.bc == BoundaryCondition::Dirichlet) return 0.0;
    return -0.5 * system.params.tau() / (system.diameter * system.diameter);
}

Spectrum solve_lowest(const AssembledSystem& system, int k, std::optional<double> sigma,
                      const LanczosOptions& options) {
    if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be >= 1");
    if (k > system.unknowns()) {
        throw Error(ErrorKind::InvalidArgument, "k = " + std::to_string(k) + " exceeds the " +
                                                    std::to_string(system.unknowns()) + " unknowns",
                    "refine the mesh or lower k");
    }
    const double shift = sigma.value_or(default_shift(system));
    const auto pairs =
        shift_invert_lanczos(system.stiffness.to_eigen(), system.mass.to_eigen(), k, shift, options);

    Spectrum s;
    s.dim = 2;
    s.bc = system.bc;
    s.params = system.params;
    s.eigenvalues = pairs.values;
    s.provenance = system.mesh_meta;
    s.domain_meta = system.domain;
    if (system.bc == BoundaryCondition::Neumann) s.notes.emplace_back("natural-BC approximation");
    if (system.domain && system.domain->has_corners()) s.notes.emplace_back("domain has corners");
    return s;
}

ConvergenceStudy convergence_study(const Domain& domain, const LameParameters& params, BoundaryCondition bc,
                                   int k, int levels, double h0, const LanczosOptions& options) {
    if (levels < 3) throw Error(ErrorKind::InvalidArgument, "a convergence study needs at least 3 levels");
    ConvergenceStudy study;
    Mesh mesh = generate_mesh(domain, h0);
    for (int level = 0; level < levels; ++level) {
        if (level > 0) mesh = refine(mesh);
        study.levels.push_back(solve_lowest(assemble(mesh, params, bc), k, std::nullopt, options));
    }

    const auto& fine = study.levels[static_cast<std::size_t>(levels - 1)].eigenvalues;
    const auto& mid = study.levels[static_cast<std::size_t>(levels - 2)].eigenvalues;
    const auto& coarse = study.levels[static_cast<std::size_t>(levels - 3)].eigenvalues;

    for (int level = 1; level < levels; ++level) {
        const auto& a = study.levels[static_cast<std::size_t>(level - 1)].eigenvalues;
        const auto& b = study.levels[static_cast<std::size_t>(level)].eigenvalues;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (b[i] > a[i] * (1.0 + 1e-9) + 1e-12) {
                std::ostringstream msg;
                msg << "lambda_" << i + 1 << " increased from level " << level - 1 << " to " << level;
                study.warnings.push_back(msg.str());
            }
        }
    }

    study.extrapolated = study.levels.back();
    auto& meta = std::get<FemProvenance>(study.extrapolated.provenance);
    meta.extrapolated = true;
    study.observed_order.resize(fine.size());
    for (std::size_t i = 0; i < fine.size(); ++i) {
        study.extrapolated.eigenvalues[i] = (4.0 * fine[i] - mid[i]) / 3.0;
        const double d1 = coarse[i] - mid[i];
        const double d2 = mid[i] - fine[i];
        if (d1 > 0.0 && d2 > 0.0) {
            study.observed_order[i] = std::log2(d1 / d2);
        } else {
            study.observed_order[i] = std::nan("");
            if (std::abs(fine[i]) > 1e-8 * std::abs(fine.back())) {
                study.warnings.push_back("lambda_" + std::to_string(i + 1) +
                                         ": differences not positive, order undefined");
            }
        }
    }
    std::sort(study.extrapolated.eigenvalues.begin(), study.extrapolated.eigenvalues.end());
    study.extrapolated.notes.emplace_back("Richardson extrapolation, order 2");
    return study;
}

}  // namespace lamespec
