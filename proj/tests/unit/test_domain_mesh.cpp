#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "lamespec/domain.hpp"
#include "lamespec/errors.hpp"
#include "lamespec/mesh.hpp"

namespace lamespec {
namespace {

constexpr double kPi = std::numbers::pi;

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorKind::Io;
}

const Polygon kUnitSquare{{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}};

TEST(Domain, ValidationErrors) {
    EXPECT_EQ(kind_of([] { Domain{Disk{0.0}}.validate(); }), ErrorKind::DegenerateDomain);
    EXPECT_EQ(kind_of([] { Domain{Rectangle{1.0, -1.0}}.validate(); }), ErrorKind::DegenerateDomain);
    EXPECT_EQ(kind_of([] { Domain{Ellipse{NAN, 1.0}}.validate(); }), ErrorKind::DegenerateDomain);
    EXPECT_EQ(kind_of([] { Domain{Polygon{{{0, 0}, {1, 0}}}}.validate(); }), ErrorKind::DegenerateDomain);
    // Bow tie.
    EXPECT_EQ(kind_of([] { Domain{Polygon{{{0, 0}, {1, 1}, {1, 0}, {0, 1}}}}.validate(); }),
              ErrorKind::DegenerateDomain);
    // Clockwise.
    EXPECT_EQ(kind_of([] { Domain{Polygon{{{0, 0}, {0, 1}, {1, 1}, {1, 0}}}}.validate(); }),
              ErrorKind::DegenerateDomain);
    EXPECT_NO_THROW(Domain{kUnitSquare}.validate());
}

TEST(Domain, ExactGeometry) {
    const auto disk = exact_geometry(Domain{Disk{2.0}});
    EXPECT_NEAR(disk.volume, 4.0 * kPi, 1e-14);
    EXPECT_NEAR(disk.boundary_area, 4.0 * kPi, 1e-14);
    const auto rect = exact_geometry(Domain{Rectangle{2.0, 3.0}});
    EXPECT_DOUBLE_EQ(rect.volume, 6.0);
    EXPECT_DOUBLE_EQ(rect.boundary_area, 10.0);
    // Ramanujan's second approximation is accurate to ~1e-10 at this aspect ratio.
    const double a = 2.0, b = 1.0, h = std::pow((a - b) / (a + b), 2);
    const double ramanujan = kPi * (a + b) * (1 + 3 * h / (10 + std::sqrt(4 - 3 * h)));
    const auto ellipse = exact_geometry(Domain{Ellipse{a, b}});
    EXPECT_NEAR(ellipse.volume, 2.0 * kPi, 1e-14);
    EXPECT_NEAR(ellipse.boundary_area, ramanujan, 1e-8);
    const auto poly = exact_geometry(Domain{kUnitSquare});
    EXPECT_DOUBLE_EQ(poly.volume, 1.0);
    EXPECT_DOUBLE_EQ(poly.boundary_area, 4.0);
    const auto line = exact_geometry(Domain{Interval{3.0}});
    EXPECT_EQ(line.dim, 1);
    EXPECT_DOUBLE_EQ(line.boundary_area, 2.0);
}

TEST(Domain, CornersAndDiameter) {
    EXPECT_TRUE((Domain{Rectangle{1, 1}}.has_corners()));
    EXPECT_TRUE(Domain{kUnitSquare}.has_corners());
    EXPECT_FALSE(Domain{Disk{1}}.has_corners());
    EXPECT_FALSE((Domain{Ellipse{2, 1}}.has_corners()));
    EXPECT_DOUBLE_EQ((Domain{Rectangle{3, 4}}.diameter()), 5.0);
    EXPECT_DOUBLE_EQ(Domain{Disk{1.5}}.diameter(), 3.0);
}

TEST(Mesh, StructuredSquare) {
    const Mesh mesh = generate_mesh(Domain{Rectangle{1.0, 1.0}}, 0.5);
    EXPECT_EQ(mesh.triangle_count(), 8u);
    EXPECT_EQ(mesh.node_count(), 9u);
    EXPECT_NO_THROW(validate_mesh(mesh));
    EXPECT_NEAR(mesh_volume(mesh), 1.0, 1e-15);
    EXPECT_NEAR(mesh_boundary_length(mesh), 4.0, 1e-15);
    const Mesh fine = refine(mesh);
    EXPECT_EQ(fine.triangle_count(), 32u);
    EXPECT_EQ(fine.refinement_level, 1);
    EXPECT_NO_THROW(validate_mesh(fine));
    EXPECT_NEAR(mesh_volume(fine), 1.0, 1e-15);
    EXPECT_NEAR(mesh_boundary_length(fine), 4.0, 1e-15);
}

TEST(Mesh, PolygonSquare) {
    const Mesh mesh = generate_mesh(Domain{kUnitSquare}, 0.25);
    EXPECT_EQ(mesh.triangle_count(), 32u);
    EXPECT_NO_THROW(validate_mesh(mesh));
    EXPECT_NEAR(mesh_volume(mesh), 1.0, 1e-14);
    EXPECT_EQ(boundary_loop_count(mesh), 1u);
}

TEST(Mesh, NonConvexPolygon) {
    const Domain l_shape{Polygon{{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}}};
    const Mesh mesh = generate_mesh(l_shape, 0.2);
    EXPECT_NO_THROW(validate_mesh(mesh));
    EXPECT_NEAR(mesh_volume(mesh), 3.0, 1e-13);
    EXPECT_NEAR(mesh_boundary_length(mesh), 8.0, 1e-13);
    EXPECT_LE(max_edge_length(mesh), 1.5 * 0.2 + 1e-12);
    for (std::size_t t = 0; t < mesh.triangle_count(); ++t) EXPECT_GT(triangle_signed_area(mesh, t), 0.0);
}

TEST(Mesh, DiskAreaAndConvergence) {
    const Mesh coarse = generate_mesh(Domain{Disk{1.0}}, 0.2);
    EXPECT_NO_THROW(validate_mesh(coarse));
    const double e0 = kPi - mesh_volume(coarse);
    EXPECT_GT(e0, 0.0);
    EXPECT_LT(e0 / kPi, 0.02);
    EXPECT_EQ(boundary_loop_count(coarse), 1u);
    const Mesh fine = refine(coarse);
    EXPECT_NO_THROW(validate_mesh(fine));
    const double e1 = kPi - mesh_volume(fine);
    EXPECT_NEAR(e0 / e1, 4.0, 0.2);
    const Mesh finer = refine(refine(fine));
    EXPECT_EQ(finer.refinement_level, 3);
    const double h_rel = 1.0 - mesh_boundary_length(finer) / (2.0 * kPi);
    EXPECT_GT(h_rel, 0.0);
    EXPECT_LT(h_rel, 1e-3);
    // Boundary nodes lie on the circle after refinement.
    for (std::size_t v = 0; v < finer.node_count(); ++v) {
        if (finer.boundary_node_flags[v]) EXPECT_NEAR(std::hypot(finer.nodes[v][0], finer.nodes[v][1]), 1.0, 1e-14);
    }
}

TEST(Mesh, Ellipse) {
    const Mesh mesh = refine(refine(generate_mesh(Domain{Ellipse{2.0, 1.0}}, 0.2)));
    EXPECT_NO_THROW(validate_mesh(mesh));
    EXPECT_NEAR(mesh_volume(mesh) / (2.0 * kPi), 1.0, 1e-3);
}

TEST(Mesh, ResolutionLimits) {
    EXPECT_EQ(kind_of([] { generate_mesh(Domain{Disk{1.0}}, 0.0); }), ErrorKind::UnachievableResolution);
    EXPECT_EQ(kind_of([] { generate_mesh(Domain{Disk{1.0}}, 5.0); }), ErrorKind::UnachievableResolution);
    EXPECT_EQ(kind_of([] { generate_mesh(Domain{Disk{1.0}}, 1e-6); }), ErrorKind::UnachievableResolution);
    EXPECT_EQ(kind_of([] { generate_mesh(Domain{Interval{1.0}}, 0.1); }), ErrorKind::DegenerateDomain);
}

TEST(Mesh, ValidationCatchesCorruption) {
    Mesh mesh = generate_mesh(Domain{Rectangle{1.0, 1.0}}, 0.5);
    Mesh flipped = mesh;
    std::swap(flipped.triangles[0][1], flipped.triangles[0][2]);
    EXPECT_EQ(kind_of([&] { validate_mesh(flipped); }), ErrorKind::InvalidMesh);
    Mesh dangling = mesh;
    dangling.triangles[0][0] = 99;
    EXPECT_EQ(kind_of([&] { validate_mesh(dangling); }), ErrorKind::InvalidMesh);
    Mesh missing = mesh;
    missing.boundary_edges.pop_back();
    EXPECT_EQ(kind_of([&] { validate_mesh(missing); }), ErrorKind::InvalidMesh);
    Mesh flags = mesh;
    flags.boundary_node_flags[4] = !flags.boundary_node_flags[4];
    EXPECT_EQ(kind_of([&] { validate_mesh(flags); }), ErrorKind::InvalidMesh);
    Mesh empty;
    EXPECT_EQ(kind_of([&] { validate_mesh(empty); }), ErrorKind::InvalidMesh);
}

TEST(Mesh, TextRoundTrip) {
    const Mesh mesh = generate_mesh(Domain{Disk{1.0}}, 0.3);
    std::stringstream first;
    write_mesh_text(mesh, first);
    const Mesh back = read_mesh_text(first);
    ASSERT_EQ(back.node_count(), mesh.node_count());
    ASSERT_EQ(back.triangles, mesh.triangles);
    ASSERT_EQ(back.boundary_edges, mesh.boundary_edges);
    for (std::size_t v = 0; v < mesh.node_count(); ++v) EXPECT_EQ(back.nodes[v], mesh.nodes[v]);
    ASSERT_TRUE(back.domain.has_value());
    EXPECT_EQ(back.domain->kind(), "disk");
    std::stringstream second;
    write_mesh_text(back, second);
    EXPECT_EQ(first.str(), second.str());
}

TEST(Mesh, TextRejectsMalformed) {
    std::stringstream bad("NOT_A_MESH\n");
    EXPECT_EQ(kind_of([&] { read_mesh_text(bad); }), ErrorKind::Schema);
    std::stringstream truncated("LAMESPEC_MESH 1\nNODES 3\n0 0\n1 0\n");
    EXPECT_EQ(kind_of([&] { read_mesh_text(truncated); }), ErrorKind::Schema);
}

}  // namespace
}  // namespace lamespec
