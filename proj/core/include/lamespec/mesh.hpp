#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "lamespec/domain.hpp"

namespace lamespec {

/// Conforming straight-sided triangulation of a planar domain.
///
/// Triangles are counterclockwise. Boundary edges carry the orientation of
/// their owning triangle, so walking them traces each boundary loop with
/// the domain on the left (outward normal on the right). Boundary nodes of
/// curved domains sit on the exact curve; `domain` remembers the curve so
/// refinement can project new boundary nodes onto it.
struct Mesh {
    std::vector<Point2> nodes;
    std::vector<std::array<int, 3>> triangles;
    std::vector<std::array<int, 2>> boundary_edges;
    std::vector<bool> boundary_node_flags;
    std::optional<Domain> domain;
    int refinement_level = 0;

    std::size_t node_count() const noexcept { return nodes.size(); }
    std::size_t triangle_count() const noexcept { return triangles.size(); }
};

/// Rebuilds boundary_edges and boundary_node_flags from the triangles.
void rebuild_boundary(Mesh& mesh);

/// Throws InvalidMesh unless every triangle has positive area, every edge
/// is shared by at most two triangles with opposite orientation, and the
/// boundary edges form closed loops.
void validate_mesh(const Mesh& mesh);

/// Disks and ellipses: concentric rings with 6i nodes on ring i.
/// Rectangles: structured grid, each cell split along its diagonal.
/// Polygons: ear clipping followed by uniform refinement.
/// Maximum edge length <= 1.5 target_h.
Mesh generate_mesh(const Domain& domain, double target_h);

/// Red refinement: each triangle split into four at its edge midpoints.
Mesh refine(const Mesh& mesh);

double triangle_signed_area(const Mesh& mesh, std::size_t triangle);
double mesh_volume(const Mesh& mesh);
double mesh_boundary_length(const Mesh& mesh);
double max_edge_length(const Mesh& mesh);
std::size_t boundary_loop_count(const Mesh& mesh);

/// Plain-text format: a "LAMESPEC_MESH 1" header, an optional DOMAIN line,
/// then NODES / TRIANGLES / BOUNDARY_EDGES sections with counts.
void write_mesh_text(const Mesh& mesh, std::ostream& out);
Mesh read_mesh_text(std::istream& in);

}  // namespace lamespec
