#include "lamespec/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "lamespec/errors.hpp"

namespace lamespec {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kMaxTriangles = 20'000'000;

std::uint64_t edge_key(int a, int b) {
    const auto lo = static_cast<std::uint64_t>(std::min(a, b));
    const auto hi = static_cast<std::uint64_t>(std::max(a, b));
    return (lo << 32) | hi;
}

std::uint64_t directed_key(int a, int b) {
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

double length(const Point2& p, const Point2& q) { return std::hypot(q[0] - p[0], q[1] - p[1]); }

double orient(const Point2& a, const Point2& b, const Point2& c) {
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

/// Concentric-ring triangulation of the unit disk mapped by (x, y) -> (sx x, sy y).
Mesh ring_mesh(int rings, double sx, double sy) {
    Mesh mesh;
    mesh.nodes.reserve(static_cast<std::size_t>(1 + 3 * rings * (rings + 1)));
    mesh.nodes.push_back({0.0, 0.0});
    std::vector<int> ring_start(static_cast<std::size_t>(rings) + 1, 0);
    for (int i = 1; i <= rings; ++i) {
        ring_start[static_cast<std::size_t>(i)] = static_cast<int>(mesh.nodes.size());
        const double r = static_cast<double>(i) / rings;
        const int count = 6 * i;
        for (int k = 0; k < count; ++k) {
            const double theta = kTwoPi * k / count;
            if (i == rings) {
                mesh.nodes.push_back({sx * std::cos(theta), sy * std::sin(theta)});
            } else {
                mesh.nodes.push_back({sx * r * std::cos(theta), sy * r * std::sin(theta)});
            }
        }
    }
    mesh.triangles.reserve(static_cast<std::size_t>(6 * rings * rings));
    for (int k = 0; k < 6; ++k) {
        mesh.triangles.push_back({0, ring_start[1] + k, ring_start[1] + (k + 1) % 6});
    }
    for (int i = 2; i <= rings; ++i) {
        const int inner_count = 6 * (i - 1);
        const int outer_count = 6 * i;
        const int inner0 = ring_start[static_cast<std::size_t>(i - 1)];
        const int outer0 = ring_start[static_cast<std::size_t>(i)];
        int a = 0;
        int b = 0;
        while (a < inner_count || b < outer_count) {
            // Advance whichever ring has the smaller next angle.
            const bool advance_outer =
                a == inner_count ||
                (b < outer_count && (b + 1) * inner_count <= (a + 1) * outer_count);
            if (advance_outer) {
                mesh.triangles.push_back({inner0 + a % inner_count, outer0 + b,
                                          outer0 + (b + 1) % outer_count});
                ++b;
            } else {
                mesh.triangles.push_back({inner0 + a, outer0 + b % outer_count,
                                          inner0 + (a + 1) % inner_count});
                ++a;
            }
        }
    }
    return mesh;
}

Mesh rectangle_mesh(double lx, double ly, double h) {
    const int nx = std::max(1, static_cast<int>(std::ceil(lx / h - 1e-12)));
    const int ny = std::max(1, static_cast<int>(std::ceil(ly / h - 1e-12)));
    Mesh mesh;
    mesh.nodes.reserve(static_cast<std::size_t>((nx + 1) * (ny + 1)));
    for (int j = 0; j <= ny; ++j) {
        for (int i = 0; i <= nx; ++i) {
            // Pin the far edges exactly to lx, ly.
            const double x = i == nx ? lx : lx * i / nx;
            const double y = j == ny ? ly : ly * j / ny;
            mesh.nodes.push_back({x, y});
        }
    }
    auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            mesh.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            mesh.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    }
    return mesh;
}

bool point_in_triangle(const Point2& p, const Point2& a, const Point2& b, const Point2& c) {
    return orient(a, b, p) >= 0.0 && orient(b, c, p) >= 0.0 && orient(c, a, p) >= 0.0;
}

Mesh ear_clip(const std::vector<Point2>& vertices) {
    Mesh mesh;
    mesh.nodes = vertices;
    std::vector<int> ring(vertices.size());
    for (std::size_t i = 0; i < ring.size(); ++i) ring[i] = static_cast<int>(i);
    while (ring.size() > 3) {
        bool clipped = false;
        const std::size_t m = ring.size();
        for (std::size_t i = 0; i < m; ++i) {
            const int prev = ring[(i + m - 1) % m];
            const int cur = ring[i];
            const int next = ring[(i + 1) % m];
            const Point2& a = vertices[static_cast<std::size_t>(prev)];
            const Point2& b = vertices[static_cast<std::size_t>(cur)];
            const Point2& c = vertices[static_cast<std::size_t>(next)];
            if (!(orient(a, b, c) > 0.0)) continue;
            bool blocked = false;
            for (int other : ring) {
                if (other == prev || other == cur || other == next) continue;
                if (point_in_triangle(vertices[static_cast<std::size_t>(other)], a, b, c)) {
                    blocked = true;
                    break;
                }
            }
            if (blocked) continue;
            mesh.triangles.push_back({prev, cur, next});
            ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(i));
            clipped = true;
            break;
        }
        if (!clipped) {
            throw Error(ErrorKind::DegenerateDomain, "ear clipping failed; polygon is degenerate");
        }
    }
    mesh.triangles.push_back({ring[0], ring[1], ring[2]});
    return mesh;
}

Point2 project_to_boundary(const Domain& domain, const Point2& p) {
    if (const auto* disk = std::get_if<Disk>(&domain.shape)) {
        const double r = std::hypot(p[0], p[1]);
        return {p[0] * disk->radius / r, p[1] * disk->radius / r};
    }
    if (const auto* ellipse = std::get_if<Ellipse>(&domain.shape)) {
        const double theta = std::atan2(p[1] / ellipse->b, p[0] / ellipse->a);
        return {ellipse->a * std::cos(theta), ellipse->b * std::sin(theta)};
    }
    return p;
}

}  // namespace

void rebuild_boundary(Mesh& mesh) {
    std::unordered_map<std::uint64_t, std::array<int, 3>> seen;  // key -> {a, b, count}
    seen.reserve(mesh.triangles.size() * 2);
    for (const auto& tri : mesh.triangles) {
        for (int e = 0; e < 3; ++e) {
            const int a = tri[static_cast<std::size_t>(e)];
            const int b = tri[static_cast<std::size_t>((e + 1) % 3)];
            auto [it, inserted] = seen.try_emplace(edge_key(a, b), std::array<int, 3>{a, b, 0});
            ++it->second[2];
        }
    }
    mesh.boundary_edges.clear();
    for (const auto& tri : mesh.triangles) {
        for (int e = 0; e < 3; ++e) {
            const int a = tri[static_cast<std::size_t>(e)];
            const int b = tri[static_cast<std::size_t>((e + 1) % 3)];
            if (seen.at(edge_key(a, b))[2] == 1) mesh.boundary_edges.push_back({a, b});
        }
    }
    mesh.boundary_node_flags.assign(mesh.nodes.size(), false);
    for (const auto& e : mesh.boundary_edges) {
        mesh.boundary_node_flags[static_cast<std::size_t>(e[0])] = true;
        mesh.boundary_node_flags[static_cast<std::size_t>(e[1])] = true;
    }
}

void validate_mesh(const Mesh& mesh) {
    const auto n = static_cast<int>(mesh.nodes.size());
    if (mesh.triangles.empty()) throw Error(ErrorKind::InvalidMesh, "mesh has no triangles");
    std::unordered_set<std::uint64_t> directed;
    std::unordered_map<std::uint64_t, int> undirected;
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto& tri = mesh.triangles[t];
        for (int v : tri) {
            if (v < 0 || v >= n) {
                throw Error(ErrorKind::InvalidMesh, "triangle " + std::to_string(t) + " references node " +
                                                        std::to_string(v) + " out of range");
            }
        }
        if (!(triangle_signed_area(mesh, t) > 0.0)) {
            throw Error(ErrorKind::InvalidMesh,
                        "triangle " + std::to_string(t) + " has non-positive signed area");
        }
        for (int e = 0; e < 3; ++e) {
            const int a = tri[static_cast<std::size_t>(e)];
            const int b = tri[static_cast<std::size_t>((e + 1) % 3)];
            if (!directed.insert(directed_key(a, b)).second) {
                throw Error(ErrorKind::InvalidMesh, "directed edge (" + std::to_string(a) + ", " +
                                                        std::to_string(b) + ") appears twice");
            }
            if (++undirected[edge_key(a, b)] > 2) {
                throw Error(ErrorKind::InvalidMesh, "edge shared by more than two triangles");
            }
        }
    }
    std::unordered_set<std::uint64_t> expected;
    for (const auto& [key, count] : undirected) {
        if (count == 1) expected.insert(key);
    }
    if (expected.size() != mesh.boundary_edges.size()) {
        throw Error(ErrorKind::InvalidMesh, "boundary edge list does not match the triangulation");
    }
    std::vector<int> out_degree(static_cast<std::size_t>(n), 0);
    std::vector<int> in_degree(static_cast<std::size_t>(n), 0);
    for (const auto& e : mesh.boundary_edges) {
        if (!directed.contains(directed_key(e[0], e[1])) || !expected.contains(edge_key(e[0], e[1]))) {
            throw Error(ErrorKind::InvalidMesh, "boundary edge is not a single-owner triangle edge");
        }
        ++out_degree[static_cast<std::size_t>(e[0])];
        ++in_degree[static_cast<std::size_t>(e[1])];
    }
    for (std::size_t v = 0; v < static_cast<std::size_t>(n); ++v) {
        if (out_degree[v] != in_degree[v]) {
            throw Error(ErrorKind::InvalidMesh, "boundary loops are not closed at node " + std::to_string(v));
        }
        if (mesh.boundary_node_flags.size() == static_cast<std::size_t>(n) &&
            mesh.boundary_node_flags[v] != (out_degree[v] > 0)) {
            throw Error(ErrorKind::InvalidMesh, "boundary flag mismatch at node " + std::to_string(v));
        }
    }
}

Mesh generate_mesh(const Domain& domain, double target_h) {
    domain.validate();
    if (domain.dim() != 2) {
        throw Error(ErrorKind::DegenerateDomain, "mesh generation needs a planar domain");
    }
    const double diameter = domain.diameter();
    if (!(target_h > 0.0) || !std::isfinite(target_h)) {
        throw Error(ErrorKind::UnachievableResolution, "target h must be positive");
    }
    if (!(target_h < diameter)) {
        throw Error(ErrorKind::UnachievableResolution,
                    "target h must be smaller than the domain diameter " + std::to_string(diameter));
    }
    const double area = exact_geometry(domain).volume;
    if (area / (0.25 * std::sqrt(3.0) * target_h * target_h) > static_cast<double>(kMaxTriangles)) {
        throw Error(ErrorKind::UnachievableResolution, "target h would exceed the triangle budget",
                    "use a larger h");
    }

    Mesh mesh;
    if (const auto* disk = std::get_if<Disk>(&domain.shape)) {
        const int rings = std::max(1, static_cast<int>(std::ceil(disk->radius / target_h - 1e-12)));
        mesh = ring_mesh(rings, disk->radius, disk->radius);
    } else if (const auto* ellipse = std::get_if<Ellipse>(&domain.shape)) {
        const double major = std::max(ellipse->a, ellipse->b);
        const int rings = std::max(1, static_cast<int>(std::ceil(major / target_h - 1e-12)));
        mesh = ring_mesh(rings, ellipse->a, ellipse->b);
    } else if (const auto* rect = std::get_if<Rectangle>(&domain.shape)) {
        mesh = rectangle_mesh(rect->lx, rect->ly, target_h);
    } else {
        const auto& polygon = std::get<Polygon>(domain.shape);
        mesh = ear_clip(polygon.vertices);
        mesh.domain = domain;
        rebuild_boundary(mesh);
        while (max_edge_length(mesh) > 1.5 * target_h) mesh = refine(mesh);
        mesh.refinement_level = 0;
        validate_mesh(mesh);
        return mesh;
    }
    mesh.domain = domain;
    rebuild_boundary(mesh);
    validate_mesh(mesh);
    return mesh;
}

Mesh refine(const Mesh& mesh) {
    Mesh out;
    out.domain = mesh.domain;
    out.refinement_level = mesh.refinement_level + 1;
    out.nodes = mesh.nodes;
    out.nodes.reserve(mesh.nodes.size() + mesh.triangles.size() * 3 / 2 + mesh.boundary_edges.size());

    std::unordered_set<std::uint64_t> boundary;
    for (const auto& e : mesh.boundary_edges) boundary.insert(edge_key(e[0], e[1]));

    std::unordered_map<std::uint64_t, int> midpoint;
    midpoint.reserve(mesh.triangles.size() * 2);
    auto mid = [&](int a, int b) {
        const auto key = edge_key(a, b);
        if (auto it = midpoint.find(key); it != midpoint.end()) return it->second;
        const Point2& p = mesh.nodes[static_cast<std::size_t>(a)];
        const Point2& q = mesh.nodes[static_cast<std::size_t>(b)];
        Point2 m{0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])};
        if (out.domain && boundary.contains(key)) m = project_to_boundary(*out.domain, m);
        const int id = static_cast<int>(out.nodes.size());
        out.nodes.push_back(m);
        midpoint.emplace(key, id);
        return id;
    };

    out.triangles.reserve(mesh.triangles.size() * 4);
    for (const auto& t : mesh.triangles) {
        const int ab = mid(t[0], t[1]);
        const int bc = mid(t[1], t[2]);
        const int ca = mid(t[2], t[0]);
        out.triangles.push_back({t[0], ab, ca});
        out.triangles.push_back({ab, t[1], bc});
        out.triangles.push_back({ca, bc, t[2]});
        out.triangles.push_back({ab, bc, ca});
    }
    rebuild_boundary(out);
    return out;
}

double triangle_signed_area(const Mesh& mesh, std::size_t triangle) {
    const auto& t = mesh.triangles[triangle];
    return 0.5 * orient(mesh.nodes[static_cast<std::size_t>(t[0])], mesh.nodes[static_cast<std::size_t>(t[1])],
                        mesh.nodes[static_cast<std::size_t>(t[2])]);
}

double mesh_volume(const Mesh& mesh) {
    double sum = 0.0;
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) sum += triangle_signed_area(mesh, t);
    return sum;
}

double mesh_boundary_length(const Mesh& mesh) {
    double sum = 0.0;
    for (const auto& e : mesh.boundary_edges) {
        sum += length(mesh.nodes[static_cast<std::size_t>(e[0])], mesh.nodes[static_cast<std::size_t>(e[1])]);
    }
    return sum;
}

double max_edge_length(const Mesh& mesh) {
    double longest = 0.0;
    for (const auto& t : mesh.triangles) {
        for (int e = 0; e < 3; ++e) {
            longest = std::max(longest, length(mesh.nodes[static_cast<std::size_t>(t[static_cast<std::size_t>(e)])],
                                               mesh.nodes[static_cast<std::size_t>(t[static_cast<std::size_t>((e + 1) % 3)])]));
        }
    }
    return longest;
}

std::size_t boundary_loop_count(const Mesh& mesh) {
    std::unordered_map<int, int> next;
    for (const auto& e : mesh.boundary_edges) next[e[0]] = e[1];
    std::unordered_set<int> visited;
    std::size_t loops = 0;
    for (const auto& e : mesh.boundary_edges) {
        if (visited.contains(e[0])) continue;
        ++loops;
        int v = e[0];
        while (visited.insert(v).second) v = next.at(v);
    }
    return loops;
}

namespace {

void write_domain_line(const Domain& domain, std::ostream& out) {
    out << "DOMAIN " << domain.kind();
    if (const auto* s = std::get_if<Interval>(&domain.shape)) out << ' ' << s->length;
    if (const auto* s = std::get_if<Disk>(&domain.shape)) out << ' ' << s->radius;
    if (const auto* s = std::get_if<Rectangle>(&domain.shape)) out << ' ' << s->lx << ' ' << s->ly;
    if (const auto* s = std::get_if<Ellipse>(&domain.shape)) out << ' ' << s->a << ' ' << s->b;
    if (const auto* s = std::get_if<Polygon>(&domain.shape)) {
        out << ' ' << s->vertices.size();
        for (const auto& p : s->vertices) out << ' ' << p[0] << ' ' << p[1];
    }
    out << '\n';
}

Domain read_domain_line(std::istringstream& in) {
    std::string kind;
    in >> kind;
    Domain domain;
    if (kind == "interval") {
        Interval s;
        in >> s.length;
        domain.shape = s;
    } else if (kind == "disk") {
        Disk s;
        in >> s.radius;
        domain.shape = s;
    } else if (kind == "rectangle") {
        Rectangle s;
        in >> s.lx >> s.ly;
        domain.shape = s;
    } else if (kind == "ellipse") {
        Ellipse s;
        in >> s.a >> s.b;
        domain.shape = s;
    } else if (kind == "polygon") {
        std::size_t count = 0;
        in >> count;
        Polygon s;
        s.vertices.resize(count);
        for (auto& p : s.vertices) in >> p[0] >> p[1];
        domain.shape = s;
    } else {
        throw Error(ErrorKind::Schema, "unknown DOMAIN kind '" + kind + "'");
    }
    if (!in) throw Error(ErrorKind::Schema, "malformed DOMAIN line");
    domain.validate();
    return domain;
}

std::size_t read_section_header(std::istream& in, const std::string& name) {
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        std::size_t count = 0;
        ls >> tag >> count;
        if (tag != name || !ls) throw Error(ErrorKind::Schema, "expected section " + name + ", got '" + line + "'");
        return count;
    }
    throw Error(ErrorKind::Schema, "missing section " + name);
}

}  // namespace

void write_mesh_text(const Mesh& mesh, std::ostream& out) {
    const auto old_precision = out.precision(17);
    out << "LAMESPEC_MESH 1\n";
    if (mesh.domain) write_domain_line(*mesh.domain, out);
    out << "NODES " << mesh.nodes.size() << '\n';
    for (const auto& p : mesh.nodes) out << p[0] << ' ' << p[1] << '\n';
    out << "TRIANGLES " << mesh.triangles.size() << '\n';
    for (const auto& t : mesh.triangles) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    out << "BOUNDARY_EDGES " << mesh.boundary_edges.size() << '\n';
    for (const auto& e : mesh.boundary_edges) out << e[0] << ' ' << e[1] << '\n';
    out.precision(old_precision);
}

Mesh read_mesh_text(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorKind::Schema, "empty mesh file");
    {
        std::istringstream ls(line);
        std::string magic;
        int version = 0;
        ls >> magic >> version;
        if (magic != "LAMESPEC_MESH") throw Error(ErrorKind::Schema, "missing LAMESPEC_MESH header");
        if (version != 1) {
            throw Error(ErrorKind::Schema, "unsupported mesh format version " + std::to_string(version));
        }
    }
    Mesh mesh;
    const auto start = in.tellg();
    if (std::getline(in, line) && line.rfind("DOMAIN", 0) == 0) {
        std::istringstream ls(line.substr(6));
        mesh.domain = read_domain_line(ls);
    } else {
        in.clear();
        in.seekg(start);
    }
    const std::size_t node_count = read_section_header(in, "NODES");
    mesh.nodes.resize(node_count);
    for (auto& p : mesh.nodes) {
        if (!(in >> p[0] >> p[1])) throw Error(ErrorKind::Schema, "truncated NODES section");
    }
    in >> std::ws;
    const std::size_t tri_count = read_section_header(in, "TRIANGLES");
    mesh.triangles.resize(tri_count);
    for (auto& t : mesh.triangles) {
        if (!(in >> t[0] >> t[1] >> t[2])) throw Error(ErrorKind::Schema, "truncated TRIANGLES section");
    }
    in >> std::ws;
    const std::size_t edge_count = read_section_header(in, "BOUNDARY_EDGES");
    mesh.boundary_edges.resize(edge_count);
    for (auto& e : mesh.boundary_edges) {
        if (!(in >> e[0] >> e[1])) throw Error(ErrorKind::Schema, "truncated BOUNDARY_EDGES section");
    }
    mesh.boundary_node_flags.assign(mesh.nodes.size(), false);
    for (const auto& e : mesh.boundary_edges) {
        for (int v : e) {
            if (v < 0 || static_cast<std::size_t>(v) >= mesh.nodes.size()) {
                throw Error(ErrorKind::InvalidMesh, "boundary edge references a node out of range");
            }
            mesh.boundary_node_flags[static_cast<std::size_t>(v)] = true;
        }
    }
    validate_mesh(mesh);
    return mesh;
}

}  // namespace lamespec
