#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "lamespec/heat_kernel.hpp"

namespace lamespec {

using Point2 = std::array<double, 2>;

struct Interval {
    double length = 1.0;
};
/// Disk of the given radius centred at the origin.
struct Disk {
    double radius = 1.0;
};
/// [0, lx] x [0, ly].
struct Rectangle {
    double lx = 1.0;
    double ly = 1.0;
};
/// x^2/a^2 + y^2/b^2 <= 1.
struct Ellipse {
    double a = 1.0;
    double b = 1.0;
};
/// Simple polygon, vertices listed counterclockwise.
struct Polygon {
    std::vector<Point2> vertices;
};

/// Ground-truth domain description. Interval is the 1-D case; every other
/// shape lives in the plane.
struct Domain {
    std::variant<Interval, Disk, Rectangle, Ellipse, Polygon> shape;

    int dim() const noexcept { return std::holds_alternative<Interval>(shape) ? 1 : 2; }
    std::string kind() const;
    /// True for shapes whose boundary has corners (rectangles, polygons).
    bool has_corners() const noexcept;
    /// Throws DegenerateDomain when a length is non-positive or a polygon
    /// is not simple and counterclockwise.
    void validate() const;
    double diameter() const;
};

/// Exact volume and boundary measure (ellipse perimeter by quadrature).
GeometricData exact_geometry(const Domain& domain);

double polygon_signed_area(const std::vector<Point2>& vertices);
bool polygon_is_simple(const std::vector<Point2>& vertices);

}  // namespace lamespec
