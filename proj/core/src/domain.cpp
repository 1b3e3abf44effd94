#include "lamespec/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lamespec/errors.hpp"
#include "lamespec/quadrature.hpp"

namespace lamespec {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw Error(ErrorKind::DegenerateDomain, std::string(what) + " must be positive and finite");
    }
}

double cross(const Point2& o, const Point2& a, const Point2& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

bool on_segment(const Point2& p, const Point2& q, const Point2& r) {
    return std::min(p[0], r[0]) <= q[0] && q[0] <= std::max(p[0], r[0]) &&
           std::min(p[1], r[1]) <= q[1] && q[1] <= std::max(p[1], r[1]);
}

bool segments_intersect(const Point2& p1, const Point2& p2, const Point2& p3, const Point2& p4) {
    const double d1 = cross(p3, p4, p1);
    const double d2 = cross(p3, p4, p2);
    const double d3 = cross(p1, p2, p3);
    const double d4 = cross(p1, p2, p4);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
        return true;
    }
    if (d1 == 0 && on_segment(p3, p1, p4)) return true;
    if (d2 == 0 && on_segment(p3, p2, p4)) return true;
    if (d3 == 0 && on_segment(p1, p3, p2)) return true;
    if (d4 == 0 && on_segment(p1, p4, p2)) return true;
    return false;
}

}  // namespace

double polygon_signed_area(const std::vector<Point2>& v) {
    double twice = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point2& a = v[i];
        const Point2& b = v[(i + 1) % v.size()];
        twice += a[0] * b[1] - b[0] * a[1];
    }
    return 0.5 * twice;
}

bool polygon_is_simple(const std::vector<Point2>& v) {
    const std::size_t n = v.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if (adjacent) {
                if (v[i] == v[j]) return false;
                continue;
            }
            if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n])) return false;
        }
    }
    return true;
}

std::string Domain::kind() const {
    return std::visit(Overloaded{[](const Interval&) { return std::string("interval"); },
                                 [](const Disk&) { return std::string("disk"); },
                                 [](const Rectangle&) { return std::string("rectangle"); },
                                 [](const Ellipse&) { return std::string("ellipse"); },
                                 [](const Polygon&) { return std::string("polygon"); }},
                      shape);
}

bool Domain::has_corners() const noexcept {
    return std::holds_alternative<Rectangle>(shape) || std::holds_alternative<Polygon>(shape);
}

void Domain::validate() const {
    std::visit(Overloaded{[](const Interval& s) { require_positive(s.length, "interval length"); },
                          [](const Disk& s) { require_positive(s.radius, "disk radius"); },
                          [](const Rectangle& s) {
                              require_positive(s.lx, "rectangle width");
                              require_positive(s.ly, "rectangle height");
                          },
                          [](const Ellipse& s) {
                              require_positive(s.a, "ellipse semi-axis a");
                              require_positive(s.b, "ellipse semi-axis b");
                          },
                          [](const Polygon& s) {
                              if (s.vertices.size() < 3) {
                                  throw Error(ErrorKind::DegenerateDomain, "polygon needs >= 3 vertices");
                              }
                              for (const auto& p : s.vertices) {
                                  if (!std::isfinite(p[0]) || !std::isfinite(p[1])) {
                                      throw Error(ErrorKind::DegenerateDomain, "polygon vertex is not finite");
                                  }
                              }
                              if (!polygon_is_simple(s.vertices)) {
                                  throw Error(ErrorKind::DegenerateDomain, "polygon is not simple");
                              }
                              if (!(polygon_signed_area(s.vertices) > 0.0)) {
                                  throw Error(ErrorKind::DegenerateDomain,
                                              "polygon vertices must be counterclockwise",
                                              "reverse the vertex order");
                              }
                          }},
               shape);
}

double Domain::diameter() const {
    return std::visit(Overloaded{[](const Interval& s) { return s.length; },
                                 [](const Disk& s) { return 2.0 * s.radius; },
                                 [](const Rectangle& s) { return std::hypot(s.lx, s.ly); },
                                 [](const Ellipse& s) { return 2.0 * std::max(s.a, s.b); },
                                 [](const Polygon& s) {
                                     double d = 0.0;
                                     for (const auto& p : s.vertices) {
                                         for (const auto& q : s.vertices) {
                                             d = std::max(d, std::hypot(p[0] - q[0], p[1] - q[1]));
                                         }
                                     }
                                     return d;
                                 }},
                      shape);
}

GeometricData exact_geometry(const Domain& domain) {
    domain.validate();
    constexpr double pi = std::numbers::pi;
    return std::visit(
        Overloaded{[](const Interval& s) { return GeometricData{1, s.length, 2.0}; },
                   [](const Disk& s) {
                       return GeometricData{2, pi * s.radius * s.radius, 2.0 * pi * s.radius};
                   },
                   [](const Rectangle& s) { return GeometricData{2, s.lx * s.ly, 2.0 * (s.lx + s.ly)}; },
                   [](const Ellipse& s) {
                       auto speed = [&](double th) {
                           return std::hypot(s.a * std::sin(th), s.b * std::cos(th));
                       };
                       const double perimeter = quadrature::integrate(speed, 0.0, 2.0 * pi).value;
                       return GeometricData{2, pi * s.a * s.b, perimeter};
                   },
                   [](const Polygon& s) {
                       double perimeter = 0.0;
                       const auto& v = s.vertices;
                       for (std::size_t i = 0; i < v.size(); ++i) {
                           const auto& a = v[i];
                           const auto& b = v[(i + 1) % v.size()];
                           perimeter += std::hypot(b[0] - a[0], b[1] - a[1]);
                       }
                       return GeometricData{2, polygon_signed_area(v), perimeter};
                   }},
        domain.shape);
}

}  // namespace lamespec
