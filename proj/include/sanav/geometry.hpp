#ifndef SANAV_GEOMETRY_HPP
#define SANAV_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sanav {

// Base error for every failure the library reports; carries a readable message.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Inputs that admit no (or infinitely many) geometric solutions.
struct DegenerateGeometry : Error {
    using Error::Error;
};

// Numerical tolerances shared by the geometry routines.
struct GeometryTolerances {
    static constexpr double vertical_spread = 1e-9; // x-spread below which a line fit goes vertical
    static constexpr double collinear = 1e-9;       // |cross| below which three points are collinear
    static constexpr double coincident = 1e-9;      // centers/radii closer than this are equal
    static constexpr double tangent = 1e-9;         // |d - (r1 + r2)| below this counts as tangent
};

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Point2 operator+(Point2 o) const { return {x + o.x, y + o.y}; }
    constexpr Point2 operator-(Point2 o) const { return {x - o.x, y - o.y}; }
    constexpr Point2 operator*(double s) const { return {x * s, y * s}; }
    constexpr bool operator==(const Point2&) const = default;

    [[nodiscard]] double norm() const { return std::hypot(x, y); }
    [[nodiscard]] bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline double distance(Point2 a, Point2 b) { return (a - b).norm(); }
inline constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }

// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
    a = std::remainder(a, 2.0 * std::numbers::pi);
    if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
    return a;
}

struct Circle {
    Point2 center;
    double radius = 1.0;

    Circle() = default;
    Circle(Point2 c, double r) : center(c), radius(r) {
        if (!(r > 0.0) || !std::isfinite(r)) throw Error("circle radius must be positive and finite");
    }
};

// Either y = slope * x + intercept, or the vertical line x = vertical_x.
struct Line2 {
    double slope = 0.0;
    double intercept = 0.0;
    std::optional<double> vertical_x;

    static Line2 sloped(double m, double c) { return Line2{m, c, std::nullopt}; }
    static Line2 vertical(double x) { return Line2{0.0, 0.0, x}; }

    [[nodiscard]] bool is_vertical() const { return vertical_x.has_value(); }

    // Unit direction along the line (positive x, or positive y when vertical).
    [[nodiscard]] Point2 direction() const {
        if (is_vertical()) return {0.0, 1.0};
        const double n = std::hypot(1.0, slope);
        return {1.0 / n, slope / n};
    }

    // A point on the line: the y-intercept, or (vertical_x, 0).
    [[nodiscard]] Point2 anchor() const {
        return is_vertical() ? Point2{*vertical_x, 0.0} : Point2{0.0, intercept};
    }

    // Signed distance of p from the line; zero for points on it.
    [[nodiscard]] double residual(Point2 p) const {
        if (is_vertical()) return p.x - *vertical_x;
        return (slope * p.x - p.y + intercept) / std::hypot(slope, 1.0);
    }
};

// Least-squares line through points; vertical form when the x-spread vanishes.
inline Line2 fit_line(std::span<const Point2> points) {
    if (points.size() < 2) throw DegenerateGeometry("fit_line needs at least 2 points");
    const auto n = static_cast<double>(points.size());
    double mx = 0.0, my = 0.0;
    for (auto p : points) {
        mx += p.x;
        my += p.y;
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    double min_x = points[0].x, max_x = points[0].x;
    for (auto p : points) {
        sxx += (p.x - mx) * (p.x - mx);
        sxy += (p.x - mx) * (p.y - my);
        syy += (p.y - my) * (p.y - my);
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
    }
    if (max_x - min_x < GeometryTolerances::vertical_spread) {
        if (syy == 0.0) throw DegenerateGeometry("fit_line: all points identical");
        return Line2::vertical(mx);
    }
    const double m = sxy / sxx;
    return Line2::sloped(m, my - m * mx);
}

inline bool collinear(Point2 a, Point2 b, Point2 c) {
    return std::abs(cross(b - a, c - a)) < GeometryTolerances::collinear;
}

// Exact circumcircle for three points, algebraic (Kasa) least squares for more.
inline Circle fit_circle(std::span<const Point2> points) {
    if (points.size() < 3) throw DegenerateGeometry("fit_circle needs at least 3 points");
    bool any_triangle = false;
    for (std::size_t i = 2; i < points.size() && !any_triangle; ++i) {
        for (std::size_t j = 1; j < i && !any_triangle; ++j) {
            for (std::size_t k = 0; k < j && !any_triangle; ++k) {
                any_triangle = !collinear(points[k], points[j], points[i]);
            }
        }
    }
    if (!any_triangle) throw DegenerateGeometry("fit_circle: points are collinear");

    if (points.size() == 3) {
        const Point2 a = points[0], b = points[1], c = points[2];
        const double d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
        const double a2 = dot(a, a), b2 = dot(b, b), c2 = dot(c, c);
        const Point2 center{(a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
                            (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d};
        return Circle(center, distance(center, a));
    }

    // Kasa: minimize sum (x^2 + y^2 + D x + E y + F)^2, solved on centered data.
    const auto n = static_cast<double>(points.size());
    double mx = 0.0, my = 0.0;
    for (auto p : points) {
        mx += p.x;
        my += p.y;
    }
    mx /= n;
    my /= n;
    double suu = 0, suv = 0, svv = 0, suuu = 0, svvv = 0, suvv = 0, svuu = 0;
    for (auto p : points) {
        const double u = p.x - mx, v = p.y - my;
        suu += u * u;
        suv += u * v;
        svv += v * v;
        suuu += u * u * u;
        svvv += v * v * v;
        suvv += u * v * v;
        svuu += v * u * u;
    }
    const double rhs_u = 0.5 * (suuu + suvv);
    const double rhs_v = 0.5 * (svvv + svuu);
    const double det = suu * svv - suv * suv;
    if (std::abs(det) < 1e-18) throw DegenerateGeometry("fit_circle: singular normal equations");
    const double uc = (rhs_u * svv - rhs_v * suv) / det;
    const double vc = (suu * rhs_v - suv * rhs_u) / det;
    const double r2 = uc * uc + vc * vc + (suu + svv) / n;
    return Circle({uc + mx, vc + my}, std::sqrt(r2));
}

// 0, 1 or 2 intersection points; throws DegenerateGeometry for coincident circles.
inline std::vector<Point2> circle_circle_intersection(const Circle& a, const Circle& b) {
    const Point2 delta = b.center - a.center;
    const double d = delta.norm();
    if (d < GeometryTolerances::coincident) {
        if (std::abs(a.radius - b.radius) < GeometryTolerances::coincident)
            throw DegenerateGeometry("coincident circles have infinitely many intersections");
        return {};
    }
    if (d > a.radius + b.radius + GeometryTolerances::tangent) return {};
    if (d < std::abs(a.radius - b.radius) - GeometryTolerances::tangent) return {};

    // Distance from a.center to the radical line along the center line.
    const double along = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d);
    const double h2 = a.radius * a.radius - along * along;
    const Point2 ex = delta * (1.0 / d);
    const Point2 base = a.center + ex * along;
    if (h2 <= GeometryTolerances::tangent * std::max(1.0, a.radius)) return {base};
    const double h = std::sqrt(h2);
    const Point2 ey{-ex.y, ex.x};
    return {base + ey * h, base - ey * h};
}

// Roots of the line/circle system; an empty result is a valid answer.
inline std::vector<Point2> line_circle_intersection(const Line2& l, const Circle& c) {
    // Parametrize the line as foot + t * dir, with foot the projection of the center.
    const Point2 dir = l.direction();
    const Point2 on_line = l.anchor();
    const double t0 = dot(c.center - on_line, dir);
    const Point2 foot = on_line + dir * t0;
    const double off = distance(foot, c.center);
    const double h2 = c.radius * c.radius - off * off;
    if (h2 < -GeometryTolerances::tangent) return {};
    if (h2 <= GeometryTolerances::tangent) return {foot};
    const double h = std::sqrt(h2);
    return {foot - dir * h, foot + dir * h};
}

// Center angle subtended by a chord of length chord on a circle of radius
// radius (law of cosines with both sides equal to the radius).
inline double pair_angle(double radius, double chord) {
    if (!(radius > 0.0)) throw Error("pair_angle: radius must be positive");
    if (chord < 0.0) throw Error("pair_angle: chord must be non-negative");
    if (chord > 2.0 * radius * (1.0 + 1e-12)) throw DegenerateGeometry("pair_angle: chord longer than diameter");
    const double r2 = radius * radius;
    const double c = std::clamp((2.0 * r2 - chord * chord) / (2.0 * r2), -1.0, 1.0);
    return std::acos(c);
}

// Chord length for a center angle; inverse of pair_angle.
inline double chord_for_angle(double radius, double theta) {
    return radius * std::sqrt(std::max(0.0, 2.0 - 2.0 * std::cos(theta)));
}

// Simple polygon given as an ordered vertex loop.
struct Polygon {
    std::vector<Point2> vertices;

    [[nodiscard]] bool contains(Point2 p) const {
        // Even-odd ray casting; boundary points may land either way.
        bool inside = false;
        const std::size_t n = vertices.size();
        for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
            const Point2 a = vertices[i], b = vertices[j];
            if ((a.y > p.y) != (b.y > p.y)) {
                const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
                if (p.x < x_cross) inside = !inside;
            }
        }
        return inside;
    }
};

// Closest distance from p to the segment [a, b], and the segment parameter.
inline double distance_to_segment(Point2 p, Point2 a, Point2 b, double* t_out = nullptr) {
    const Point2 ab = b - a;
    const double len2 = dot(ab, ab);
    double t = len2 > 0.0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
    if (t_out) *t_out = t;
    return distance(p, a + ab * t);
}

// Distance from p to a polyline; infinity for an empty polyline.
inline double distance_to_polyline(Point2 p, std::span<const Point2> path) {
    if (path.empty()) return std::numeric_limits<double>::infinity();
    if (path.size() == 1) return distance(p, path[0]);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < path.size(); ++i)
        best = std::min(best, distance_to_segment(p, path[i - 1], path[i]));
    return best;
}

} // namespace sanav

#endif
