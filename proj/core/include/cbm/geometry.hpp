#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cbm/errors.hpp"

namespace cbm {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

using Vec = Point;

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
inline Point operator*(Point p, double s) { return {s * p.x, s * p.y}; }
inline Point operator-(Point p) { return {-p.x, -p.y}; }

double dot(Point a, Point b);
double cross(Point a, Point b);
double norm(Point p);
double distance(Point a, Point b);
bool is_finite(Point p);

struct Segment {
    Point a;
    Point b;
    double length() const { return distance(a, b); }
};

// Invertible affine map x |-> L x + t with L = [[m11 m12],[m21 m22]].
struct AffineMap {
    double m11 = 1.0, m12 = 0.0;
    double m21 = 0.0, m22 = 1.0;
    double tx = 0.0, ty = 0.0;

    Point operator()(Point p) const {
        return {m11 * p.x + m12 * p.y + tx, m21 * p.x + m22 * p.y + ty};
    }
    Point linear(Point p) const { return {m11 * p.x + m12 * p.y, m21 * p.x + m22 * p.y}; }
    double det() const { return m11 * m22 - m12 * m21; }

    static AffineMap identity() { return {}; }
    static AffineMap translation(Vec t) { return {1, 0, 0, 1, t.x, t.y}; }
    static AffineMap rotation(double angle);
    // Homothety h_lambda about `center` (lambda > 0).
    static AffineMap scale_about(Point center, double lambda);
    static AffineMap from_linear(double a, double b, double c, double d) {
        return {a, b, c, d, 0, 0};
    }
};

// compose(a, b) applied to x equals a(b(x)).
AffineMap compose(const AffineMap& a, const AffineMap& b);
AffineMap invert(const AffineMap& a);

// Convex polygon stored counterclockwise with duplicate and collinear
// vertices removed at construction. Immutable after construction.
class ConvexPolygon {
public:
    explicit ConvexPolygon(std::vector<Point> vertices);

    const std::vector<Point>& vertices() const { return verts_; }
    std::size_t size() const { return verts_.size(); }
    const Point& operator[](std::size_t i) const { return verts_[i]; }

    // Max pairwise vertex distance, cached at construction.
    double diameter() const { return diameter_; }

private:
    std::vector<Point> verts_;
    double diameter_ = 0.0;
};

double area(const ConvexPolygon& poly);
Point centroid(const ConvexPolygon& poly);

// True iff pt is within signed distance -tol of every edge half-plane
// (tol > 0 admits points slightly outside; tol < 0 demands strict interior).
bool contains_point(const ConvexPolygon& poly, Point pt, double tol);

// Vertex check; sufficient because both operands are convex.
bool contains_polygon(const ConvexPolygon& outer, const ConvexPolygon& inner, double tol);

// Signed distance of pt to the polygon's edge half-planes (max over edges;
// negative inside, equals -distance(boundary) there).
double signed_edge_distance(const ConvexPolygon& poly, Point pt);

// Distance from pt to the polygon boundary (zero only on the boundary).
double distance_to_boundary(const ConvexPolygon& poly, Point pt);

// Minkowski gauge about the origin: smallest t >= 0 with pt in t * poly.
// Requires the origin strictly interior to poly.
double minkowski_gauge(const ConvexPolygon& poly, Point pt);

// Intersection of poly with the line { x : <x, n(theta)> = offset },
// n(theta) = (-sin theta, cos theta), oriented along u(theta) = (cos, sin).
// Empty when the line misses the polygon.
std::optional<Segment> chord_at(const ConvexPolygon& poly, double theta, double offset);

// Distance from a strictly interior origin to the boundary along the ray
// with direction (cos angle, sin angle).
double radial_distance(const ConvexPolygon& poly, Point origin, double angle);

// Applies the map and restores counterclockwise orientation if det < 0.
ConvexPolygon apply(const AffineMap& map, const ConvexPolygon& poly);

// Convex hull of n points drawn uniformly from the unit disk; deterministic
// per seed; at most n vertices.
ConvexPolygon random_convex_polygon(int n, std::uint64_t seed);

} // namespace cbm
