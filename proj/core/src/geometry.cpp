#include "cbm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace cbm {

double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
double norm(Point p) { return std::hypot(p.x, p.y); }
double distance(Point a, Point b) { return norm(a - b); }
bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

AffineMap AffineMap::rotation(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c, -s, s, c, 0, 0};
}

AffineMap AffineMap::scale_about(Point center, double lambda) {
    if (!(lambda > 0.0)) throw DomainError("scale_about: ratio must be positive");
    return {lambda, 0, 0, lambda, (1.0 - lambda) * center.x, (1.0 - lambda) * center.y};
}

AffineMap compose(const AffineMap& a, const AffineMap& b) {
    AffineMap r;
    r.m11 = a.m11 * b.m11 + a.m12 * b.m21;
    r.m12 = a.m11 * b.m12 + a.m12 * b.m22;
    r.m21 = a.m21 * b.m11 + a.m22 * b.m21;
    r.m22 = a.m21 * b.m12 + a.m22 * b.m22;
    r.tx = a.m11 * b.tx + a.m12 * b.ty + a.tx;
    r.ty = a.m21 * b.tx + a.m22 * b.ty + a.ty;
    return r;
}

AffineMap invert(const AffineMap& a) {
    const double d = a.det();
    if (std::abs(d) <= 1e-12) throw DomainError("invert: singular affine map");
    AffineMap r;
    r.m11 = a.m22 / d;
    r.m12 = -a.m12 / d;
    r.m21 = -a.m21 / d;
    r.m22 = a.m11 / d;
    r.tx = -(r.m11 * a.tx + r.m12 * a.ty);
    r.ty = -(r.m21 * a.tx + r.m22 * a.ty);
    return r;
}

namespace {

double max_pairwise_distance(const std::vector<Point>& pts) {
    double best = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            best = std::max(best, distance(pts[i], pts[j]));
    return best;
}

} // namespace

ConvexPolygon::ConvexPolygon(std::vector<Point> vertices) {
    if (vertices.size() < 3)
        throw DegenerateInputError("polygon needs at least 3 vertices");
    for (const Point& p : vertices)
        if (!is_finite(p)) throw DegenerateInputError("polygon vertex not finite");

    const double diam = max_pairwise_distance(vertices);
    if (!(diam > 0.0)) throw DegenerateInputError("polygon has zero diameter");

    double twice_area = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        twice_area += cross(vertices[i], vertices[(i + 1) % vertices.size()]);
    if (std::abs(twice_area) / 2.0 < 1e-18 * diam * diam)
        throw DegenerateInputError("polygon area is degenerate");
    if (twice_area < 0.0) std::reverse(vertices.begin(), vertices.end());

    // Drop duplicate and collinear vertices until stable.
    const double dup_tol = 1e-12 * diam;
    const double col_tol = 1e-12 * diam * diam;
    std::vector<Point> vs = std::move(vertices);
    bool changed = true;
    while (changed && vs.size() >= 3) {
        changed = false;
        std::vector<Point> next;
        next.reserve(vs.size());
        const std::size_t n = vs.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point& prev = vs[(i + n - 1) % n];
            const Point& cur = vs[i];
            const Point& nxt = vs[(i + 1) % n];
            if (distance(cur, nxt) <= dup_tol) { changed = true; continue; }
            if (std::abs(cross(cur - prev, nxt - cur)) <= col_tol) { changed = true; continue; }
            next.push_back(cur);
        }
        vs = std::move(next);
    }
    if (vs.size() < 3)
        throw DegenerateInputError("polygon degenerates after cleanup");

    // Strict convexity and a single winding.
    double turn_sum = 0.0;
    const std::size_t n = vs.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point e0 = vs[i] - vs[(i + n - 1) % n];
        const Point e1 = vs[(i + 1) % n] - vs[i];
        if (cross(e0, e1) <= 0.0)
            throw DegenerateInputError("polygon is not convex");
        turn_sum += std::atan2(cross(e0, e1), dot(e0, e1));
    }
    if (std::abs(turn_sum - 2.0 * std::acos(-1.0)) > 1e-6)
        throw DegenerateInputError("polygon boundary is not a simple convex loop");

    verts_ = std::move(vs);
    diameter_ = max_pairwise_distance(verts_);
}

double area(const ConvexPolygon& poly) {
    const auto& v = poly.vertices();
    double twice = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        twice += cross(v[i], v[(i + 1) % v.size()]);
    return twice / 2.0;
}

Point centroid(const ConvexPolygon& poly) {
    const auto& v = poly.vertices();
    const double a = area(poly);
    if (a < 1e-18 * poly.diameter() * poly.diameter())
        throw DegenerateInputError("centroid: degenerate polygon");
    double cx = 0.0, cy = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point& p = v[i];
        const Point& q = v[(i + 1) % v.size()];
        const double w = cross(p, q);
        cx += (p.x + q.x) * w;
        cy += (p.y + q.y) * w;
    }
    return {cx / (6.0 * a), cy / (6.0 * a)};
}

bool contains_point(const ConvexPolygon& poly, Point pt, double tol) {
    const auto& v = poly.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point& a = v[i];
        const Point& b = v[(i + 1) % v.size()];
        const double len = distance(a, b);
        if (cross(b - a, pt - a) / len < -tol) return false;
    }
    return true;
}

bool contains_polygon(const ConvexPolygon& outer, const ConvexPolygon& inner, double tol) {
    for (const Point& p : inner.vertices())
        if (!contains_point(outer, p, tol)) return false;
    return true;
}

double signed_edge_distance(const ConvexPolygon& poly, Point pt) {
    const auto& v = poly.vertices();
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point& a = v[i];
        const Point& b = v[(i + 1) % v.size()];
        worst = std::max(worst, -cross(b - a, pt - a) / distance(a, b));
    }
    return worst;
}

namespace {

double point_segment_distance(Point p, Point a, Point b) {
    const Point ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 <= 0.0) return distance(p, a);
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return distance(p, a + t * ab);
}

} // namespace

double distance_to_boundary(const ConvexPolygon& poly, Point pt) {
    const auto& v = poly.vertices();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i)
        best = std::min(best, point_segment_distance(pt, v[i], v[(i + 1) % v.size()]));
    return best;
}

double minkowski_gauge(const ConvexPolygon& poly, Point pt) {
    const auto& v = poly.vertices();
    double worst = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point& a = v[i];
        const Point& b = v[(i + 1) % v.size()];
        const Point n{(b - a).y, -(b - a).x};
        const double h = dot(a, n);
        if (!(h > 0.0))
            throw DomainError("minkowski_gauge: origin is not strictly interior");
        worst = std::max(worst, dot(pt, n) / h);
    }
    return std::max(worst, 0.0);
}

std::optional<Segment> chord_at(const ConvexPolygon& poly, double theta, double offset) {
    const Point u{std::cos(theta), std::sin(theta)};
    const Point n{-u.y, u.x};
    const auto& v = poly.vertices();
    const std::size_t cnt = v.size();

    std::vector<Point> hits;
    for (std::size_t i = 0; i < cnt; ++i) {
        const Point& a = v[i];
        const Point& b = v[(i + 1) % cnt];
        const double da = dot(a, n) - offset;
        const double db = dot(b, n) - offset;
        if (da == 0.0) hits.push_back(a);
        if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0))
            hits.push_back(a + (da / (da - db)) * (b - a));
    }
    if (hits.empty()) return std::nullopt;

    auto ucoord = [&](const Point& p) { return dot(p, u); };
    Point lo = hits[0], hi = hits[0];
    for (const Point& p : hits) {
        if (ucoord(p) < ucoord(lo)) lo = p;
        if (ucoord(p) > ucoord(hi)) hi = p;
    }
    return Segment{lo, hi};
}

double radial_distance(const ConvexPolygon& poly, Point origin, double angle) {
    if (!contains_point(poly, origin, -1e-12 * poly.diameter()))
        throw DomainError("radial_distance: origin is not strictly interior");
    const Point u{std::cos(angle), std::sin(angle)};
    const auto& v = poly.vertices();
    const std::size_t n = v.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = v[i];
        const Point& b = v[(i + 1) % n];
        const Point ab = b - a;
        const double denom = cross(ab, u);
        if (denom == 0.0) continue; // ray parallel to edge
        const double s = cross(ab, a - origin) / denom;
        if (s <= 0.0) continue;
        const Point hit = origin + s * u;
        const double w = std::abs(ab.x) > std::abs(ab.y) ? (hit.x - a.x) / ab.x
                                                         : (hit.y - a.y) / ab.y;
        if (w < -1e-9 || w > 1.0 + 1e-9) continue;
        best = std::min(best, s);
    }
    if (!std::isfinite(best))
        throw DomainError("radial_distance: ray does not hit the boundary");
    return best;
}

ConvexPolygon apply(const AffineMap& map, const ConvexPolygon& poly) {
    std::vector<Point> out;
    out.reserve(poly.size());
    for (const Point& p : poly.vertices()) out.push_back(map(p));
    if (map.det() < 0.0) std::reverse(out.begin(), out.end());
    return ConvexPolygon(std::move(out));
}

namespace {

std::vector<Point> convex_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](Point a, Point b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    const std::size_t n = pts.size();
    if (n < 3) return {};
    std::vector<Point> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

} // namespace

ConvexPolygon random_convex_polygon(int n, std::uint64_t seed) {
    if (n < 3) throw DomainError("random_convex_polygon: n must be at least 3");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<Point> pts;
        pts.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const double r = std::sqrt(unit(rng));
            const double phi = 2.0 * std::acos(-1.0) * unit(rng);
            pts.push_back({r * std::cos(phi), r * std::sin(phi)});
        }
        std::vector<Point> hull = convex_hull(std::move(pts));
        if (hull.size() < 3) continue;
        try {
            return ConvexPolygon(std::move(hull));
        } catch (const DegenerateInputError&) {
            continue;
        }
    }
    throw ConvergenceError("random_convex_polygon: could not draw a valid polygon", 0.0);
}

} // namespace cbm
