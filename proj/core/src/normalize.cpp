#include "cbm/normalize.hpp"

#include <cmath>

namespace cbm {

namespace {

const double kS3 = std::sqrt(3.0);

// cos/sin of 60k degrees, exact at double precision.
constexpr int kCosNum[6] = {2, 1, -1, -2, -1, 1};
constexpr int kSinSgn[6] = {0, 1, 1, 0, -1, -1};
double cos60(int k) { return kCosNum[((k % 6) + 6) % 6] / 2.0; }
double sin60(int k) { return kSinSgn[((k % 6) + 6) % 6] * kS3 / 2.0; }

} // namespace

const std::array<Point, 6>& canonical_hexagon_vertices() {
    static const std::array<Point, 6> verts = [] {
        std::array<Point, 6> v;
        for (int i = 0; i < 6; ++i) v[i] = {cos60(i + 1), sin60(i + 1)};
        return v;
    }();
    return verts;
}

AffineRegularHexagon canonical_hexagon() {
    AffineRegularHexagon hex;
    hex.center = {0.0, 0.0};
    hex.vertices = canonical_hexagon_vertices();
    return hex;
}

const std::array<SymmetryElement, 12>& symmetry_elements() {
    static const std::array<SymmetryElement, 12> elems = [] {
        std::array<SymmetryElement, 12> e;
        for (int k = 0; k < 6; ++k) {
            const double c = cos60(k), s = sin60(k);
            e[k] = {k, AffineMap::from_linear(c, -s, s, c)};
        }
        for (int k = 0; k < 6; ++k) {
            // reflection across the axis at 30k degrees: [[cos 60k, sin 60k], [sin 60k, -cos 60k]]
            const double c = cos60(k), s = sin60(k);
            e[6 + k] = {6 + k, AffineMap::from_linear(c, s, s, -c)};
        }
        return e;
    }();
    return elems;
}

ConvexPolygon triangle_T() {
    return ConvexPolygon({{0.0, 0.0}, {4.0 / 21.0, 0.0}, {1.0 / 7.0, kS3 / 21.0}});
}

ConvexPolygon triangle_T_plus() {
    return ConvexPolygon({{0.0, 0.0}, {2.0 / 7.0, -2.0 * kS3 / 21.0}, {2.0 / 7.0, 0.0}});
}

ConvexPolygon rectangle_Q() {
    return ConvexPolygon(
        {{0.0, 0.0}, {4.0 / 21.0, 0.0}, {4.0 / 21.0, 2.0 / 7.0}, {0.0, 2.0 / 7.0}});
}

namespace {

bool in_triangle(const ConvexPolygon& tri, Point pt) {
    return contains_point(tri, pt, 1e-12);
}

} // namespace

bool in_triangle_T(Point pt) {
    static const ConvexPolygon tri = triangle_T();
    return in_triangle(tri, pt);
}

bool in_triangle_T_plus(Point pt) {
    static const ConvexPolygon tri = triangle_T_plus();
    return in_triangle(tri, pt);
}

Point tau(Point pt) {
    return {1.5 * pt.x + kS3 / 2.0 * pt.y, -kS3 / 2.0 * pt.x + 1.5 * pt.y};
}

AffineMap tau_map() { return AffineMap::from_linear(1.5, kS3 / 2.0, -kS3 / 2.0, 1.5); }

AffineMap hexagon_to_canonical(const AffineRegularHexagon& hex) {
    const auto& c = canonical_hexagon_vertices();
    const Point e1 = hex.vertices[0] - hex.center;
    const Point e2 = hex.vertices[1] - hex.center;
    const double det = cross(e1, e2);
    if (std::abs(det) <= 1e-12 * hex.diameter() * hex.diameter())
        throw DegenerateInputError("hexagon_to_canonical: degenerate hexagon");
    // L * e1 = c1, L * e2 = c2  =>  L = [c1 c2] * [e1 e2]^{-1}
    AffineMap m;
    m.m11 = (c[0].x * e2.y - c[1].x * e1.y) / det;
    m.m12 = (c[1].x * e1.x - c[0].x * e2.x) / det;
    m.m21 = (c[0].y * e2.y - c[1].y * e1.y) / det;
    m.m22 = (c[1].y * e1.x - c[0].y * e2.x) / det;
    m.tx = -(m.m11 * hex.center.x + m.m12 * hex.center.y);
    m.ty = -(m.m21 * hex.center.x + m.m22 * hex.center.y);

    const double scale = 1.0; // canonical hexagon has unit circumradius
    for (int i = 2; i < 6; ++i)
        if (distance(m(hex.vertices[i]), c[i]) > 1e-7 * scale)
            throw VerificationError("hexagon_to_canonical: input violates affine-regularity");
    return m;
}

NormalizedBody normalize(const ConvexPolygon& poly, double tol) {
    const AffineRegularHexagon hex = inscribe_hexagon(poly, tol);
    const AffineMap to_hex = hexagon_to_canonical(hex);
    const Point z = to_hex(centroid(poly));

    for (const SymmetryElement& g : symmetry_elements()) {
        if (!in_triangle_T(g.map(z))) continue;
        const AffineMap full = compose(g.map, to_hex);
        ConvexPolygon body = apply(full, poly);

        // The canonical hexagon must be inscribed in the normalized body.
        const double bound = 1e-8 * std::max(1.0, body.diameter());
        for (const Point& c : canonical_hexagon_vertices())
            if (distance_to_boundary(body, c) > bound)
                throw VerificationError(
                    "normalize: canonical hexagon drifted off the boundary");
        const Point cen = centroid(body);
        if (!in_triangle_T(cen))
            throw VerificationError("normalize: centroid left the fundamental triangle");
        return NormalizedBody{std::move(body), full, cen, hex, g.index};
    }
    throw VerificationError(
        "normalize: no symmetry element brings the centroid into T "
        "(centroid lemma violated)");
}

} // namespace cbm
