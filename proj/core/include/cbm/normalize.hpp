#pragma once

#include <array>

#include "cbm/geometry.hpp"
#include "cbm/hexagon.hpp"

namespace cbm {

// Vertices of the canonical regular hexagon, c_i = (cos 60i deg, sin 60i deg),
// i = 1..6, stored at indices 0..5.
const std::array<Point, 6>& canonical_hexagon_vertices();
AffineRegularHexagon canonical_hexagon();

// Element of the dihedral group D6 of the canonical hexagon:
// index 0..5 rotation by 60k degrees, 6..11 reflection across the axis at
// 30(k-6) degrees. Linear (no translation part).
struct SymmetryElement {
    int index;
    AffineMap map;
};
const std::array<SymmetryElement, 12>& symmetry_elements();

// Fundamental domains of the reduction.
ConvexPolygon triangle_T();      // (0,0), (4/21, 0), (1/7, sqrt(3)/21)
ConvexPolygon triangle_T_plus(); // (0,0), (2/7, -2 sqrt(3)/21), (2/7, 0)
ConvexPolygon rectangle_Q();     // [0, 4/21] x [0, 2/7]

bool in_triangle_T(Point pt);
bool in_triangle_T_plus(Point pt);

// sqrt(3) * rotation(-30 deg); carries T onto T+.
Point tau(Point pt);
AffineMap tau_map();

struct NormalizedBody {
    ConvexPolygon body;     // canonical position
    AffineMap to_canonical; // original -> canonical (symmetry included)
    Point centroid;         // centroid of body, inside T
    AffineRegularHexagon hexagon; // the inscribed hexagon found in the original body
    int symmetry_index;     // D6 element used for the reduction
};

// Canonical position: the inscribed hexagon becomes the canonical regular
// hexagon and the centroid is reduced into T by a D6 element.
NormalizedBody normalize(const ConvexPolygon& poly, double tol = 1e-9);

// The unique affine map sending hex to the canonical hexagon
// (center -> origin, v1 -> c1, v2 -> c2); remaining vertices are verified.
AffineMap hexagon_to_canonical(const AffineRegularHexagon& hex);

} // namespace cbm
