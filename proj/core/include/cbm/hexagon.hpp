#pragma once

#include <array>

#include "cbm/geometry.hpp"

namespace cbm {

// Affine image of the regular hexagon: center o, vertices v1..v6 (CCW),
// satisfying v_i + v_{i+3} = 2o and v_{i+1} - v_i = v_{i+2} - o (mod 6).
struct AffineRegularHexagon {
    Point center;
    std::array<Point, 6> vertices;

    // Max violation of the two defining identities plus degeneracy guard,
    // relative to the vertex diameter.
    double identity_residual() const;
    ConvexPolygon as_polygon() const;
    double diameter() const;
};

// Hexagram over a hexagon: outer vertices w_i = v_{i-1} + v_i - o (v0 = v6).
struct Star {
    AffineRegularHexagon hexagon;
    std::array<Point, 6> outer;
};

// The star boundary as a 12-vertex loop v1 w2 v2 w3 ... v6 w1 plus the two
// constituent triangles (odd outer vertices w1w3w5 and even w2w4w6).
struct StarPolygon {
    std::array<Point, 12> loop;
    ConvexPolygon triangle_odd;
    ConvexPolygon triangle_even;
};

Star star_over(const AffineRegularHexagon& hex);
StarPolygon star_polygon(const Star& star);

// Point-in-star: inside triangle_odd or triangle_even.
bool star_contains(const StarPolygon& star, Point p, double tol);

// Besicovitch inscription: an affine-regular hexagon with all vertices on
// the boundary of poly, hexagon contained in poly. Throws ConvergenceError
// with the best residual if no candidate reaches tol (relative).
AffineRegularHexagon inscribe_hexagon(const ConvexPolygon& poly, double tol = 1e-9);

struct CentroidLemmaResult {
    bool holds;
    double margin; // signed distance of the centroid to the (4/21)-hexagon boundary; negative inside
};

// Checks that centroid(poly) lies in the 4/21-homothet of hex about its center.
CentroidLemmaResult check_centroid_lemma(const ConvexPolygon& poly,
                                         const AffineRegularHexagon& hex);

} // namespace cbm
