#pragma once

#include <string>
#include <vector>

#include "cbm/geometry.hpp"
#include "cbm/hexagon.hpp"
#include "cbm/normalize.hpp"

namespace cbm {

// Certificate alpha(C) in beta(D) in lambda * alpha(C), all centroids at the
// origin, homothety centered there.
struct Witness {
    AffineMap alpha; // applied to C
    AffineMap beta;  // applied to D
    double lambda;
    bool swapped; // roles of C and D were exchanged during construction
};

// Every intermediate object of the construction, in pipeline order. "Inner"
// refers to the body whose centroid coordinate p satisfied p <= r*.
struct ConstructionTrace {
    bool swapped;
    Point pq;      // (p, q): centroid of the normalized inner body
    Point rs_star; // (r*, s*): centroid of the normalized outer body
    Point rs;      // tau(r*, s*)
    double rho;    // (3 - 2p) / (3 - 2r)
    double f;      // f(p, q, r, s)
    ConvexPolygon c_prime;
    ConvexPolygon d_prime;
    ConvexPolygon d_dprime;
    ConvexPolygon f_c_prime; // the verified outer body lambda * C'
    AffineRegularHexagon hex_c_prime;
    AffineRegularHexagon hex_d_prime;
    AffineRegularHexagon hex_d_dprime;
    AffineRegularHexagon hex_c_dprime; // f * H_C'
    Star star_c_prime;
    Star star_d_dprime;
    Point e;
    // Signed containment margins, relative to the outer object's diameter;
    // <= 0 means the containment holds.
    double margin_main_inner;    // C' in D''
    double margin_main_outer;    // D'' in f*C'
    double margin_c_in_star;     // C' in S(H_C')
    double margin_star_c_in_hexd; // S(H_C') in H_D''
    double margin_d_in_star;     // D'' in S(H_D'')
    double margin_star_d_in_fc;  // S(H_D'') in f*C'
    std::vector<std::string> warnings;
};

// f(p,q,r,s) = sqrt(3)(3-2p)(3+r) / ((3-2r)(sqrt(3)+sqrt(3)p+q) - (3-2p)s).
double f_ratio(double p, double q, double r, double s);

// Coordinates used by the construction; f_ratio equals
// point_dbar4(...).x / point_e(...).x.
Point point_d1(double p, double q, double r, double s);
Point point_d6(double p, double q, double r, double s);
Point point_dbar4(double p, double q, double r, double s);
Point point_e(double p, double q, double r, double s);

struct WitnessResult {
    Witness witness;
    ConstructionTrace trace;
};

// Runs the construction on (C, D) and verifies the containments at tol
// (relative). Throws VerificationError on a containment failure beyond tol.
WitnessResult construct(const ConvexPolygon& C, const ConvexPolygon& D, double tol = 1e-7);

// Smallest verified outer ratio <= f, found by bisection on the containment
// D'' in lambda * C'. Reported separately from the certificate value.
double tighten(const ConstructionTrace& trace);

struct LabeledPoint {
    std::string label;
    Point p;
};
struct LabeledPolygon {
    std::string label;
    std::vector<Point> pts;
    bool closed;
};
struct TraceArtifacts {
    std::vector<LabeledPoint> points;
    std::vector<LabeledPolygon> polygons;
};

// Labeled geometry of the construction for rendering and cross-checks.
TraceArtifacts trace_points(const ConstructionTrace& trace);

} // namespace cbm
