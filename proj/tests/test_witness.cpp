#include <doctest.h>

#include <cmath>
#include <random>

#include "cbm/json_io.hpp"
#include "cbm/witness.hpp"

using namespace cbm;

namespace {

const double kS3 = std::sqrt(3.0);
constexpr double kBound = 69.0 / 17.0;

// Uniform point of the fundamental triangle T.
Point sample_T(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double s = std::sqrt(u(rng)), v = u(rng);
    const Point t2{4.0 / 21.0, 0.0}, t3{1.0 / 7.0, kS3 / 21.0};
    return (s * (1 - v)) * t2 + (s * v) * t3;
}

} // namespace

TEST_CASE("f_ratio closed-form values") {
    CHECK(f_ratio(0, 0, 0, 0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(f_ratio(0, 0, 2.0 / 7.0, 0) == doctest::Approx(kBound).epsilon(1e-15));
    CHECK(f_ratio(4.0 / 21.0, 0, 0, 0) == doctest::Approx(11.0 / 5.0).epsilon(1e-15));
    CHECK_THROWS_AS(f_ratio(0, 0, 1.49, 100.0), DomainError);
}

TEST_CASE("construction point formulas") {
    // at the origin of both triangles
    CHECK(distance(point_d1(0, 0, 0, 0), {1.5, kS3 / 2.0}) <= 1e-15);
    CHECK(distance(point_d6(0, 0, 0, 0), {1.5, -kS3 / 2.0}) <= 1e-15);
    CHECK(distance(point_dbar4(0, 0, 0, 0), {-3.0, 0.0}) <= 1e-15);
    CHECK(distance(point_e(0, 0, 0, 0), {-1.0, 0.0}) <= 1e-15);
    // at the maximizing corner
    CHECK(distance(point_dbar4(0, 0, 2.0 / 7.0, 0), {-kBound, 0.0}) <= 1e-15);
    CHECK(distance(point_e(0, 0, 2.0 / 7.0, 0), {-1.0, 0.0}) <= 1e-15);
}

TEST_CASE("property: first coordinates of d''_1 and cbar'_1 coincide") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 100000; ++i) {
        const Point pq = sample_T(rng);
        const Point rs = tau(sample_T(rng));
        const Point d1 = point_d1(pq.x, pq.y, rs.x, rs.y);
        CHECK(std::abs(d1.x - (1.5 - pq.x)) <= 1e-12);
    }
}

TEST_CASE("property: top-end segment inclusion under p <= r*") {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 20000; ++i) {
        Point a = sample_T(rng);
        Point b = sample_T(rng);
        if (a.x > b.x) std::swap(a, b); // p <= r*
        const Point rs = tau(b);
        const double rho = (3.0 - 2.0 * a.x) / (3.0 - 2.0 * rs.x);
        CHECK(kS3 / 2.0 - a.y <= rho * (kS3 / 2.0 - rs.y) + 1e-12);
    }
}

TEST_CASE("property: f_ratio equals the coordinate quotient") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 100000; ++i) {
        const Point pq = sample_T(rng);
        const Point rs = tau(sample_T(rng));
        const double f = f_ratio(pq.x, pq.y, rs.x, rs.y);
        const double quotient = point_dbar4(pq.x, pq.y, rs.x, rs.y).x /
                                point_e(pq.x, pq.y, rs.x, rs.y).x;
        CHECK(f == doctest::Approx(quotient).epsilon(1e-12));
    }
}

TEST_CASE("identical triangles give ratio 3") {
    const ConvexPolygon eq({{0, 0}, {1, 0}, {0.5, kS3 / 2.0}});
    const WitnessResult res = construct(eq, eq);
    CHECK(res.witness.lambda == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(norm(res.trace.pq) <= 1e-9);
    CHECK(norm(res.trace.rs_star) <= 1e-9);
    CHECK(res.trace.rho == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(res.trace.warnings.empty());
}

TEST_CASE("identical hexagons give ratio 3") {
    const ConvexPolygon hex = canonical_hexagon().as_polygon();
    const WitnessResult res = construct(hex, hex);
    CHECK(res.witness.lambda == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(res.trace.margin_main_inner <= 1e-9);
    CHECK(res.trace.margin_main_outer <= 1e-9);
}

TEST_CASE("random pairs satisfy the witness invariants") {
    int repaired = 0;
    for (int s = 0; s < 60; ++s) {
        const ConvexPolygon C = random_convex_polygon(3 + (s * 5) % 38, 1000 + s);
        const ConvexPolygon D = random_convex_polygon(3 + (s * 11) % 38, 2000 + s);
        const WitnessResult res = construct(C, D);
        const Witness& w = res.witness;
        CHECK(w.lambda <= kBound + 1e-9);
        CHECK(w.lambda >= 1.0);

        const ConvexPolygon AC = apply(w.alpha, C);
        const ConvexPolygon BD = apply(w.beta, D);
        const double diam = std::max(AC.diameter(), BD.diameter());
        CHECK(norm(centroid(AC)) <= 1e-9 * diam);
        CHECK(norm(centroid(BD)) <= 1e-9 * diam);
        CHECK(contains_polygon(BD, AC, 1e-7 * diam));
        const ConvexPolygon LAC = apply(AffineMap::scale_about({0, 0}, w.lambda), AC);
        CHECK(contains_polygon(LAC, BD, 1e-7 * w.lambda * diam));

        // classical enclosures hold on every pair
        CHECK(res.trace.margin_c_in_star <= 1e-9);
        CHECK(res.trace.margin_d_in_star <= 1e-9);
        for (const std::string& warn : res.trace.warnings)
            if (warn.find("fails at") != std::string::npos) {
                ++repaired;
                break;
            }
    }
    // the repair path exists and fires only occasionally
    CHECK(repaired >= 1);
    CHECK(repaired <= 15);
}

TEST_CASE("lambda regression values stay frozen") {
    // deterministic pipeline: these exact ratios were recorded once and must
    // reproduce on every run
    const double expect[3] = {3.000000000000001, 3.115006276700546, 3.065808807961953};
    const int seeds[3] = {0, 7, 23};
    for (int k = 0; k < 3; ++k) {
        const int s = seeds[k];
        const ConvexPolygon C = random_convex_polygon(3 + (s * 5) % 38, 1000 + s);
        const ConvexPolygon D = random_convex_polygon(3 + (s * 11) % 38, 2000 + s);
        CHECK(construct(C, D).witness.lambda == doctest::Approx(expect[k]).epsilon(1e-9));
    }
}

TEST_CASE("swap keeps alpha attached to the first argument") {
    // centroid of the normalized first body must exceed the second to force a swap;
    // run a batch and require both branches appear
    bool saw_swap = false, saw_noswap = false;
    for (int s = 0; s < 12; ++s) {
        const ConvexPolygon C = random_convex_polygon(5 + s, 5000 + s);
        const ConvexPolygon D = random_convex_polygon(5 + s, 6000 + s);
        const WitnessResult res = construct(C, D);
        (res.witness.swapped ? saw_swap : saw_noswap) = true;
        const ConvexPolygon AC = apply(res.witness.alpha, C);
        const ConvexPolygon BD = apply(res.witness.beta, D);
        CHECK(contains_polygon(BD, AC, 1e-7 * BD.diameter()));
    }
    CHECK(saw_swap);
    CHECK(saw_noswap);
}

TEST_CASE("witness bound is affine-invariant") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int s = 0; s < 10; ++s) {
        const ConvexPolygon C = random_convex_polygon(7, 8000 + s);
        const ConvexPolygon D = random_convex_polygon(9, 9000 + s);
        AffineMap A = AffineMap::from_linear(1 + 0.4 * u(rng), u(rng), u(rng), 1 + 0.4 * u(rng));
        AffineMap B = AffineMap::from_linear(1 + 0.4 * u(rng), u(rng), u(rng), 1 + 0.4 * u(rng));
        if (std::abs(A.det()) < 0.2 || std::abs(B.det()) < 0.2) continue;
        const WitnessResult res = construct(apply(A, C), apply(B, D));
        CHECK(res.witness.lambda <= kBound + 1e-9);
    }
}

TEST_CASE("tighten never exceeds the certificate") {
    for (int s = 0; s < 10; ++s) {
        const ConvexPolygon C = random_convex_polygon(6 + s, 1234 + s);
        const ConvexPolygon D = random_convex_polygon(6 + s, 4321 + s);
        const WitnessResult res = construct(C, D);
        const double tightened = tighten(res.trace);
        CHECK(tightened <= res.witness.lambda + 1e-9);
        CHECK(tightened >= 1.0);
        // tightened ratio still covers
        const ConvexPolygon outer =
            apply(AffineMap::scale_about({0, 0}, tightened * (1 + 1e-9)), res.trace.c_prime);
        CHECK(contains_polygon(outer, res.trace.d_dprime, 1e-9 * outer.diameter()));
    }
}

TEST_CASE("trace artifacts carry the labeled construction") {
    const ConvexPolygon eq({{0, 0}, {1, 0}, {0.5, kS3 / 2.0}});
    const WitnessResult res = construct(eq, eq);
    const TraceArtifacts art = trace_points(res.trace);
    bool saw_dbar = false, saw_e = false, saw_star = false;
    for (const auto& p : art.points) {
        if (p.label == "dbar''_4") {
            saw_dbar = true;
            CHECK(distance(p.p, {-3.0, 0.0}) <= 1e-9);
        }
        if (p.label == "e") {
            saw_e = true;
            CHECK(distance(p.p, {-1.0, 0.0}) <= 1e-9);
        }
    }
    for (const auto& pg : art.polygons)
        if (pg.label == "S(H_D'')") saw_star = true;
    CHECK(saw_dbar);
    CHECK(saw_e);
    CHECK(saw_star);
}

TEST_CASE("witness JSON round-trips") {
    const ConvexPolygon C = random_convex_polygon(8, 555);
    const ConvexPolygon D = random_convex_polygon(11, 777);
    const WitnessResult res = construct(C, D);
    const std::string text = write_witness_json(res.witness);
    const Witness back = read_witness_json(text);
    CHECK(write_witness_json(back) == text);
    const std::string trace_text = write_trace_json(res.trace);
    const ConstructionTrace trace_back = read_trace_json(trace_text);
    CHECK(write_trace_json(trace_back) == trace_text);
}
