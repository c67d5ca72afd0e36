#include <doctest.h>

#include <cmath>
#include <random>

#include "cbm/normalize.hpp"

using namespace cbm;

namespace {
const double kS3 = std::sqrt(3.0);
}

TEST_CASE("tau maps T vertices onto T+ vertices") {
    const Point a = tau({4.0 / 21.0, 0.0});
    CHECK(std::abs(a.x - 2.0 / 7.0) <= 1e-15);
    CHECK(std::abs(a.y + 2.0 * kS3 / 21.0) <= 1e-15);

    const Point b = tau({1.0 / 7.0, kS3 / 21.0});
    CHECK(std::abs(b.x - 2.0 / 7.0) <= 1e-15);
    CHECK(std::abs(b.y) <= 1e-15);

    const Point c = tau({0.0, 0.0});
    CHECK(c.x == 0.0);
    CHECK(c.y == 0.0);
}

TEST_CASE("tau is sqrt(3) times a -30 degree rotation") {
    const AffineMap m = tau_map();
    CHECK(m.det() == doctest::Approx(3.0).epsilon(1e-15));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 1000; ++i) {
        const Point p{u(rng), u(rng)};
        CHECK(norm(tau(p)) == doctest::Approx(kS3 * norm(p)).epsilon(1e-12));
    }
}

TEST_CASE("tau carries T into T+") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Point t2{4.0 / 21.0, 0.0}, t3{1.0 / 7.0, kS3 / 21.0};
    for (int i = 0; i < 1000; ++i) {
        double u1 = u(rng), u2 = u(rng);
        const double s = std::sqrt(u1);
        const Point p = (s * (1 - u2)) * t2 + (s * u2) * t3;
        REQUIRE(in_triangle_T(p));
        CHECK(in_triangle_T_plus(tau(p)));
    }
}

TEST_CASE("membership of the fundamental domains") {
    CHECK(in_triangle_T({0, 0}));
    CHECK(in_triangle_T_plus({0, 0}));
    CHECK(in_triangle_T({4.0 / 21.0, 0.0}));
    CHECK(in_triangle_T_plus({2.0 / 7.0, -2.0 * kS3 / 21.0}));
    CHECK_FALSE(in_triangle_T({0.2, 0.05}));
    CHECK_FALSE(in_triangle_T_plus({0.1, 0.05}));
}

TEST_CASE("rectangle Q spans the (p, r) domain") {
    const ConvexPolygon q = rectangle_Q();
    CHECK(area(q) == doctest::Approx((4.0 / 21.0) * (2.0 / 7.0)).epsilon(1e-15));
    CHECK(contains_point(q, {0.0, 2.0 / 7.0}, 1e-15));
}

TEST_CASE("symmetry elements fix the canonical hexagon") {
    const auto& canon = canonical_hexagon_vertices();
    for (const SymmetryElement& g : symmetry_elements()) {
        for (const Point& v : canon) {
            const Point image = g.map(v);
            double best = 1e300;
            for (const Point& w : canon) best = std::min(best, distance(image, w));
            CHECK(best <= 1e-12);
        }
        CHECK(std::abs(std::abs(g.map.det()) - 1.0) <= 1e-15);
    }
}

TEST_CASE("normalize the canonical hexagon body") {
    const NormalizedBody nb = normalize(canonical_hexagon().as_polygon());
    CHECK(norm(nb.centroid) <= 1e-12);
    // the map is a symmetry element of the hexagon
    double best = 1e300;
    for (const SymmetryElement& g : symmetry_elements()) {
        const double d = std::abs(nb.to_canonical.m11 - g.map.m11) +
                         std::abs(nb.to_canonical.m12 - g.map.m12) +
                         std::abs(nb.to_canonical.m21 - g.map.m21) +
                         std::abs(nb.to_canonical.m22 - g.map.m22);
        best = std::min(best, d);
    }
    CHECK(best <= 1e-9);
}

TEST_CASE("normalize an equilateral triangle") {
    const ConvexPolygon eq({{0, 0}, {1, 0}, {0.5, kS3 / 2.0}});
    const NormalizedBody nb = normalize(eq);
    CHECK(norm(nb.centroid) <= 1e-9);
    CHECK(in_triangle_T(nb.centroid));
}

TEST_CASE("normalize puts random bodies in canonical position") {
    for (int s = 0; s < 80; ++s) {
        const ConvexPolygon poly = random_convex_polygon(3 + (s * 13) % 38, 31000 + s);
        const NormalizedBody nb = normalize(poly);
        CHECK(in_triangle_T(nb.centroid));
        // canonical hexagon vertices on the body boundary
        for (const Point& c : canonical_hexagon_vertices())
            CHECK(distance_to_boundary(nb.body, c) <= 1e-8 * nb.body.diameter());
        // the returned map really sends the original body there
        const ConvexPolygon again = apply(nb.to_canonical, poly);
        CHECK(distance(centroid(again), nb.centroid) <= 1e-12 * again.diameter());
    }
}

TEST_CASE("normalize is idempotent up to a symmetry element") {
    for (int s = 0; s < 20; ++s) {
        const ConvexPolygon poly = random_convex_polygon(6 + s, 77000 + s);
        const NormalizedBody once = normalize(poly);
        const NormalizedBody twice = normalize(once.body);
        double best = 1e300;
        for (const SymmetryElement& g : symmetry_elements()) {
            const double d = std::abs(twice.to_canonical.m11 - g.map.m11) +
                             std::abs(twice.to_canonical.m12 - g.map.m12) +
                             std::abs(twice.to_canonical.m21 - g.map.m21) +
                             std::abs(twice.to_canonical.m22 - g.map.m22);
            best = std::min(best, d);
        }
        CHECK(best <= 1e-9);
    }
}

TEST_CASE("hexagon_to_canonical rejects non-regular input") {
    AffineRegularHexagon hex = canonical_hexagon();
    hex.vertices[3] = hex.vertices[3] + Point{0.3, 0.1};
    CHECK_THROWS_AS(hexagon_to_canonical(hex), VerificationError);
}
