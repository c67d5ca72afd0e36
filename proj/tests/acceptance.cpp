// Acceptance suite: runs every gate criterion at its pinned tolerance and
// prints one PASS/FAIL line per criterion. Exit code 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "cbm/certify.hpp"
#include "cbm/estimate.hpp"
#include "cbm/hexagon.hpp"
#include "cbm/normalize.hpp"
#include "cbm/witness.hpp"

using namespace cbm;

namespace {

const double kS3 = std::sqrt(3.0);
constexpr double kBound = 69.0 / 17.0;
int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

void report(int id, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%d] %-28s %s  (%s)\n", id, name.c_str(), ok ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

void criterion_1() {
    Timer t;
    bool ok = true;
    std::string why;
    try {
        const BoundReport rep = certify_g_max_on_Q(512);
        ok = rep.certified;
        ok = ok && std::abs(rep.max_value - kBound) <= 1e-12;
        ok = ok && rep.argmax[0] == 0.0 &&
             std::abs(rep.argmax[1] - 2.0 / 7.0) <= 1e-15;
        const double corners[4] = {3.0, 11.0 / 5.0, kBound, 253.0 / 85.0};
        for (int i = 0; i < 4; ++i)
            ok = ok && std::abs(rep.corner_table[static_cast<std::size_t>(i)].value -
                                corners[i]) <= 1e-12;
        ok = ok && rep.interior_critical_points.empty() && rep.edge_extrema.empty();
        ok = ok && rep.grid_residual <= 1e-12;
        const double secs = t.seconds();
        ok = ok && secs < 5.0;
        why = fmt("max %.12f, residual %.1e, %.2f s", rep.max_value, rep.grid_residual,
                  secs);
    } catch (const std::exception& e) {
        ok = false;
        why = e.what();
    }
    report(1, "bound certification on Q", ok, why);
}

void criterion_2() {
    Timer t;
    bool ok = true;
    std::string why;
    try {
        const BoundReport rep = maximize_f_on_domain(1000000, 200);
        ok = rep.certified;
        ok = ok && rep.max_value <= kBound + 1e-9;
        const double dist =
            std::sqrt(rep.argmax[0] * rep.argmax[0] + rep.argmax[1] * rep.argmax[1] +
                      (rep.argmax[2] - 2.0 / 7.0) * (rep.argmax[2] - 2.0 / 7.0) +
                      rep.argmax[3] * rep.argmax[3]);
        ok = ok && dist <= 1e-3;
        for (const EdgeCheck& e : rep.monotonicity_checks) ok = ok && e.monotone;
        const double secs = t.seconds();
        ok = ok && secs < 30.0;
        why = fmt("max %.12f, argmax dist %.1e, %.2f s", rep.max_value, dist, secs);
    } catch (const std::exception& e) {
        ok = false;
        why = e.what();
    }
    report(2, "4D maximization on T x T+", ok, why);
}

void criteria_3_4_5() {
    // shared 500-pair / 500-polygon sweep
    Timer t4;
    bool ok4 = true;
    double worst_res = 0.0;
    std::string why4;
    std::vector<ConvexPolygon> bodies;
    std::vector<AffineRegularHexagon> hexes;
    bodies.reserve(1000);
    hexes.reserve(1000);
    try {
        for (int s = 0; s < 1000; ++s) {
            const int n = 3 + (s * 17) % 38;
            bodies.push_back(random_convex_polygon(n, 123400 + s));
            hexes.push_back(inscribe_hexagon(bodies.back()));
            const AffineRegularHexagon& hex = hexes.back();
            double res = hex.identity_residual();
            for (const Point& v : hex.vertices)
                res = std::max(res,
                               distance_to_boundary(bodies.back(), v) /
                                   bodies.back().diameter());
            worst_res = std::max(worst_res, res);
        }
        ok4 = worst_res <= 1e-7;
        // triangle recovers the third-point hexagon
        const ConvexPolygon tri({{0, 0}, {1, 0}, {0, 1}});
        const AffineRegularHexagon th = inscribe_hexagon(tri);
        const double third = 1.0 / 3.0;
        const Point want[6] = {{third, 0},         {2 * third, 0}, {2 * third, third},
                               {third, 2 * third}, {0, 2 * third}, {0, third}};
        double best = 1e300;
        for (int shift = 0; shift < 6; ++shift) {
            double worst = 0.0;
            for (int i = 0; i < 6; ++i)
                worst = std::max(worst, distance(th.vertices[static_cast<std::size_t>(
                                                     (shift + i) % 6)],
                                                 want[i]));
            best = std::min(best, worst);
        }
        ok4 = ok4 && best <= 1e-9;
        const double secs = t4.seconds();
        ok4 = ok4 && secs < 30.0;
        why4 = fmt("worst residual %.2e, triangle dev %.1e, %.2f s", worst_res, best,
                   secs);
    } catch (const std::exception& e) {
        ok4 = false;
        why4 = e.what();
    }
    report(4, "hexagon inscription (500+)", ok4, why4);

    // criterion 5: centroid lemma over the same polygons
    bool ok5 = true;
    std::string why5;
    double worst_margin = -1e300;
    try {
        for (std::size_t i = 0; i < bodies.size(); ++i) {
            const CentroidLemmaResult lem = check_centroid_lemma(bodies[i], hexes[i]);
            worst_margin = std::max(worst_margin, lem.margin / bodies[i].diameter());
            ok5 = ok5 && lem.holds;
        }
        ok5 = ok5 && worst_margin <= 1e-9;
        why5 = fmt("worst relative margin %.2e over %.0f bodies", worst_margin,
                   static_cast<double>(bodies.size()));
    } catch (const std::exception& e) {
        ok5 = false;
        why5 = e.what();
    }
    report(5, "centroid lemma (4/21)", ok5, why5);

    // criterion 3: witness pipeline on 500 pairs built from the same stock
    Timer t3;
    bool ok3 = true;
    std::string why3;
    double worst_lambda = 0.0, worst_margin3 = -1e300, worst_cen = 0.0;
    try {
        for (int k = 0; k < 500; ++k) {
            const ConvexPolygon& C = bodies[static_cast<std::size_t>(2 * k)];
            const ConvexPolygon& D = bodies[static_cast<std::size_t>(2 * k + 1)];
            const WitnessResult res = construct(C, D, 1e-7);
            worst_lambda = std::max(worst_lambda, res.witness.lambda);
            worst_margin3 = std::max({worst_margin3, res.trace.margin_main_inner,
                                      res.trace.margin_main_outer});
            const ConvexPolygon AC = apply(res.witness.alpha, C);
            const ConvexPolygon BD = apply(res.witness.beta, D);
            const double diam = std::max(AC.diameter(), BD.diameter());
            worst_cen = std::max(
                worst_cen, std::max(norm(centroid(AC)), norm(centroid(BD))) / diam);
            ok3 = ok3 && contains_polygon(BD, AC, 1e-7 * diam) &&
                  contains_polygon(
                      apply(AffineMap::scale_about({0, 0}, res.witness.lambda), AC), BD,
                      1e-7 * res.witness.lambda * diam);
        }
        ok3 = ok3 && worst_lambda <= kBound + 1e-9 && worst_cen <= 1e-9;
        const double secs = t3.seconds();
        ok3 = ok3 && secs < 60.0;
        why3 = fmt("max lambda %.6f, worst margin %.1e, %.2f s", worst_lambda,
                   worst_margin3, secs);
    } catch (const std::exception& e) {
        ok3 = false;
        why3 = e.what();
    }
    report(3, "witness pipeline (500 pairs)", ok3, why3);
}

void criterion_6() {
    bool ok = true;
    std::string why;
    try {
        const PentagonTriangleWitness w = pentagon_triangle_witness();
        ok = w.verified;
        ok = ok && contains_polygon(w.pentagon, w.triangle, 1e-9);
        ok = ok && contains_polygon(w.triangle_star, w.pentagon, 1e-9);
        ok = ok && norm(centroid(w.pentagon)) <= 1e-12 &&
             norm(centroid(w.triangle)) <= 1e-12 &&
             norm(centroid(w.triangle_star)) <= 1e-12;
        const EstimateResult est = estimate_cen(w.triangle, w.pentagon);
        ok = ok && est.lambda_hat <= 2.383 && est.verified;
        why = fmt("lambda %.10f, estimator %.6f", w.lambda, est.lambda_hat);
    } catch (const std::exception& e) {
        ok = false;
        why = e.what();
    }
    report(6, "pentagon-triangle witness", ok, why);
}

void criterion_7() {
    bool ok = true;
    std::string why;
    try {
        const ConvexPolygon square({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
        const ConvexPolygon tri({{0, 0}, {1, 0}, {0, 1}});
        const EstimateResult def = estimate_cen(square, tri);
        const EstimateResult high =
            estimate_cen(square, tri, EstimatorConfig::high_budget());
        ok = def.lambda_hat >= 2.499 && def.lambda_hat <= 2.55 && def.verified;
        ok = ok && high.lambda_hat >= 2.4999 && high.lambda_hat <= 2.51 &&
             high.verified;
        why = fmt("default %.6f, high %.6f", def.lambda_hat, high.lambda_hat);
    } catch (const std::exception& e) {
        ok = false;
        why = e.what();
    }
    report(7, "parallelogram-triangle bound", ok, why);
}

void criterion_8() {
    bool ok = true;
    std::string why;
    try {
        // tau on T vertices, exactly
        const Point v1 = tau({4.0 / 21.0, 0.0});
        const Point v2 = tau({1.0 / 7.0, kS3 / 21.0});
        double werr = std::max({std::abs(v1.x - 2.0 / 7.0),
                                std::abs(v1.y + 2.0 * kS3 / 21.0),
                                std::abs(v2.x - 2.0 / 7.0), std::abs(v2.y)});
        ok = werr <= 1e-15;
        // 1e4 random T points map into T+
        std::mt19937_64 rng(808);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const Point t2{4.0 / 21.0, 0.0}, t3{1.0 / 7.0, kS3 / 21.0};
        for (int i = 0; i < 10000; ++i) {
            const double s = std::sqrt(u(rng)), v = u(rng);
            const Point p = (s * (1 - v)) * t2 + (s * v) * t3;
            ok = ok && in_triangle_T_plus(tau(p));
        }
        // star identity on 1e3 random affine hexagon images
        std::uniform_real_distribution<double> g(-1.0, 1.0);
        double star_err = 0.0;
        for (int i = 0; i < 1000; ++i) {
            AffineMap m = AffineMap::from_linear(1 + g(rng), g(rng), g(rng), 1 + g(rng));
            m.tx = g(rng);
            m.ty = g(rng);
            if (std::abs(m.det()) < 1e-2) continue;
            AffineRegularHexagon hex;
            hex.center = m({0, 0});
            for (int k = 0; k < 6; ++k)
                hex.vertices[static_cast<std::size_t>(k)] =
                    m(canonical_hexagon_vertices()[static_cast<std::size_t>(k)]);
            const Star star = star_over(hex);
            for (int k = 0; k < 6; ++k) {
                const Point expect = hex.vertices[static_cast<std::size_t>((k + 5) % 6)] +
                                     hex.vertices[static_cast<std::size_t>(k)] -
                                     hex.center;
                star_err = std::max(star_err,
                                    distance(star.outer[static_cast<std::size_t>(k)],
                                             expect) /
                                        hex.diameter());
            }
        }
        ok = ok && star_err <= 1e-12;
        // first-coordinate identity on 1e5 samples
        double align_err = 0.0;
        for (int i = 0; i < 100000; ++i) {
            const double s1 = std::sqrt(u(rng)), w1 = u(rng);
            const Point pq = (s1 * (1 - w1)) * t2 + (s1 * w1) * t3;
            const double s2 = std::sqrt(u(rng)), w2 = u(rng);
            const Point rs = tau((s2 * (1 - w2)) * t2 + (s2 * w2) * t3);
            const Point d1 = point_d1(pq.x, pq.y, rs.x, rs.y);
            align_err = std::max(align_err, std::abs(d1.x - (1.5 - pq.x)));
        }
        ok = ok && align_err <= 1e-12;
        why = fmt("tau err %.1e, star err %.1e, align err %.1e", werr, star_err,
                  align_err);
    } catch (const std::exception& e) {
        ok = false;
        why = e.what();
    }
    report(8, "tau, star and alignment ids", ok, why);
}

} // namespace

int main() {
    std::printf("acceptance suite — every criterion at its pinned tolerance\n");
    criterion_1();
    criterion_2();
    criteria_3_4_5();
    criterion_6();
    criterion_7();
    criterion_8();
    if (g_failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criterion(s) FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
