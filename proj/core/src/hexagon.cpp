#include "cbm/hexagon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace cbm {

double AffineRegularHexagon::diameter() const {
    double best = 0.0;
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            best = std::max(best, distance(vertices[i], vertices[j]));
    return best;
}

double AffineRegularHexagon::identity_residual() const {
    const double diam = diameter();
    if (!(diam > 0.0)) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (int i = 0; i < 6; ++i) {
        const Point sym = vertices[i] + vertices[(i + 3) % 6] - 2.0 * center;
        const Point reg = (vertices[(i + 1) % 6] - vertices[i]) - (vertices[(i + 2) % 6] - center);
        worst = std::max({worst, norm(sym), norm(reg)});
    }
    return worst / diam;
}

ConvexPolygon AffineRegularHexagon::as_polygon() const {
    return ConvexPolygon(std::vector<Point>(vertices.begin(), vertices.end()));
}

Star star_over(const AffineRegularHexagon& hex) {
    Star s;
    s.hexagon = hex;
    for (int i = 0; i < 6; ++i)
        s.outer[i] = hex.vertices[(i + 5) % 6] + hex.vertices[i] - hex.center;
    return s;
}

StarPolygon star_polygon(const Star& star) {
    std::array<Point, 12> loop;
    for (int k = 0; k < 6; ++k) {
        loop[2 * k] = star.hexagon.vertices[k];
        loop[2 * k + 1] = star.outer[(k + 1) % 6];
    }
    auto tri = [&](int i, int j, int k) {
        return ConvexPolygon({star.outer[i], star.outer[j], star.outer[k]});
    };
    return StarPolygon{loop, tri(0, 2, 4), tri(1, 3, 5)};
}

bool star_contains(const StarPolygon& star, Point p, double tol) {
    return contains_point(star.triangle_odd, p, tol) ||
           contains_point(star.triangle_even, p, tol);
}

namespace {

constexpr double kPi = 3.14159265358979323846;

// Chord data of a polygon against a fixed direction: breakpoints are the
// vertex offsets along n(theta); chord u-extents are linear between them.
struct OffsetTable {
    Point u, n;
    std::vector<double> t;
    std::vector<double> lo, hi;
    int peak = 0;

    double tmin() const { return t.front(); }
    double tmax() const { return t.back(); }
    double span() const { return t.back() - t.front(); }

    // Index of the segment [t[k], t[k+1]] containing m.
    std::size_t segment(double m) const {
        auto it = std::upper_bound(t.begin(), t.end(), m);
        std::size_t k = static_cast<std::size_t>(it - t.begin());
        if (k == 0) return 0;
        if (k >= t.size()) return t.size() - 2;
        return k - 1;
    }
    double lerp(const std::vector<double>& f, double m) const {
        const std::size_t k = segment(m);
        const double dt = t[k + 1] - t[k];
        if (dt <= 0.0) return f[k];
        const double s = std::clamp((m - t[k]) / dt, 0.0, 1.0);
        return f[k] + s * (f[k + 1] - f[k]);
    }
    double width(double m) const { return lerp(hi, m) - lerp(lo, m); }
    double lo_at(double m) const { return lerp(lo, m); }
    double hi_at(double m) const { return lerp(hi, m); }

    // Largest offset with w >= level (right end of the concave superlevel set).
    double upper_reach(double level) const {
        const std::size_t n_ = t.size();
        if (hi[n_ - 1] - lo[n_ - 1] >= level) return t[n_ - 1];
        std::size_t k = static_cast<std::size_t>(peak);
        while (k + 1 < n_ && hi[k + 1] - lo[k + 1] >= level) ++k;
        // crossing inside segment [k, k+1]
        const double w0 = hi[k] - lo[k], w1 = hi[k + 1] - lo[k + 1];
        if (w0 == w1) return t[k];
        const double s = std::clamp((w0 - level) / (w0 - w1), 0.0, 1.0);
        return t[k] + s * (t[k + 1] - t[k]);
    }
    double lower_reach(double level) const {
        if (hi[0] - lo[0] >= level) return t[0];
        std::size_t k = static_cast<std::size_t>(peak);
        while (k > 0 && hi[k - 1] - lo[k - 1] >= level) --k;
        const double w0 = hi[k] - lo[k], w1 = hi[k - 1] - lo[k - 1];
        if (w0 == w1) return t[k];
        const double s = std::clamp((w0 - level) / (w0 - w1), 0.0, 1.0);
        return t[k] - s * (t[k] - t[k - 1]);
    }
};

OffsetTable build_table(const ConvexPolygon& poly, double theta) {
    OffsetTable tab;
    tab.u = {std::cos(theta), std::sin(theta)};
    tab.n = {-tab.u.y, tab.u.x};
    const auto& v = poly.vertices();
    const std::size_t n = v.size();

    std::vector<double> offs(n);
    for (std::size_t i = 0; i < n; ++i) offs[i] = dot(v[i], tab.n);
    std::vector<double> bps = offs;
    std::sort(bps.begin(), bps.end());
    const double merge = 1e-14 * std::max(1.0, std::abs(bps.back() - bps.front()));
    bps.erase(std::unique(bps.begin(), bps.end(),
                          [&](double a, double b) { return b - a <= merge; }),
              bps.end());

    tab.t = bps;
    tab.lo.resize(bps.size());
    tab.hi.resize(bps.size());
    for (std::size_t j = 0; j < bps.size(); ++j) {
        const double level = bps[j];
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t i2 = (i + 1) % n;
            const double da = offs[i] - level;
            const double db = offs[i2] - level;
            auto take = [&](Point p) {
                const double c = dot(p, tab.u);
                lo = std::min(lo, c);
                hi = std::max(hi, c);
            };
            if (std::abs(da) <= merge) take(v[i]);
            if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0))
                take(v[i] + (da / (da - db)) * (v[i2] - v[i]));
        }
        tab.lo[j] = lo;
        tab.hi[j] = hi;
    }
    tab.peak = 0;
    for (std::size_t j = 1; j < bps.size(); ++j)
        if (tab.hi[j] - tab.lo[j] > tab.hi[tab.peak] - tab.lo[tab.peak])
            tab.peak = static_cast<int>(j);
    return tab;
}

struct InnerSolution {
    bool valid = false;
    double m = 0, a = 0, b = 0, level = 0;
    double defect = std::numeric_limits<double>::infinity();
    double sum_target = 0;
    double mxa_lo = 0, mxa_hi = 0, mxb_lo = 0, mxb_hi = 0;
};

double offset_gap(const OffsetTable& tab, double m) {
    const double level = tab.width(m) / 2.0;
    const double a = tab.upper_reach(level);
    const double b = tab.lower_reach(level);
    return (a + b) / 2.0 - m;
}

InnerSolution solve_at_root(const OffsetTable& tab, double m) {
    InnerSolution sol;
    sol.m = m;
    sol.level = tab.width(m) / 2.0;
    if (!(sol.level > 0.0)) return sol;
    sol.a = tab.upper_reach(sol.level);
    sol.b = tab.lower_reach(sol.level);
    if (!(sol.a > m) || !(sol.b < m)) return sol;

    const double L = sol.level;
    sol.mxa_lo = tab.lo_at(sol.a) + L / 2.0;
    sol.mxa_hi = tab.hi_at(sol.a) - L / 2.0;
    sol.mxb_lo = tab.lo_at(sol.b) + L / 2.0;
    sol.mxb_hi = tab.hi_at(sol.b) - L / 2.0;
    if (sol.mxa_hi < sol.mxa_lo) sol.mxa_lo = sol.mxa_hi = (sol.mxa_lo + sol.mxa_hi) / 2.0;
    if (sol.mxb_hi < sol.mxb_lo) sol.mxb_lo = sol.mxb_hi = (sol.mxb_lo + sol.mxb_hi) / 2.0;

    sol.sum_target = tab.lo_at(m) + tab.hi_at(m);
    const double sum_lo = sol.mxa_lo + sol.mxb_lo;
    const double sum_hi = sol.mxa_hi + sol.mxb_hi;
    if (sol.sum_target < sum_lo)
        sol.defect = sol.sum_target - sum_lo;
    else if (sol.sum_target > sum_hi)
        sol.defect = sol.sum_target - sum_hi;
    else
        sol.defect = 0.0;
    sol.valid = true;
    return sol;
}

// Inner solve at a fixed direction: find offset roots of the gap function,
// return the solution with the smallest alignment defect.
InnerSolution solve_theta(const OffsetTable& tab) {
    InnerSolution best;
    if (tab.t.size() < 2) return best;
    const double span = tab.span();
    if (!(span > 0.0)) return best;
    const double m_lo = tab.tmin() + 5e-4 * span;
    const double m_hi = tab.tmax() - 5e-4 * span;
    if (!(m_lo < m_hi)) return best;

    std::vector<double> samples;
    samples.push_back(m_lo);
    for (double bp : tab.t)
        if (bp > m_lo && bp < m_hi) samples.push_back(bp);
    samples.push_back(m_hi);

    std::vector<double> gaps(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) gaps[i] = offset_gap(tab, samples[i]);

    std::vector<double> roots;
    const double h_zero = 1e-13 * span;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (std::abs(gaps[i]) <= h_zero) {
            roots.push_back(samples[i]);
            continue;
        }
        if (i + 1 < samples.size() && gaps[i] * gaps[i + 1] < 0.0) {
            double lo = samples[i], hi = samples[i + 1];
            double glo = gaps[i];
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double gm = offset_gap(tab, mid);
                if (gm == 0.0) { lo = hi = mid; break; }
                if ((gm > 0.0) == (glo > 0.0)) {
                    lo = mid;
                    glo = gm;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
    }
    for (double r : roots) {
        InnerSolution sol = solve_at_root(tab, r);
        if (!sol.valid) continue;
        if (std::abs(sol.defect) < std::abs(best.defect) ||
            (std::abs(sol.defect) == std::abs(best.defect) && sol.m < best.m) ||
            !best.valid)
            best = sol;
    }
    return best;
}

AffineRegularHexagon hexagon_from(const OffsetTable& tab, const InnerSolution& sol) {
    const double L = sol.level;
    const double mu_a = (sol.mxa_lo + sol.mxa_hi) / 2.0;
    const double mu_b = (sol.mxb_lo + sol.mxb_hi) / 2.0;
    const double shift = (sol.sum_target - mu_a - mu_b) / 2.0;
    double mxa = std::clamp(mu_a + shift, sol.mxa_lo, sol.mxa_hi);
    double mxb = sol.sum_target - mxa;
    if (mxb < sol.mxb_lo || mxb > sol.mxb_hi) {
        mxb = std::clamp(mxb, sol.mxb_lo, sol.mxb_hi);
        mxa = std::clamp(sol.sum_target - mxb, sol.mxa_lo, sol.mxa_hi);
    }
    auto at = [&](double offset, double ucoord) { return ucoord * tab.u + offset * tab.n; };
    AffineRegularHexagon hex;
    hex.vertices[0] = at(sol.a, mxa + L / 2.0);
    hex.vertices[1] = at(sol.a, mxa - L / 2.0);
    hex.vertices[2] = at(sol.m, tab.lo_at(sol.m));
    hex.vertices[3] = at(sol.b, mxb - L / 2.0);
    hex.vertices[4] = at(sol.b, mxb + L / 2.0);
    hex.vertices[5] = at(sol.m, tab.hi_at(sol.m));
    hex.center = 0.5 * (hex.vertices[2] + hex.vertices[5]);
    return hex;
}

double hexagon_residual(const ConvexPolygon& poly, const AffineRegularHexagon& hex) {
    const double diam = poly.diameter();
    double worst = hex.identity_residual() * hex.diameter() / diam;
    for (const Point& v : hex.vertices)
        worst = std::max(worst, distance_to_boundary(poly, v) / diam);
    return worst;
}

struct Candidate {
    bool ok = false;
    AffineRegularHexagon hex;
    double residual = std::numeric_limits<double>::infinity();
};

Candidate try_build(const ConvexPolygon& poly, const OffsetTable& tab,
                    const InnerSolution& sol, double tol) {
    Candidate c;
    if (!sol.valid) return c;
    AffineRegularHexagon hex = hexagon_from(tab, sol);
    const double diam = poly.diameter();
    if (hex.diameter() < 1e-6 * diam) return c;
    c.hex = hex;
    c.residual = hexagon_residual(poly, hex);
    c.ok = c.residual <= tol &&
           contains_polygon(poly, hex.as_polygon(), 2.0 * tol * diam + 1e-12 * diam);
    return c;
}

} // namespace

AffineRegularHexagon inscribe_hexagon(const ConvexPolygon& poly, double tol) {
    const double diam = poly.diameter();
    const double g_accept = 1e-12 * diam;

    // Sample directions: uniform grid plus exact edge directions, where the
    // alignment defect may be discontinuous (flat-edge configurations).
    std::vector<double> thetas;
    const int grid = 256;
    thetas.reserve(grid + poly.size());
    for (int j = 0; j < grid; ++j) thetas.push_back(kPi * j / grid);
    const auto& v = poly.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point e = v[(i + 1) % v.size()] - v[i];
        double ang = std::atan2(e.y, e.x);
        while (ang < 0.0) ang += kPi;
        while (ang >= kPi) ang -= kPi;
        thetas.push_back(ang);
    }
    std::sort(thetas.begin(), thetas.end());
    thetas.erase(std::unique(thetas.begin(), thetas.end(),
                             [](double a, double b) { return b - a <= 1e-15; }),
                 thetas.end());

    struct Sample {
        double theta;
        bool valid;
        double g;
    };
    std::vector<Sample> samples;
    samples.reserve(thetas.size());

    double best_residual = std::numeric_limits<double>::infinity();

    auto evaluate = [&](double theta) -> std::pair<InnerSolution, OffsetTable> {
        OffsetTable tab = build_table(poly, theta);
        InnerSolution sol = solve_theta(tab);
        return {sol, std::move(tab)};
    };

    // First pass: direct hits (covers edge-parallel exact solves).
    for (double theta : thetas) {
        auto [sol, tab] = evaluate(theta);
        samples.push_back({theta, sol.valid, sol.valid ? sol.defect : 0.0});
        if (sol.valid && std::abs(sol.defect) <= g_accept) {
            Candidate c = try_build(poly, tab, sol, tol);
            if (c.ok) return c.hex;
            best_residual = std::min(best_residual, c.residual);
        }
    }

    // Second pass: bisect every sign-change bracket of the defect.
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        const Sample& s0 = samples[i];
        const Sample& s1 = samples[i + 1];
        if (!s0.valid || !s1.valid) continue;
        if (!(s0.g * s1.g < 0.0)) continue;
        double lo = s0.theta, hi = s1.theta, glo = s0.g;
        InnerSolution best_sol;
        OffsetTable best_tab;
        double best_g = std::numeric_limits<double>::infinity();
        for (int it = 0; it < 64 && hi - lo > 1e-15; ++it) {
            const double mid = 0.5 * (lo + hi);
            auto [sol, tab] = evaluate(mid);
            if (!sol.valid) break;
            if (std::abs(sol.defect) < best_g) {
                best_g = std::abs(sol.defect);
                best_sol = sol;
                best_tab = std::move(tab);
            }
            if (best_g <= g_accept) break;
            if ((sol.defect > 0.0) == (glo > 0.0)) {
                lo = mid;
                glo = sol.defect;
            } else {
                hi = mid;
            }
        }
        if (best_sol.valid) {
            Candidate c = try_build(poly, best_tab, best_sol, tol);
            if (c.ok) return c.hex;
            best_residual = std::min(best_residual, c.residual);
        }
    }

    // Third pass: golden-section refinement around local minima of |defect|
    // (tangential zeros, e.g. mirror-symmetric bodies).
    struct Min {
        double g;
        std::size_t i;
    };
    std::vector<Min> minima;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!samples[i].valid) continue;
        const double gi = std::abs(samples[i].g);
        const double gp = (i > 0 && samples[i - 1].valid)
                              ? std::abs(samples[i - 1].g)
                              : std::numeric_limits<double>::infinity();
        const double gn = (i + 1 < samples.size() && samples[i + 1].valid)
                              ? std::abs(samples[i + 1].g)
                              : std::numeric_limits<double>::infinity();
        if (gi <= gp && gi <= gn) minima.push_back({gi, i});
    }
    std::sort(minima.begin(), minima.end(), [](const Min& a, const Min& b) { return a.g < b.g; });
    if (minima.size() > 8) minima.resize(8);

    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (const Min& mn : minima) {
        const std::size_t i = mn.i;
        double lo = i > 0 ? samples[i - 1].theta : samples[i].theta - kPi / grid;
        double hi = i + 1 < samples.size() ? samples[i + 1].theta : samples[i].theta + kPi / grid;
        double x1 = hi - invphi * (hi - lo);
        double x2 = lo + invphi * (hi - lo);
        auto absg = [&](double theta) {
            InnerSolution s = solve_theta(build_table(poly, theta));
            return s.valid ? std::abs(s.defect) : std::numeric_limits<double>::infinity();
        };
        double f1 = absg(x1), f2 = absg(x2);
        for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
            if (f1 < f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - invphi * (hi - lo);
                f1 = absg(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + invphi * (hi - lo);
                f2 = absg(x2);
            }
        }
        const double theta = 0.5 * (lo + hi);
        auto [sol, tab] = evaluate(theta);
        if (sol.valid) {
            Candidate c = try_build(poly, tab, sol, tol);
            if (c.ok) return c.hex;
            best_residual = std::min(best_residual, c.residual);
        }
    }

    throw ConvergenceError("inscribe_hexagon: no inscribed affine-regular hexagon reached "
                           "the requested residual",
                           best_residual);
}

CentroidLemmaResult check_centroid_lemma(const ConvexPolygon& poly,
                                         const AffineRegularHexagon& hex) {
    const double diam = poly.diameter();
    if (!contains_polygon(poly, hex.as_polygon(), 1e-7 * diam))
        throw DomainError("check_centroid_lemma: hexagon is not inscribed in the polygon");

    AffineRegularHexagon small = hex;
    const double ratio = 4.0 / 21.0;
    for (int i = 0; i < 6; ++i)
        small.vertices[i] = hex.center + ratio * (hex.vertices[i] - hex.center);
    const ConvexPolygon small_poly = small.as_polygon();
    const Point c = centroid(poly);
    CentroidLemmaResult r;
    r.holds = contains_point(small_poly, c, 1e-9 * diam);
    r.margin = signed_edge_distance(small_poly, c);
    return r;
}

} // namespace cbm
