#include "cbm/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "cbm/optim.hpp"
#include "cbm/parallel.hpp"

namespace cbm {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Radial profile of a polygon with the origin strictly interior: wedge
// lookup by vertex angle, exact ray-edge intersection.
class RadialTable {
public:
    explicit RadialTable(const ConvexPolygon& poly) : verts_(poly.vertices()) {
        const std::size_t n = verts_.size();
        angles_.resize(n);
        std::size_t start = 0;
        for (std::size_t i = 0; i < n; ++i) {
            angles_[i] = std::atan2(verts_[i].y, verts_[i].x);
            if (angles_[i] < angles_[start]) start = i;
        }
        std::rotate(verts_.begin(), verts_.begin() + static_cast<long>(start), verts_.end());
        std::rotate(angles_.begin(), angles_.begin() + static_cast<long>(start), angles_.end());
    }

    double radius(Point dir) const {
        const double phi = std::atan2(dir.y, dir.x);
        std::size_t lo = 0;
        if (phi < angles_[0]) {
            lo = angles_.size() - 1; // wrap wedge between the last vertex and the first
        } else {
            std::size_t hi = angles_.size();
            while (lo + 1 < hi) {
                const std::size_t mid = (lo + hi) / 2;
                if (angles_[mid] <= phi)
                    lo = mid;
                else
                    hi = mid;
            }
        }
        // wedge between verts_[lo] and its successor (cyclic)
        const Point& a = verts_[lo];
        const Point& b = verts_[(lo + 1) % verts_.size()];
        const Point ab = b - a;
        const double den = cross(ab, dir);
        if (den == 0.0) return std::max(norm(a), norm(b));
        return cross(ab, a) / den;
    }

    // Minkowski gauge: smallest t with x in t * polygon.
    double gauge(Point x) const {
        const double r = norm(x);
        if (r == 0.0) return 0.0;
        return r / radius({x.x / r, x.y / r});
    }

private:
    std::vector<Point> verts_;
    std::vector<double> angles_;
};

struct Linear {
    double a, b, c, d; // [[a b],[c d]]
    Point operator()(Point p) const { return {a * p.x + b * p.y, c * p.x + d * p.y}; }
    Linear inverse() const {
        const double det = a * d - b * c;
        return {d / det, -b / det, -c / det, a / det};
    }
};

Linear rot_sigma_rot(double alpha, double sigma, double beta) {
    const double ca = std::cos(alpha), sa = std::sin(alpha);
    const double cb = std::cos(beta), sb = std::sin(beta);
    const double inv = 1.0 / sigma;
    // Rot(alpha) * diag(sigma, 1/sigma) * Rot(beta)
    return {ca * sigma * cb - sa * inv * sb, -ca * sigma * sb - sa * inv * cb,
            sa * sigma * cb + ca * inv * sb, -sa * sigma * sb + ca * inv * cb};
}

ConvexPolygon recentered(const ConvexPolygon& poly) {
    const Point c = centroid(poly);
    return apply(AffineMap::translation({-c.x, -c.y}), poly);
}

std::vector<double> sigma_grid(const EstimatorConfig& cfg) {
    std::vector<double> out{1.0};
    const double lmax = std::log(cfg.sigma_max);
    const int n = std::max(2, cfg.n_sigma);
    for (int i = 0; i < n; ++i)
        out.push_back(std::exp(-lmax + 2.0 * lmax * i / (n - 1)));
    return out;
}

struct GridBest {
    double value = std::numeric_limits<double>::infinity();
    double alpha = 0.0, lsigma = 0.0, beta = 0.0;
    bool reflected = false;
    std::size_t cell = 0;
    bool better_than(const GridBest& o) const {
        return value < o.value || (value == o.value && cell < o.cell);
    }
};

struct CommonSearch {
    // objective(alpha, lsigma, beta, reflected) -> lambda
    std::function<double(double, double, double, bool)> objective;
    EstimatorConfig cfg;

    GridBest run(std::vector<GridBest>* top_out) const {
        const std::vector<double> sigmas = sigma_grid(cfg);
        std::vector<double> alphas(static_cast<std::size_t>(cfg.n_alpha));
        for (int i = 0; i < cfg.n_alpha; ++i) alphas[i] = kPi * i / cfg.n_alpha;
        std::vector<double> betas(static_cast<std::size_t>(cfg.n_beta));
        for (int i = 0; i < cfg.n_beta; ++i) betas[i] = 2.0 * kPi * i / cfg.n_beta;

        const std::size_t per_refl = alphas.size() * sigmas.size() * betas.size();
        const std::size_t total = 2 * per_refl;
        const unsigned chunks = 64;
        std::vector<std::vector<GridBest>> chunk_top(chunks);

        parallel_chunks(total, chunks, [&](unsigned c, std::size_t b, std::size_t e) {
            auto& top = chunk_top[c];
            for (std::size_t k = b; k < e; ++k) {
                const bool refl = k >= per_refl;
                std::size_t m = refl ? k - per_refl : k;
                const std::size_t ib = m % betas.size();
                m /= betas.size();
                const std::size_t is = m % sigmas.size();
                const std::size_t ia = m / sigmas.size();
                GridBest g;
                g.value = objective(alphas[ia], std::log(sigmas[is]), betas[ib], refl);
                g.alpha = alphas[ia];
                g.lsigma = std::log(sigmas[is]);
                g.beta = betas[ib];
                g.reflected = refl;
                g.cell = k;
                top.push_back(g);
                std::push_heap(top.begin(), top.end(),
                               [](const GridBest& x, const GridBest& y) {
                                   return x.better_than(y);
                               });
                if (top.size() > 6) {
                    std::pop_heap(top.begin(), top.end(),
                                  [](const GridBest& x, const GridBest& y) {
                                      return x.better_than(y);
                                  });
                    top.pop_back();
                }
            }
        });

        std::vector<GridBest> pool;
        for (unsigned c = 0; c < chunks; ++c)
            for (const GridBest& g : chunk_top[c]) pool.push_back(g);
        std::sort(pool.begin(), pool.end(),
                  [](const GridBest& x, const GridBest& y) { return x.better_than(y); });
        if (pool.size() > 10) pool.resize(10);

        GridBest best = pool.empty() ? GridBest{} : pool.front();
        const double lcap = std::log(cfg.sigma_max) + 0.5;
        for (const GridBest& seed : pool) {
            auto fn = [&](const std::vector<double>& x) {
                if (std::abs(x[1]) > lcap) return 1e300;
                return objective(x[0], x[1], x[2], seed.reflected);
            };
            const auto r = nelder_mead(fn, {seed.alpha, seed.lsigma, seed.beta},
                                       {kPi / cfg.n_alpha, 0.1, kPi / cfg.n_beta},
                                       cfg.refine_iters);
            if (r.value < best.value) {
                best.value = r.value;
                best.alpha = r.x[0];
                best.lsigma = r.x[1];
                best.beta = r.x[2];
                best.reflected = seed.reflected;
            }
        }
        if (top_out) *top_out = pool;
        return best;
    }
};

// Half-plane list {x : <x, u> <= c}; feasibility via polygon clipping.
struct HalfPlane {
    Point u;
    double c;
};

// Clips a large box by every half-plane; returns a point of the intersection
// (vertex average) or nothing when infeasible.
std::optional<Point> halfplanes_point(const std::vector<HalfPlane>& hps, double box) {
    std::vector<Point> poly{{-box, -box}, {box, -box}, {box, box}, {-box, box}};
    for (const HalfPlane& h : hps) {
        std::vector<Point> next;
        const std::size_t n = poly.size();
        if (n == 0) return std::nullopt;
        for (std::size_t i = 0; i < n; ++i) {
            const Point& a = poly[i];
            const Point& b = poly[(i + 1) % n];
            const double da = dot(a, h.u) - h.c;
            const double db = dot(b, h.u) - h.c;
            if (da <= 0.0) next.push_back(a);
            if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0))
                next.push_back(a + (da / (da - db)) * (b - a));
        }
        poly = std::move(next);
        if (poly.empty()) return std::nullopt;
    }
    Point sum{0, 0};
    for (const Point& p : poly) sum = sum + p;
    return (1.0 / static_cast<double>(poly.size())) * sum;
}

bool halfplanes_feasible(const std::vector<HalfPlane>& hps, double box) {
    return halfplanes_point(hps, box).has_value();
}

std::vector<Point> edge_normals(const ConvexPolygon& poly) {
    std::vector<Point> out;
    const auto& v = poly.vertices();
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point e = v[(i + 1) % v.size()] - v[i];
        const double len = norm(e);
        out.push_back({e.y / len, -e.x / len});
    }
    return out;
}

double support(const std::vector<Point>& verts, Point u) {
    double best = -std::numeric_limits<double>::infinity();
    for (const Point& v : verts) best = std::max(best, dot(v, u));
    return best;
}

} // namespace

EstimatorConfig EstimatorConfig::low_budget() {
    EstimatorConfig c;
    c.n_alpha = 24;
    c.n_sigma = 13;
    c.n_beta = 24;
    c.refine_iters = 120;
    return c;
}

EstimatorConfig EstimatorConfig::default_budget() { return {}; }

EstimatorConfig EstimatorConfig::high_budget() {
    EstimatorConfig c;
    c.n_alpha = 96;
    c.n_sigma = 48;
    c.n_beta = 96;
    c.refine_iters = 1200;
    return c;
}

EstimateResult estimate_cen(const ConvexPolygon& C, const ConvexPolygon& D,
                            const EstimatorConfig& cfg) {
    const Point cen_c = centroid(C);
    const Point cen_d = centroid(D);
    const ConvexPolygon C0 = recentered(C);
    const ConvexPolygon D0 = recentered(D);
    const AffineMap reflect = AffineMap::from_linear(1, 0, 0, -1);
    const ConvexPolygon C0r = apply(reflect, C0);

    const RadialTable tab_c(C0), tab_cr(C0r), tab_d(D0);

    auto lambda_of = [&](double alpha, double lsigma, double beta, bool refl) {
        const Linear L = rot_sigma_rot(alpha, std::exp(lsigma), beta);
        const Linear Linv = L.inverse();
        const ConvexPolygon& cc = refl ? C0r : C0;
        const RadialTable& tc = refl ? tab_cr : tab_c;
        double inner = 0.0;
        for (const Point& v : cc.vertices()) inner = std::max(inner, tab_d.gauge(L(v)));
        double outer = 0.0;
        for (const Point& w : D0.vertices()) outer = std::max(outer, tc.gauge(Linv(w)));
        return inner * outer;
    };

    CommonSearch search{lambda_of, cfg};
    const GridBest best = search.run(nullptr);

    // Exact final pass with the winning map.
    const Linear L = rot_sigma_rot(best.alpha, std::exp(best.lsigma), best.beta);
    const ConvexPolygon& cc = best.reflected ? C0r : C0;
    const RadialTable& tc = best.reflected ? tab_cr : tab_c;
    double inner = 0.0;
    for (const Point& v : cc.vertices()) inner = std::max(inner, tab_d.gauge(L(v)));
    const double t_star = 1.0 / inner;
    double lambda = 0.0;
    const Linear Linv = L.inverse();
    for (const Point& w : D0.vertices())
        lambda = std::max(lambda, tc.gauge(Linv(w)) * inner);
    lambda = std::max(lambda, 1.0);

    AffineMap lin = AffineMap::from_linear(L.a, L.b, L.c, L.d);
    if (best.reflected) lin = compose(lin, reflect);
    lin = compose(AffineMap::scale_about({0, 0}, t_star), lin);
    const AffineMap map =
        compose(AffineMap::translation(cen_d), compose(lin, AffineMap::translation(-cen_c)));

    EstimateResult res;
    res.lambda_hat = lambda;
    res.best_map = map;
    res.inner_scale = t_star;
    const double tol = 1e-9 * std::max(C.diameter(), D.diameter());
    const ConvexPolygon placed = apply(map, C);
    res.verified = contains_polygon(D, placed, tol) &&
                   contains_polygon(apply(AffineMap::scale_about(cen_d, lambda), placed), D, tol);
    return res;
}

EstimateResult estimate_extended(const ConvexPolygon& C, const ConvexPolygon& D,
                                 const EstimatorConfig& cfg) {
    const Point cen_c = centroid(C);
    const Point cen_d = centroid(D);
    const ConvexPolygon C0 = recentered(C);
    const ConvexPolygon D0 = recentered(D);
    const AffineMap reflect = AffineMap::from_linear(1, 0, 0, -1);
    const ConvexPolygon C0r = apply(reflect, C0);

    const std::vector<Point> normals_d = edge_normals(D0);
    std::vector<double> hd(normals_d.size());
    for (std::size_t j = 0; j < normals_d.size(); ++j)
        hd[j] = support(D0.vertices(), normals_d[j]);
    const double box = 4.0 * (C0.diameter() + D0.diameter());

    struct Placement {
        double s_star = 0.0;
        double lambda = std::numeric_limits<double>::infinity();
        Point inner_shift{0, 0}; // t0 with s* L C + t0 in D
        Point outer_shift{0, 0}; // w with D in lambda (s* L C) + w
    };

    auto solve_L = [&](double alpha, double lsigma, double beta, bool refl) -> Placement {
        const Linear L = rot_sigma_rot(alpha, std::exp(lsigma), beta);
        const ConvexPolygon& cc = refl ? C0r : C0;
        std::vector<Point> lc;
        lc.reserve(cc.size());
        for (const Point& v : cc.vertices()) lc.push_back(L(v));

        // Inner LP: largest s with s*(L C) + t0 inside D.
        std::vector<double> h_lc_d(normals_d.size());
        for (std::size_t j = 0; j < normals_d.size(); ++j)
            h_lc_d[j] = support(lc, normals_d[j]);
        double s_hi = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < normals_d.size(); ++j) {
            const double wd = hd[j] + support(D0.vertices(), -normals_d[j]);
            const double wc = h_lc_d[j] + support(lc, -normals_d[j]);
            if (wc > 0.0) s_hi = std::min(s_hi, wd / wc);
        }
        if (!std::isfinite(s_hi)) return {};
        auto inner_feasible = [&](double s) {
            std::vector<HalfPlane> hp;
            hp.reserve(normals_d.size());
            for (std::size_t j = 0; j < normals_d.size(); ++j)
                hp.push_back({normals_d[j], hd[j] - s * h_lc_d[j]});
            return halfplanes_feasible(hp, box);
        };
        double s_lo = 0.0;
        if (!inner_feasible(s_lo)) return {};
        if (inner_feasible(s_hi)) {
            s_lo = s_hi;
        } else {
            for (int it = 0; it < 48; ++it) {
                const double mid = 0.5 * (s_lo + s_hi);
                (inner_feasible(mid) ? s_lo : s_hi) = mid;
            }
        }
        if (!(s_lo > 0.0)) return {};

        // Outer LP: smallest lambda with D inside lambda*(s* L C) + w.
        std::vector<Point> normals_c;
        {
            const auto& v = cc.vertices();
            for (std::size_t i = 0; i < v.size(); ++i) {
                const Point e = L(v[(i + 1) % v.size()]) - L(v[i]);
                const double len = norm(e);
                normals_c.push_back({e.y / len, -e.x / len});
            }
        }
        std::vector<double> a_k(normals_c.size()), b_k(normals_c.size());
        for (std::size_t k = 0; k < normals_c.size(); ++k) {
            a_k[k] = s_lo * support(lc, normals_c[k]);
            b_k[k] = support(D0.vertices(), normals_c[k]);
        }
        auto outer_feasible = [&](double lambda) {
            std::vector<HalfPlane> hp;
            hp.reserve(normals_c.size());
            // <w, u_k> >= b_k - lambda a_k  <=>  <w, -u_k> <= lambda a_k - b_k
            for (std::size_t k = 0; k < normals_c.size(); ++k)
                hp.push_back({{-normals_c[k].x, -normals_c[k].y}, lambda * a_k[k] - b_k[k]});
            return halfplanes_feasible(hp, box);
        };
        double lam_hi = 1.0;
        for (std::size_t k = 0; k < normals_c.size(); ++k)
            if (a_k[k] > 0.0) lam_hi = std::max(lam_hi, b_k[k] / a_k[k]);
        lam_hi *= 1.0 + 1e-9;
        if (!outer_feasible(lam_hi)) return {};
        double lam_lo = 0.0;
        for (int it = 0; it < 48; ++it) {
            const double mid = 0.5 * (lam_lo + lam_hi);
            (outer_feasible(mid) ? lam_hi : lam_lo) = mid;
        }

        Placement placement;
        placement.s_star = s_lo;
        placement.lambda = lam_hi;
        {
            std::vector<HalfPlane> hp;
            for (std::size_t j = 0; j < normals_d.size(); ++j)
                hp.push_back({normals_d[j], hd[j] - s_lo * h_lc_d[j]});
            if (const auto t0 = halfplanes_point(hp, box)) placement.inner_shift = *t0;
        }
        {
            std::vector<HalfPlane> hp;
            for (std::size_t k = 0; k < normals_c.size(); ++k)
                hp.push_back(
                    {{-normals_c[k].x, -normals_c[k].y}, lam_hi * a_k[k] - b_k[k]});
            if (const auto w = halfplanes_point(hp, box)) placement.outer_shift = *w;
        }
        return placement;
    };

    auto lambda_of = [&](double alpha, double lsigma, double beta, bool refl) {
        return solve_L(alpha, lsigma, beta, refl).lambda;
    };

    CommonSearch search{lambda_of, cfg};
    const GridBest best = search.run(nullptr);
    const Placement placement = solve_L(best.alpha, best.lsigma, best.beta, best.reflected);

    EstimateResult res;
    res.lambda_hat = std::max(1.0, placement.lambda);
    res.inner_scale = placement.s_star;
    const Linear L = rot_sigma_rot(best.alpha, std::exp(best.lsigma), best.beta);
    AffineMap lin = AffineMap::from_linear(L.a, L.b, L.c, L.d);
    if (best.reflected) lin = compose(lin, reflect);
    lin = compose(AffineMap::scale_about({0, 0}, placement.s_star), lin);
    // a(x) = s* L R (x - cen_c) + t0 + cen_d
    res.best_map = compose(AffineMap::translation(cen_d + placement.inner_shift),
                           compose(lin, AffineMap::translation(-cen_c)));

    // Verify the reported placement on the actual polygons: the inner body is
    // a(C); the outer body is lambda * (a(C) - t0 - cen_d) + w + cen_d.
    const ConvexPolygon placed = apply(res.best_map, C);
    const AffineMap outer_map = compose(
        AffineMap::translation(cen_d + placement.outer_shift),
        compose(AffineMap::scale_about({0, 0}, res.lambda_hat),
                AffineMap::translation(-cen_d - placement.inner_shift)));
    const ConvexPolygon covering = apply(outer_map, placed);
    const double tol = 1e-9 * std::max(C.diameter(), D.diameter());
    res.verified =
        contains_polygon(D, placed, tol) && contains_polygon(covering, D, tol);
    return res;
}

PentagonTriangleWitness pentagon_triangle_witness() {
    std::vector<Point> pent;
    for (int i = 1; i <= 5; ++i) {
        const double a = 2.0 * kPi * i / 5.0;
        pent.push_back({std::cos(a), std::sin(a)});
    }
    const ConvexPolygon P(pent);

    // Intersect x = -1/2 with the edge from the vertex at 72 deg to the
    // vertex at 144 deg.
    const Point p1{std::cos(2.0 * kPi / 5.0), std::sin(2.0 * kPi / 5.0)};
    const Point p2{std::cos(4.0 * kPi / 5.0), std::sin(4.0 * kPi / 5.0)};
    const double t = (p1.x + 0.5) / (p1.x - p2.x);
    const double y = p1.y + t * (p2.y - p1.y);
    const ConvexPolygon T({{1.0, 0.0}, {-0.5, y}, {-0.5, -y}});

    const double lambda = (7.0 - std::sqrt(5.0)) / 2.0;
    const ConvexPolygon Tstar = apply(AffineMap::scale_about({0, 0}, lambda), T);

    PentagonTriangleWitness w{P, T, Tstar, lambda, false};
    const double tol = 1e-9 * Tstar.diameter();
    w.verified = contains_polygon(P, T, tol) && contains_polygon(Tstar, P, tol) &&
                 norm(centroid(P)) <= 1e-12 && norm(centroid(T)) <= 1e-12 &&
                 norm(centroid(Tstar)) <= 1e-12;
    return w;
}

} // namespace cbm
