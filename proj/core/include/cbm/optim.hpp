#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

namespace cbm {

// Plain Nelder-Mead minimization with box-free domain handling: the objective
// may return +inf to reject a point. Returns the best point seen anywhere.
struct NelderMeadResult {
    std::vector<double> x;
    double value;
    int evaluations;
};

inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    std::vector<double> x0, const std::vector<double>& step,
                                    int max_iter) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> x(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) x[i + 1][i] += step[i];
    std::vector<double> fx(n + 1);
    int evals = 0;
    auto eval = [&](const std::vector<double>& p) {
        ++evals;
        return f(p);
    };
    for (std::size_t i = 0; i <= n; ++i) fx[i] = eval(x[i]);

    NelderMeadResult best{x0, fx[0], 0};
    auto note = [&](const std::vector<double>& p, double v) {
        if (v < best.value) {
            best.value = v;
            best.x = p;
        }
    };
    for (std::size_t i = 0; i <= n; ++i) note(x[i], fx[i]);

    std::vector<std::size_t> idx(n + 1);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::vector<double> xc(n), xt(n);

    for (int it = 0; it < max_iter; ++it) {
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return fx[a] < fx[b];
        });
        const std::size_t ib = idx[0], iw = idx[n], isw = idx[n - 1];
        if (std::isfinite(fx[iw]) && fx[iw] - fx[ib] <= 1e-15 * (1.0 + std::abs(fx[ib]))) break;

        std::fill(xc.begin(), xc.end(), 0.0);
        for (std::size_t k = 0; k <= n; ++k) {
            if (k == iw) continue;
            for (std::size_t j = 0; j < n; ++j) xc[j] += x[k][j];
        }
        for (std::size_t j = 0; j < n; ++j) xc[j] /= static_cast<double>(n);

        auto blend = [&](double t) {
            for (std::size_t j = 0; j < n; ++j) xt[j] = xc[j] + t * (x[iw][j] - xc[j]);
            return eval(xt);
        };
        const double fr = blend(-1.0);
        note(xt, fr);
        if (fr < fx[ib]) {
            std::vector<double> xr = xt;
            const double fe = blend(-2.0);
            note(xt, fe);
            if (fe < fr) {
                x[iw] = xt;
                fx[iw] = fe;
            } else {
                x[iw] = xr;
                fx[iw] = fr;
            }
        } else if (fr < fx[isw]) {
            x[iw] = xt;
            fx[iw] = fr;
        } else {
            const double fk = blend(0.5);
            note(xt, fk);
            if (fk < fx[iw]) {
                x[iw] = xt;
                fx[iw] = fk;
            } else {
                for (std::size_t k = 0; k <= n; ++k) {
                    if (k == ib) continue;
                    for (std::size_t j = 0; j < n; ++j)
                        x[k][j] = x[ib][j] + 0.5 * (x[k][j] - x[ib][j]);
                    fx[k] = eval(x[k]);
                    note(x[k], fx[k]);
                }
            }
        }
    }
    best.evaluations = evals;
    return best;
}

} // namespace cbm
