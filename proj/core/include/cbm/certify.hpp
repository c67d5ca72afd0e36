#pragma once

#include <array>
#include <string>
#include <vector>

#include "cbm/geometry.hpp"

namespace cbm {

struct CornerValue {
    double p, r;
    double value;
};

struct EdgeCheck {
    std::string name;
    bool monotone;
};

// Result of a maximization certification run. For the 2D problem argmax
// holds (p, r, 0, 0); for the 4D problem it holds (p, q, r, s).
struct BoundReport {
    double max_value = 0.0;
    std::array<double, 4> argmax{};
    std::vector<CornerValue> corner_table;
    std::vector<std::array<double, 2>> interior_critical_points; // expected empty
    std::vector<std::array<double, 2>> edge_extrema;             // expected empty
    std::vector<EdgeCheck> monotonicity_checks;
    double grid_residual = 0.0;
    bool certified = false;
    std::vector<std::string> failures;
};

// g(p, r) = sqrt(3)(3-2p)(3+r) / ((3-2r)(sqrt(3) + sqrt(3) p)).
double g_value(double p, double r);
// Closed-form partial derivatives of g (validated against finite differences).
double g_partial_p(double p, double r);
double g_partial_r(double p, double r);

// Interior/edges/corners maximization of g over Q = [0, 4/21] x [0, 2/7];
// certifies the maximum 69/17 at (0, 2/7).
BoundReport certify_g_max_on_Q(int grid_n);

// Sampled maximization of f over T x T+ with monotonicity checks in q and s
// and simplex refinement from the best samples.
BoundReport maximize_f_on_domain(long samples, int refine_iters);

} // namespace cbm
