#pragma once

#include "cbm/geometry.hpp"

namespace cbm {

enum class EstimateMode { centroid_constrained, extended };

struct EstimatorConfig {
    int n_alpha = 48;
    int n_sigma = 24;
    int n_beta = 48;
    double sigma_max = 6.0; // sigma ranges over [1/sigma_max, sigma_max]
    int refine_iters = 300;
    EstimateMode mode = EstimateMode::centroid_constrained;

    static EstimatorConfig low_budget();
    static EstimatorConfig default_budget();
    static EstimatorConfig high_budget();
};

struct EstimateResult {
    double lambda_hat = 1.0;
    AffineMap best_map; // applied to C
    double inner_scale = 1.0;
    bool verified = false;
};

// Upper bound on the centroid Banach-Mazur distance: searches unit-determinant
// linear maps L = Rot(alpha) diag(sigma, 1/sigma) Rot(beta) (plus a reflected
// copy of C) with both bodies pinned at their centroids.
EstimateResult estimate_cen(const ConvexPolygon& C, const ConvexPolygon& D,
                            const EstimatorConfig& cfg = EstimatorConfig::default_budget());

// Upper bound on the extended Banach-Mazur distance: translations are free;
// the inner placement and outer covering are small support-function LPs.
EstimateResult estimate_extended(const ConvexPolygon& C, const ConvexPolygon& D,
                                 const EstimatorConfig& cfg = EstimatorConfig::default_budget());

struct PentagonTriangleWitness {
    ConvexPolygon pentagon;
    ConvexPolygon triangle;
    ConvexPolygon triangle_star; // ((7 - sqrt 5)/2) * triangle
    double lambda;
    bool verified;
};

// The explicit regular-pentagon / inscribed-triangle configuration with
// common centroid at the origin and ratio (7 - sqrt 5)/2.
PentagonTriangleWitness pentagon_triangle_witness();

} // namespace cbm
