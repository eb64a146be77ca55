#pragma once

#include "linkint/integrator.hpp"
#include "linkint/scenes.hpp"

namespace linkint {

/// Truncated cone over K capped by a scaled bounding chain:
///   trunk  (tau, s) -> tau x(s),  tau in [0, R]
///   cap    -R * Kbar, with boundary(Kbar) = K
/// The cap enters with reversed orientation so trunk + cap is a cycle.
struct ConeTruncation {
    double radius = 1.0;
    ParamSubmanifold trunk;
    ParamSubmanifold cap;
};

/// Builds the truncated cone. Requires R > 1 and a chain whose boundary face
/// (upper end of `boundary_axis`) lies within 1e-4 of K in sampled Hausdorff
/// distance (InvalidSceneError otherwise).
ConeTruncation cone_truncate(const ParamSubmanifold& K, const CapChain& cap, double radius);

/// Euclidean linking integral over (trunk + cap) x L with the two
/// contributions reported separately.
struct ConeLinkingResult {
    IntegralResult total;
    IntegralResult trunk;
    IntegralResult cap;
};
ConeLinkingResult cone_truncated_linking(const ConeTruncation& cone, const ParamSubmanifold& L,
                                         const QuadratureSpec& spec = {});

/// Sampled two-sided Hausdorff distance between two submanifolds.
double sampled_hausdorff(const ParamSubmanifold& A, const ParamSubmanifold& B, int per_axis = 16);

}  // namespace linkint
