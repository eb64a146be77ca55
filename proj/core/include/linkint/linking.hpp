#pragma once

#include "linkint/integrator.hpp"
#include "linkint/scenes.hpp"

#include <cstdint>
#include <vector>

namespace linkint {

/// Pointwise integrands of the three linking formulas. k, l are the
/// dimensions of K and L.
///
/// Euclidean R^N (k + l = N - 1):
///   (-1)^{k+1} / vol S^{N-1} * [x - y, dx, dy] / |x - y|^N,   proximity |x - y|
/// Round sphere S^n (k + l = n - 1):
///   1 / vol S^n * Omega_{k,l}(alpha) / sin^n(alpha) * [x, dx, y, dy],   proximity alpha
/// Visible hypersurface M^n (k + l = n - 1):
///   1 / vol S^n * Omega_{k,l}(alpha) / (|x|^{k+1} |y|^{l+1} sin^n(alpha)) * [x, dx, y, dy]
DensityFn euclidean_density(int k, int l);
DensityFn sphere_density(int k, int l);
DensityFn visible_density(int k, int l);

/// Linking number of disjoint closed K^k, L^l in R^N with k + l = N - 1.
IntegralResult linking_euclidean(const ParamSubmanifold& K, const ParamSubmanifold& L,
                                 const QuadratureSpec& spec = {});

/// Linking number of disjoint K^k, L^l in the unit sphere S^n, k + l = n - 1.
/// Every node must lie on the unit sphere within 1e-8 (InvalidSceneError).
IntegralResult linking_sphere(const ParamSubmanifold& K, const ParamSubmanifold& L,
                              const QuadratureSpec& spec = {});

/// Linking number of disjoint, null-homologous K^k, L^l in a visible
/// hypersurface M^n of R^{n+1}, k + l = n - 1. Null-homology is the caller's
/// responsibility.
IntegralResult linking_visible(const ParamSubmanifold& K, const ParamSubmanifold& L,
                               const QuadratureSpec& spec = {});

/// Dispatches on the ambient kind after checking dimensions.
IntegralResult linking_in(const AmbientSpace& ambient, const ParamSubmanifold& K,
                          const ParamSubmanifold& L, const QuadratureSpec& spec = {});
IntegralResult linking_number(const Scene& scene, const QuadratureSpec& spec = {});

/// Smallest distance (or angle) between K and L found by grid sampling
/// followed by compass search, with its parameter location.
struct Separation {
    double value = 0.0;
    std::vector<double> s;  ///< original parameters on K
    std::vector<double> t;  ///< original parameters on L
};
enum class SeparationMetric { Distance, Angle };
Separation min_separation(const ParamSubmanifold& K, const ParamSubmanifold& L,
                          SeparationMetric metric, std::size_t budget = 200000);

/// Distance from a point to a submanifold (sampling plus compass search).
double distance_to_manifold(const Vec& point, const ParamSubmanifold& M, int per_axis = 32);

/// Largest relative deviation between the pulled-back sphere volume form
/// det(f, df/ds, df/dt) of f = (x - y)/|x - y| (finite differences) and
/// (-1)^l [x - y, dx, dy] / |x - y|^N, over `samples` seeded random points of
/// K x L. Deviations are measured against the Hadamard bound
/// |x - y|^{1-N} prod |dx/ds_i| prod |dy/dt_j| of the right-hand side.
double pullback_check(const ParamSubmanifold& K, const ParamSubmanifold& L, int samples,
                      std::uint64_t seed);

}  // namespace linkint
