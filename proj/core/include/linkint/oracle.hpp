#pragma once

#include "linkint/submanifold.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace linkint {

/// Two closed polygons in R^3. Orientation follows vertex order; the closing
/// edge from the last vertex back to the first is implicit.
struct PolyLink {
    std::vector<Eigen::Vector3d> compK;
    std::vector<Eigen::Vector3d> compL;
};

/// The projection direction hits a degenerate configuration (parallel
/// projected edges or a crossing at a vertex). Retry with another direction.
class NonGenericDirection : public Error {
public:
    using Error::Error;
};

/// Linking number from the projection along `direction`: the signed count
/// of crossings where compK passes over compL. The over strand is the one
/// with the larger coordinate along `direction`; a crossing counts +1 when
/// (over tangent, under tangent, direction) is right handed.
int crossing_count_linking(const PolyLink& link, const Eigen::Vector3d& direction);

/// crossing_count_linking along seeded random directions, retrying up to
/// 50 times on degenerate projections.
int oracle_linking_number(const PolyLink& link, std::uint64_t seed = 1);

/// Smallest distance between an edge of compK and an edge of compL.
double min_component_distance(const PolyLink& link);

/// Closed polygons through `segments` evenly spaced parameter values of two
/// curves in R^3. Multi-chart curves contribute points chart by chart, in
/// list order. Throws when segments < 3, when a curve has multiplicity other
/// than 1, and when the polygons come closer than 1e-6.
PolyLink sample_to_polylink(const ParamSubmanifold& K, const ParamSubmanifold& L, int segments);

/// Direct count for 0-dimensional K, L on a visible closed curve in R^2: the
/// signed number of points of K on the arc that runs counterclockwise (about
/// the origin) from the negative point of L to its positive point. Each of
/// K, L must be a pair of points with signs summing to zero.
int signed_count_n1(const ParamSubmanifold& K, const ParamSubmanifold& L);

}  // namespace linkint
