#include "linkint/cone.hpp"

#include "linkint/linking.hpp"

#include <algorithm>
#include <cmath>

namespace linkint {

namespace {

Chart trunk_chart(const Chart& base, double radius) {
    const int N = base.ambient_dim();
    const int k = base.domain_dim();
    std::vector<Interval> box{{0.0, radius}};
    for (const auto& iv : base.box()) box.push_back(iv);
    Chart::MapFn map = [base](std::span<const double> p) -> Vec {
        return p[0] * base.position_at(p.subspan(1));
    };
    Chart::JacobianFn jac = [base, N, k](std::span<const double> p) -> Frame {
        Frame f(N, k + 1);
        f.col(0) = base.position_at(p.subspan(1));
        if (k > 0) f.rightCols(k) = p[0] * base.frame_at(p.subspan(1));
        return f;
    };
    return Chart("trunk/" + base.label(), N, std::move(box), std::move(map), std::move(jac),
                 base.orientation());
}

}  // namespace

double sampled_hausdorff(const ParamSubmanifold& A, const ParamSubmanifold& B, int per_axis) {
    double worst = 0.0;
    for (const auto& p : A.sample(per_axis)) worst = std::max(worst, distance_to_manifold(p, B));
    for (const auto& p : B.sample(per_axis)) worst = std::max(worst, distance_to_manifold(p, A));
    return worst;
}

ConeTruncation cone_truncate(const ParamSubmanifold& K, const CapChain& cap, double radius) {
    if (!(radius > 1.0) || !std::isfinite(radius))
        throw InvalidSceneError("cone_truncate: radius must be a finite number > 1");
    if (cap.chain.ambient_dim() != K.ambient_dim() || cap.chain.dim() != K.dim() + 1)
        throw DimensionError("cone_truncate: cap must be a (k+1)-chain in the ambient space of K");

    std::vector<Chart> faces;
    for (const auto& c : cap.chain.charts()) faces.push_back(face_chart(c, cap.boundary_axis, true));
    const double mismatch = sampled_hausdorff(ParamSubmanifold(std::move(faces)), K);
    if (mismatch > 1e-4)
        throw InvalidSceneError("cone_truncate: cap boundary is " + std::to_string(mismatch) +
                                " away from K (limit 1e-4)");

    std::vector<Chart> trunk;
    for (const auto& c : K.charts()) trunk.push_back(trunk_chart(c, radius));
    return ConeTruncation{radius, ParamSubmanifold(std::move(trunk), K.multiplicity()),
                          cap.chain.scaled(radius).reversed().with_multiplicity(
                              K.multiplicity() * cap.chain.multiplicity())};
}

ConeLinkingResult cone_truncated_linking(const ConeTruncation& cone, const ParamSubmanifold& L,
                                         const QuadratureSpec& spec) {
    ConeLinkingResult r;
    r.trunk = linking_euclidean(cone.trunk, L, spec);
    r.cap = linking_euclidean(cone.cap, L, spec);
    r.total.value = r.trunk.value + r.cap.value;
    r.total.error_estimate = r.trunk.error_estimate + r.cap.error_estimate;
    r.total.node_count = r.trunk.node_count + r.cap.node_count;
    r.total.wall_time = r.trunk.wall_time + r.cap.wall_time;
    r.total.accuracy_warning = r.trunk.accuracy_warning || r.cap.accuracy_warning;
    r.total.tiles = r.trunk.tiles + r.cap.tiles;
    r.total.deepest_level = std::max(r.trunk.deepest_level, r.cap.deepest_level);
    snap_result(r.total);
    return r;
}

}  // namespace linkint
