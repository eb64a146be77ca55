#include "linkint/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

namespace linkint {

namespace {

using V3 = Eigen::Vector3d;
using V2 = Eigen::Vector2d;

double cross2(const V2& a, const V2& b) { return a.x() * b.y() - a.y() * b.x(); }

double segment_distance(const V3& p0, const V3& p1, const V3& q0, const V3& q1) {
    const V3 d1 = p1 - p0, d2 = q1 - q0, r = p0 - q0;
    const double a = d1.squaredNorm(), e = d2.squaredNorm(), f = d2.dot(r);
    double s = 0.0, t = 0.0;
    if (a <= 1e-300 && e <= 1e-300) return r.norm();
    if (a <= 1e-300) {
        t = std::clamp(f / e, 0.0, 1.0);
    } else {
        const double c = d1.dot(r);
        if (e <= 1e-300) {
            s = std::clamp(-c / a, 0.0, 1.0);
        } else {
            const double b = d1.dot(d2);
            const double denom = a * e - b * b;
            s = denom > 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
            t = (b * s + f) / e;
            if (t < 0.0) {
                t = 0.0;
                s = std::clamp(-c / a, 0.0, 1.0);
            } else if (t > 1.0) {
                t = 1.0;
                s = std::clamp((b - c) / a, 0.0, 1.0);
            }
        }
    }
    return ((p0 + s * d1) - (q0 + t * d2)).norm();
}

}  // namespace

int crossing_count_linking(const PolyLink& link, const Eigen::Vector3d& direction) {
    if (link.compK.size() < 3 || link.compL.size() < 3)
        throw InvalidSceneError("polygon components need at least 3 vertices");
    const double dn = direction.norm();
    if (!(dn > 0.0)) throw NonGenericDirection("zero projection direction");
    const V3 d = direction / dn;
    V3 e1 = d.unitOrthogonal();
    V3 e2 = d.cross(e1);
    auto project = [&](const V3& p) { return V2(p.dot(e1), p.dot(e2)); };

    constexpr double kEps = 1e-9;
    const std::size_t nk = link.compK.size(), nl = link.compL.size();
    int total = 0;
    for (std::size_t i = 0; i < nk; ++i) {
        const V3& a0 = link.compK[i];
        const V3& a1 = link.compK[(i + 1) % nk];
        const V2 p = project(a0), r = project(a1) - p;
        for (std::size_t j = 0; j < nl; ++j) {
            const V3& b0 = link.compL[j];
            const V3& b1 = link.compL[(j + 1) % nl];
            const V2 q = project(b0), s = project(b1) - q;
            if (r.norm() <= kEps * (a1 - a0).norm() || s.norm() <= kEps * (b1 - b0).norm())
                throw NonGenericDirection("an edge projects to a point");
            const double denom = cross2(r, s);
            const double scale = r.norm() * s.norm();
            if (std::abs(denom) <= kEps * scale) {
                // Parallel projected edges: degenerate only if they overlap.
                if (std::abs(cross2(q - p, r)) <= kEps * r.norm() * std::max(1.0, (q - p).norm())) {
                    const double rr = r.squaredNorm();
                    const double t0 = (q - p).dot(r) / rr, t1 = (q + s - p).dot(r) / rr;
                    if (std::max(t0, t1) >= -kEps && std::min(t0, t1) <= 1.0 + kEps)
                        throw NonGenericDirection("projected edges overlap");
                }
                continue;
            }
            const double t = cross2(q - p, s) / denom;
            const double u = cross2(q - p, r) / denom;
            if (t < -kEps || t > 1.0 + kEps || u < -kEps || u > 1.0 + kEps) continue;
            if (t < kEps || t > 1.0 - kEps || u < kEps || u > 1.0 - kEps)
                throw NonGenericDirection("projected crossing at a vertex");
            const V3 xk = a0 + t * (a1 - a0);
            const V3 xl = b0 + u * (b1 - b0);
            const double hk = xk.dot(d), hl = xl.dot(d);
            if (std::abs(hk - hl) <= kEps) throw NonGenericDirection("components meet along the direction");
            if (hk < hl) continue;
            const double orient = (a1 - a0).cross(b1 - b0).dot(d);
            total += orient > 0.0 ? 1 : -1;
        }
    }
    return total;
}

int oracle_linking_number(const PolyLink& link, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    for (int attempt = 0; attempt < 50; ++attempt) {
        const V3 d(g(rng), g(rng), g(rng));
        try {
            return crossing_count_linking(link, d);
        } catch (const NonGenericDirection&) {
        }
    }
    throw NonGenericDirection("no generic projection direction found in 50 attempts");
}

double min_component_distance(const PolyLink& link) {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t nk = link.compK.size(), nl = link.compL.size();
    for (std::size_t i = 0; i < nk; ++i)
        for (std::size_t j = 0; j < nl; ++j)
            best = std::min(best, segment_distance(link.compK[i], link.compK[(i + 1) % nk], link.compL[j],
                                                   link.compL[(j + 1) % nl]));
    return best;
}

namespace {

std::vector<V3> sample_curve(const ParamSubmanifold& M, int segments, const char* which) {
    if (M.dim() != 1 || M.ambient_dim() != 3)
        throw DimensionError(std::string("sample_to_polylink: ") + which + " must be a curve in R^3");
    if (M.multiplicity() != 1)
        throw InvalidSceneError(std::string("sample_to_polylink: ") + which + " has multiplicity != 1");
    const int orientation = M.charts().front().orientation();
    for (const auto& c : M.charts()) {
        if (c.orientation() != orientation)
            throw InvalidSceneError(std::string("sample_to_polylink: ") + which + " mixes chart orientations");
        if (!c.box()[0].finite())
            throw InvalidSceneError(std::string("sample_to_polylink: ") + which + " has an unbounded chart");
    }
    const auto nc = static_cast<int>(M.charts().size());
    const int per_chart = std::max(1, (segments + nc - 1) / nc);
    std::vector<V3> out;
    for (const auto& c : M.charts()) {
        const Interval iv = c.box()[0];
        for (int i = 0; i < per_chart; ++i) {
            const double s = iv.lo + iv.length() * i / per_chart;
            const Vec p = c.position_at(std::span<const double>(&s, 1));
            out.emplace_back(p(0), p(1), p(2));
        }
    }
    if (orientation < 0) std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace

PolyLink sample_to_polylink(const ParamSubmanifold& K, const ParamSubmanifold& L, int segments) {
    if (segments < 3) throw InvalidSceneError("sample_to_polylink: need at least 3 segments");
    PolyLink link{sample_curve(K, segments, "K"), sample_curve(L, segments, "L")};
    const double gap = min_component_distance(link);
    if (gap < 1e-6)
        throw InvalidSceneError("sample_to_polylink: polygons " + std::to_string(gap) +
                                " apart; use more segments");
    return link;
}

int signed_count_n1(const ParamSubmanifold& K, const ParamSubmanifold& L) {
    struct Point {
        double angle;
        int sign;
    };
    auto points = [](const ParamSubmanifold& M, const char* which) {
        if (M.dim() != 0 || M.ambient_dim() != 2)
            throw DimensionError(std::string("signed_count_n1: ") + which + " must be points in R^2");
        std::vector<Point> out;
        int sum = 0;
        for (const auto& c : M.charts()) {
            const Vec p = c.position_at({});
            if (p.norm() == 0.0) throw InvalidSceneError("signed_count_n1: point at the origin");
            double a = std::atan2(p(1), p(0));
            if (a < 0.0) a += 2.0 * std::numbers::pi;
            const int sign = c.orientation() * M.multiplicity();
            out.push_back({a, sign});
            sum += sign;
        }
        if (out.size() != 2 || sum != 0)
            throw InvalidSceneError(std::string("signed_count_n1: ") + which +
                                    " must be two points with signs summing to zero");
        return out;
    };
    const auto k = points(K, "K");
    const auto l = points(L, "L");
    const double start = l[0].sign < 0 ? l[0].angle : l[1].angle;
    const double end = l[0].sign < 0 ? l[1].angle : l[0].angle;
    const double span = std::fmod(end - start + 4.0 * std::numbers::pi, 2.0 * std::numbers::pi);
    int count = 0;
    for (const auto& p : k) {
        const double offset = std::fmod(p.angle - start + 4.0 * std::numbers::pi, 2.0 * std::numbers::pi);
        if (offset == 0.0 || offset == span) throw InvalidSceneError("signed_count_n1: K meets L");
        for (const auto& q : l)
            if (std::abs(p.angle - q.angle) < 1e-12) throw InvalidSceneError("signed_count_n1: K meets L");
        if (offset < span) count += p.sign;
    }
    return count;
}

}  // namespace linkint
