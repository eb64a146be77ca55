#include "linkint/scenes.hpp"

#include "linkint/kernel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <set>

namespace linkint {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

/// Unit k-sphere coordinates c_0..c_k at angles a_0..a_{k-1} and their partials.
void sphere_coords(int k, std::span<const double> a, Vec& c, Frame* jac) {
    c.resize(k + 1);
    for (int j = 0; j <= k; ++j) {
        double v = 1.0;
        for (int i = 0; i < j && i < k; ++i) v *= std::sin(a[i]);
        if (j < k) v *= std::cos(a[j]);
        c(j) = v;
    }
    if (!jac) return;
    jac->setZero(k + 1, k);
    for (int m = 0; m < k; ++m) {
        for (int j = 0; j <= k; ++j) {
            if (j < k && m > j) continue;
            double v = 1.0;
            for (int i = 0; i < j && i < k; ++i) v *= (i == m) ? std::cos(a[i]) : std::sin(a[i]);
            if (j < k) v *= (m == j) ? -std::sin(a[j]) : std::cos(a[j]);
            (*jac)(j, m) = v;
        }
    }
}

double param(const SceneParams& params, const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

int int_param(const SceneParams& params, const std::string& key, int fallback) {
    const double v = param(params, key, fallback);
    if (std::floor(v) != v || v < 0 || v > kMaxDim)
        throw InvalidSceneError("parameter '" + key + "' must be a small non-negative integer");
    return static_cast<int>(v);
}

void require_keys(const std::string& scene, const SceneParams& params,
                  std::initializer_list<const char*> allowed) {
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : params)
        if (!ok.count(key))
            throw InvalidSceneError("scene '" + scene + "' has no parameter '" + key + "'");
}

Vec unit(int N, int axis) {
    Vec e = Vec::Zero(N);
    e(axis) = 1.0;
    return e;
}

std::vector<int> range(int from, int to) {
    std::vector<int> out;
    for (int i = from; i < to; ++i) out.push_back(i);
    return out;
}

}  // namespace

const std::vector<std::string>& builtin_scene_names() {
    static const std::vector<std::string> names = {
        "hopf_great_circles", "great_spheres",    "s2xr_equator_poles",
        "r3_hopf_circles",    "r3_split_unlink",  "rn_meridional_spheres",
        "s3_split_circles"};
    return names;
}

Chart round_sphere_chart(const std::string& label, int k, int N, const std::vector<int>& coords,
                         const Vec& center, double radius) {
    if (k < 1) throw DimensionError("round_sphere_chart needs k >= 1");
    if (static_cast<int>(coords.size()) != k + 1 || center.size() != N)
        throw DimensionError("round_sphere_chart: need k + 1 coordinates and a center in R^N");
    for (int c : coords)
        if (c < 0 || c >= N) throw DimensionError("round_sphere_chart: coordinate index out of range");
    if (!(radius > 0.0)) throw InvalidSceneError("round_sphere_chart: radius must be positive");

    std::vector<Interval> box(static_cast<std::size_t>(k), Interval{0.0, kPi});
    box.back() = {0.0, 2.0 * kPi};

    Chart::MapFn map = [k, N, coords, center, radius](std::span<const double> a) -> Vec {
        Vec c;
        sphere_coords(k, a, c, nullptr);
        Vec x = center;
        for (int j = 0; j <= k; ++j) x(coords[j]) += radius * c(j);
        (void)N;
        return x;
    };
    Chart::JacobianFn jac = [k, N, coords, radius](std::span<const double> a) -> Frame {
        Vec c;
        Frame dc;
        sphere_coords(k, a, c, &dc);
        Frame f = Frame::Zero(N, k);
        for (int j = 0; j <= k; ++j) f.row(coords[j]) = radius * dc.row(j);
        return f;
    };

    // Orientation: det(c, dc) at the center of the box, in the sphere's own coordinates.
    std::vector<double> mid;
    for (const auto& iv : box) mid.push_back(0.5 * (iv.lo + iv.hi));
    Vec c;
    Frame dc;
    sphere_coords(k, mid, c, &dc);
    SquareMat m(k + 1, k + 1);
    m.col(0) = c;
    m.rightCols(k) = dc;
    const int orientation = determinant(m) > 0.0 ? 1 : -1;
    return Chart(label, N, std::move(box), std::move(map), std::move(jac), orientation);
}

ParamSubmanifold round_sphere(const std::string& label, int k, int N, const std::vector<int>& coords,
                              const Vec& center, double radius) {
    if (k >= 1) return ParamSubmanifold({round_sphere_chart(label, k, N, coords, center, radius)});
    if (coords.size() != 1 || center.size() != N) throw DimensionError("0-sphere needs one coordinate");
    std::vector<Chart> points;
    for (int sign : {1, -1}) {
        Vec p = center;
        p(coords[0]) += sign * radius;
        points.emplace_back(label + (sign > 0 ? "+" : "-"), N, std::vector<Interval>{},
                            [p](std::span<const double>) { return p; },
                            [N](std::span<const double>) { return Frame(N, 0); }, sign);
    }
    return ParamSubmanifold(std::move(points));
}

CapChain hemisphere_cap(const ParamSubmanifold& great_sphere, int lift_axis, bool upper) {
    const int N = great_sphere.ambient_dim();
    if (lift_axis < 0 || lift_axis >= N) throw DimensionError("hemisphere_cap: lift axis out of range");
    const double sign = upper ? 1.0 : -1.0;
    std::vector<Chart> charts;
    for (const Chart& base : great_sphere.charts()) {
        // The construction needs a unit sphere orthogonal to e_axis.
        for (const auto& sample : sample_chart(base, 3)) {
            if (std::abs(sample.position.norm() - 1.0) > 1e-9 || std::abs(sample.position(lift_axis)) > 1e-9)
                throw InvalidSceneError("hemisphere_cap: '" + base.label() +
                                        "' is not a unit great sphere orthogonal to the lift axis");
        }
        std::vector<Interval> box{{0.0, 0.5 * kPi}};
        for (const auto& iv : base.box()) box.push_back(iv);
        const int k = base.domain_dim();
        Chart::MapFn map = [base, lift_axis, sign](std::span<const double> p) -> Vec {
            Vec z = std::sin(p[0]) * base.position_at(p.subspan(1));
            z(lift_axis) += sign * std::cos(p[0]);
            return z;
        };
        Chart::JacobianFn jac = [base, lift_axis, sign, N, k](std::span<const double> p) -> Frame {
            const Vec x = base.position_at(p.subspan(1));
            Frame f(N, k + 1);
            f.col(0) = std::cos(p[0]) * x;
            f(lift_axis, 0) -= sign * std::sin(p[0]);
            if (k > 0) f.rightCols(k) = std::sin(p[0]) * base.frame_at(p.subspan(1));
            return f;
        };
        charts.emplace_back(base.label() + (upper ? "/cap+" : "/cap-"), N, std::move(box),
                            std::move(map), std::move(jac), base.orientation());
    }
    return CapChain{ParamSubmanifold(std::move(charts)), 0};
}

ParamSubmanifold spherical_small_circle(const std::string& label, const Vec& center, const Vec& u,
                                        const Vec& v, double radius) {
    const auto N = center.size();
    if (u.size() != N || v.size() != N) throw DimensionError("spherical_small_circle: size mismatch");
    const double cr = std::cos(radius), sr = std::sin(radius);
    Chart::MapFn map = [=](std::span<const double> t) -> Vec {
        return cr * center + sr * (std::cos(t[0]) * u + std::sin(t[0]) * v);
    };
    Chart::JacobianFn jac = [=](std::span<const double> t) -> Frame {
        Frame f(N, 1);
        f.col(0) = sr * (-std::sin(t[0]) * u + std::cos(t[0]) * v);
        return f;
    };
    return ParamSubmanifold({Chart(label, static_cast<int>(N), {{0.0, 2.0 * kPi}}, map, jac)});
}

CapChain spherical_disk_cap(const Vec& center, const Vec& u, const Vec& v, double radius) {
    const auto N = center.size();
    Chart::MapFn map = [=](std::span<const double> p) -> Vec {
        return std::cos(p[0]) * center + std::sin(p[0]) * (std::cos(p[1]) * u + std::sin(p[1]) * v);
    };
    Chart::JacobianFn jac = [=](std::span<const double> p) -> Frame {
        const Vec ring = std::cos(p[1]) * u + std::sin(p[1]) * v;
        Frame f(N, 2);
        f.col(0) = -std::sin(p[0]) * center + std::cos(p[0]) * ring;
        f.col(1) = std::sin(p[0]) * (-std::sin(p[1]) * u + std::cos(p[1]) * v);
        return f;
    };
    return CapChain{ParamSubmanifold({Chart("K/cap", static_cast<int>(N), {{0.0, radius}, {0.0, 2.0 * kPi}},
                                            map, jac)}),
                    0};
}

Scene builtin_scene(const std::string& name, const SceneParams& params) {
    if (name == "hopf_great_circles") {
        require_keys(name, params, {"phi"});
        const double phi = param(params, "phi", kPi / 3.0);
        if (!(phi > 0.0 && phi <= 0.5 * kPi))
            throw InvalidSceneError("hopf_great_circles: phi must lie in (0, pi/2]");
        auto K = round_sphere("K", 1, 4, {0, 1}, Vec::Zero(4), 1.0);
        const double c = std::cos(phi), d = std::sin(phi);
        Chart::MapFn map = [c, d](std::span<const double> t) -> Vec {
            const double ct = std::cos(t[0]), st = std::sin(t[0]);
            return make_vec({c * ct, c * st, d * ct, d * st});
        };
        Chart::JacobianFn jac = [c, d](std::span<const double> t) -> Frame {
            const double ct = std::cos(t[0]), st = std::sin(t[0]);
            Frame f(4, 1);
            f << -c * st, c * ct, -d * st, d * ct;
            return f;
        };
        ParamSubmanifold L({Chart("L", 4, {{0.0, 2.0 * kPi}}, map, jac)});
        Scene s{name, K, L, AmbientSpace::sphere(3), std::nullopt, std::nullopt};
        s.cap_upper = hemisphere_cap(K, 2, true);
        s.cap_lower = hemisphere_cap(K, 2, false);
        return s;
    }
    if (name == "great_spheres") {
        require_keys(name, params, {"k", "l"});
        const int k = int_param(params, "k", 1), l = int_param(params, "l", 1);
        const int N = k + l + 2;
        if (N > kMaxDim) throw DimensionError("great_spheres: dimension too large");
        auto K = round_sphere("K", k, N, range(0, k + 1), Vec::Zero(N), 1.0);
        auto L = round_sphere("L", l, N, range(k + 1, N), Vec::Zero(N), 1.0);
        Scene s{name, K, L, AmbientSpace::sphere(k + l + 1), std::nullopt, std::nullopt};
        s.cap_upper = hemisphere_cap(K, k + 1, true);
        s.cap_lower = hemisphere_cap(K, k + 1, false);
        return s;
    }
    if (name == "s2xr_equator_poles") {
        require_keys(name, params, {});
        auto K = round_sphere("K", 1, 4, {0, 1}, Vec::Zero(4), 1.0);
        auto pole = [](double z, const std::string& label, int orientation) {
            Chart::MapFn map = [z](std::span<const double> t) -> Vec { return make_vec({0.0, 0.0, z, t[0]}); };
            Chart::JacobianFn jac = [](std::span<const double>) -> Frame {
                Frame f(4, 1);
                f << 0.0, 0.0, 0.0, 1.0;
                return f;
            };
            return Chart(label, 4, {{-kInf, kInf}}, map, jac, orientation);
        };
        ParamSubmanifold L({pole(1.0, "L/north", 1), pole(-1.0, "L/south", -1)});
        Scene s{name, K, L, AmbientSpace::visible(std::make_shared<SphereCylinder>(2, 1)),
                std::nullopt, std::nullopt};
        s.cap_upper = hemisphere_cap(K, 2, true);
        s.cap_lower = hemisphere_cap(K, 2, false);
        return s;
    }
    if (name == "r3_hopf_circles") {
        require_keys(name, params, {"offset"});
        const double offset = param(params, "offset", 1.0);
        auto K = round_sphere("K", 1, 3, {0, 1}, Vec::Zero(3), 1.0);
        auto L = round_sphere("L", 1, 3, {0, 2}, make_vec({offset, 0.0, 0.0}), 1.0);
        return Scene{name, K, L, AmbientSpace::euclidean(3), std::nullopt, std::nullopt};
    }
    if (name == "r3_split_unlink") {
        require_keys(name, params, {"separation"});
        const double sep = param(params, "separation", 10.0);
        auto K = round_sphere("K", 1, 3, {0, 1}, Vec::Zero(3), 1.0);
        auto L = round_sphere("L", 1, 3, {0, 1}, make_vec({0.0, 0.0, sep}), 1.0);
        return Scene{name, K, L, AmbientSpace::euclidean(3), std::nullopt, std::nullopt};
    }
    if (name == "rn_meridional_spheres") {
        require_keys(name, params, {"k", "l", "radius"});
        const int k = int_param(params, "k", 1), l = int_param(params, "l", 1);
        const double radius = param(params, "radius", 0.5);
        const int N = k + l + 1;
        if (N < 2 || N > kMaxDim) throw DimensionError("rn_meridional_spheres: need 2 <= k + l + 1 <= 16");
        if (!(radius > 0.0 && radius < 1.0))
            throw InvalidSceneError("rn_meridional_spheres: radius must lie in (0, 1)");
        auto K = round_sphere("K", k, N, range(0, k + 1), Vec::Zero(N), 1.0);
        std::vector<int> lc{0};
        for (int i = k + 1; i < N; ++i) lc.push_back(i);
        auto L = round_sphere("L", l, N, lc, unit(N, 0), radius);
        return Scene{name, K, L, AmbientSpace::euclidean(N), std::nullopt, std::nullopt};
    }
    if (name == "s3_split_circles") {
        require_keys(name, params, {"radius"});
        const double radius = param(params, "radius", 0.3);
        if (!(radius > 0.0 && radius < 0.25 * kPi))
            throw InvalidSceneError("s3_split_circles: radius must lie in (0, pi/4)");
        auto K = spherical_small_circle("K", unit(4, 0), unit(4, 1), unit(4, 2), radius);
        auto L = spherical_small_circle("L", unit(4, 3), unit(4, 0), unit(4, 2), radius);
        Scene s{name, K, L, AmbientSpace::sphere(3), std::nullopt, std::nullopt};
        s.cap_upper = spherical_disk_cap(unit(4, 0), unit(4, 1), unit(4, 2), radius);
        return s;
    }
    throw InvalidSceneError("unknown built-in scene '" + name + "'");
}

}  // namespace linkint
