#include <doctest.h>

#include "linkint/ambient.hpp"
#include "linkint/linking.hpp"
#include "linkint/polyline.hpp"
#include "linkint/scenes.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

using namespace linkint;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

Chart circle_chart(bool analytic) {
    Chart::MapFn map = [](std::span<const double> s) { return make_vec({std::cos(s[0]), std::sin(s[0]), 0.0}); };
    Chart::JacobianFn jac;
    if (analytic) {
        jac = [](std::span<const double> s) {
            Frame f(3, 1);
            f << -std::sin(s[0]), std::cos(s[0]), 0.0;
            return f;
        };
    }
    return Chart("circle", 3, {{0.0, 2.0 * kPi}}, map, jac);
}

}  // namespace

TEST_CASE("circle chart evaluates position and tangent") {
    const Chart c = circle_chart(true);
    const double s = 0.0;
    const ChartPoint p = c.evaluate(std::span<const double>(&s, 1));
    CHECK(p.position.isApprox(make_vec({1, 0, 0})));
    CHECK(p.frame.col(0).isApprox(Eigen::Vector3d(0, 1, 0)));
}

TEST_CASE("pole line at t = 2 through the tan substitution") {
    const Scene s = builtin_scene("s2xr_equator_poles");
    const Chart& north = s.L.charts().front();
    CHECK(north.label() == "L/north");
    const double t = 2.0;
    CHECK((north.position_at(std::span<const double>(&t, 1)) - make_vec({0, 0, 1, 2})).norm() == 0.0);
    CHECK((north.frame_at(std::span<const double>(&t, 1)).col(0) - Eigen::Vector4d(0, 0, 0, 1)).norm() == 0.0);

    // In compact coordinates u = atan(t) the frame carries sec^2(u).
    const double u = std::atan(2.0);
    const ChartPoint p = north.evaluate(std::span<const double>(&u, 1));
    CHECK(p.position(3) == Approx(2.0).epsilon(1e-14));
    CHECK(p.params(0) == Approx(2.0).epsilon(1e-14));
    CHECK(p.frame(3, 0) == Approx(5.0).epsilon(1e-13));
    const auto box = north.compact_box();
    CHECK(box[0].lo == Approx(-kPi / 2));
    CHECK(box[0].hi == Approx(kPi / 2));
}

TEST_CASE("half-infinite intervals use a shifted tangent") {
    Chart::MapFn map = [](std::span<const double> s) { return make_vec({s[0], 1.0}); };
    const double inf = std::numeric_limits<double>::infinity();
    const Chart up("up", 2, {{3.0, inf}}, map);
    const Chart down("down", 2, {{-inf, -1.0}}, map);
    CHECK(up.compact_box()[0].lo == 0.0);
    CHECK(up.compact_box()[0].hi == Approx(kPi / 2));
    const double u = 0.25 * kPi;
    CHECK(up.to_original(std::span<const double>(&u, 1))(0) == Approx(4.0));
    const double v = -0.25 * kPi;
    CHECK(down.to_original(std::span<const double>(&v, 1))(0) == Approx(-2.0));
}

TEST_CASE("analytic and finite-difference frames agree within 10 h^2") {
    const Chart analytic = circle_chart(true);
    const Chart numeric = circle_chart(false);
    const double s = 0.7;
    const double h = std::cbrt(std::numeric_limits<double>::epsilon()) * std::max(1.0, std::abs(s));
    const Frame a = analytic.frame_at(std::span<const double>(&s, 1));
    const Frame f = numeric.frame_at(std::span<const double>(&s, 1));
    CHECK(!numeric.has_analytic_jacobian());
    CHECK((a - f).cwiseAbs().maxCoeff() < 10.0 * h * h);
    CHECK((analytic.finite_difference_frame(std::span<const double>(&s, 1)) - a).cwiseAbs().maxCoeff() <
          10.0 * h * h);
}

TEST_CASE("rank-deficient frame raises a degenerate-chart error naming the node") {
    Chart::MapFn map = [](std::span<const double> s) { return make_vec({s[0] * s[0], 0.0, 0.0}); };
    const Chart c("cusp", 3, {{-1.0, 1.0}}, map);
    const double s = 0.0;
    CHECK_THROWS_AS(c.evaluate(std::span<const double>(&s, 1)), DegenerateChartError);
    try {
        c.evaluate(std::span<const double>(&s, 1));
    } catch (const DegenerateChartError& e) {
        CHECK(std::string(e.what()).find("cusp") != std::string::npos);
    }
    CHECK(relative_rank(Frame::Zero(3, 0)) == 1.0);
}

TEST_CASE("submanifold validation") {
    const Chart c = circle_chart(true);
    CHECK_THROWS_AS(ParamSubmanifold({c, c}), InvalidSceneError);
    CHECK_THROWS_AS(ParamSubmanifold({c}, 0), InvalidSceneError);
    Chart::MapFn flat = [](std::span<const double> s) { return make_vec({s[0], 0.0}); };
    CHECK_THROWS_AS(ParamSubmanifold({c, Chart("flat", 2, {{0, 1}}, flat)}), DimensionError);
    const ParamSubmanifold m({c}, 3);
    CHECK(m.reversed().charts()[0].orientation() == -1);
    CHECK(m.reversed().multiplicity() == 3);
    CHECK(m.scaled(2.0).sample(4)[0].norm() == Approx(2.0));
}

TEST_CASE("visibility of the unit sphere and of S^2 x R") {
    const auto sphere = visibility_check(RoundSphere(3), 500, 1);
    CHECK(sphere.visible);
    CHECK(sphere.rays_checked >= 500);
    const auto cyl = visibility_check(SphereCylinder(2, 1), 2000, 3);
    CHECK(cyl.visible);
}

TEST_CASE("torus of revolution is not visible, witnessed by a double crossing in the xy-plane") {
    // Along (1, 0, 0) the torus equation reduces to (|t| - 2)^2 = 0.25.
    const double roots[] = {2.0 - 0.5, 2.0 + 0.5};
    const auto torus = make_torus(2.0, 0.5);
    const auto hits = torus->ray_hits(make_vec({1, 0, 0}));
    REQUIRE(hits.size() == 2);
    CHECK(hits[0].t == Approx(roots[0]).epsilon(1e-10));
    CHECK(hits[1].t == Approx(roots[1]).epsilon(1e-10));
    CHECK(hits[0].transversal);

    const auto report = visibility_check(*torus, 200, 5);
    CHECK_FALSE(report.visible);
    REQUIRE(report.witness.has_value());
    CHECK(std::abs((*report.witness)(2)) < 1e-12);
    CHECK(report.witness_hits.size() == 2);
}

TEST_CASE("tangential ray contact is reported") {
    // The diagonal y = x touches the parabola y = x^2 + 1/4 at x = 1/2.
    ImplicitSurface parabola(
        "parabola", 2, [](const Vec& p) { return p(1) - p(0) * p(0) - 0.25; },
        [](const Vec& p) { return make_vec({-2.0 * p(0), 1.0}); }, 10.0);
    const auto hits = parabola.ray_hits(make_vec({1, 1}));
    REQUIRE(hits.size() == 1);
    CHECK_FALSE(hits[0].transversal);
    CHECK(hits[0].t == Approx(0.5 * std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("surface through the origin is rejected") {
    ImplicitSurface bad(
        "plane", 2, [](const Vec& p) { return p(0); }, [](const Vec&) { return make_vec({1, 0}); }, 5.0);
    CHECK_THROWS_AS(visibility_check(bad, 10, 1), InvalidSurfaceError);
}

TEST_CASE("built-in scene shapes") {
    const Scene gs = builtin_scene("great_spheres", {{"k", 1}, {"l", 2}});
    CHECK(gs.K.dim() == 1);
    CHECK(gs.L.dim() == 2);
    CHECK(gs.K.ambient_dim() == 5);
    CHECK(gs.ambient.kind == AmbientKind::Sphere);
    CHECK(gs.ambient.dim == 4);
    for (const auto& p : gs.K.sample(6)) {
        CHECK(p.norm() == Approx(1.0));
        CHECK(p.tail(3).norm() < 1e-15);
    }
    for (const auto& p : gs.L.sample(6)) {
        CHECK(p.norm() == Approx(1.0));
        CHECK(p.head(2).norm() < 1e-15);
    }

    const Scene s2 = builtin_scene("s2xr_equator_poles");
    CHECK(s2.ambient.kind == AmbientKind::Visible);
    CHECK(s2.ambient.dim == 3);
    CHECK(s2.L.charts()[1].orientation() == -1);
    for (const auto& p : s2.K.sample(8)) CHECK(std::abs(p(2)) + std::abs(p(3)) < 1e-15);

    const Scene split = builtin_scene("r3_split_unlink");
    CHECK(split.ambient.kind == AmbientKind::Euclidean);
    CHECK((split.L.sample(3)[0] - split.K.sample(3)[0])(2) == Approx(10.0));

    CHECK_THROWS_AS(builtin_scene("no_such_scene"), InvalidSceneError);
    CHECK_THROWS_AS(builtin_scene("hopf_great_circles", {{"psi", 1.0}}), InvalidSceneError);
    CHECK_THROWS_AS(builtin_scene("great_spheres", {{"k", 8}, {"l", 8}}), DimensionError);
}

TEST_CASE("dimension bookkeeping of ambient spaces") {
    CHECK_NOTHROW(AmbientSpace::sphere(3).check_dimensions(1, 1));
    CHECK_THROWS_AS(AmbientSpace::sphere(4).check_dimensions(1, 1), DimensionError);
    CHECK_NOTHROW(AmbientSpace::euclidean(3).check_dimensions(1, 1));
    CHECK_THROWS_AS(AmbientSpace::euclidean(4).check_dimensions(1, 1), DimensionError);
    CHECK(AmbientSpace::visible(std::make_shared<SphereCylinder>(2, 1)).embedding_dim() == 4);
}

TEST_CASE("built-in scenes are disjoint and visible-ambient pairs never align with the origin") {
    for (const auto& name : builtin_scene_names()) {
        CAPTURE(name);
        const Scene s = builtin_scene(name);
        CHECK(min_separation(s.K, s.L, SeparationMetric::Distance).value > 1e-6);
        if (s.ambient.kind != AmbientKind::Euclidean)
            CHECK(min_separation(s.K, s.L, SeparationMetric::Angle).value > 1e-8);
    }
}

TEST_CASE("frames are full rank on every sample of every built-in scene") {
    for (const auto& name : builtin_scene_names()) {
        const Scene s = builtin_scene(name);
        for (const auto* M : {&s.K, &s.L})
            for (const auto& c : M->charts())
                for (const auto& p : sample_chart(c, 9)) CHECK_NOTHROW(c.evaluate(p.u));
    }
}

TEST_CASE("hemisphere caps bound the great sphere") {
    const Scene s = builtin_scene("hopf_great_circles");
    REQUIRE(s.cap_upper.has_value());
    for (const auto& c : s.cap_upper->chain.charts()) {
        const Chart face = face_chart(c, s.cap_upper->boundary_axis, true);
        for (const auto& p : sample_chart(face, 16)) CHECK(distance_to_manifold(p.position, s.K) < 1e-9);
    }
    for (const auto& p : s.cap_upper->chain.sample(5)) CHECK(p(2) >= 0.0);
    for (const auto& p : s.cap_lower->chain.sample(5)) CHECK(p(2) <= 0.0);
}

TEST_CASE("polyline CSV round trip") {
    std::istringstream in("x,y,z\n1,0,0\n0,1,0\n-1,0,0\n0,-1,0\n1,0,0\n");
    const auto v = read_polyline_csv(in);
    REQUIRE(v.size() == 4);
    const ParamSubmanifold m = polyline_curve("P", v);
    CHECK(m.charts().size() == 4);
    CHECK(m.charts()[0].label() < m.charts()[3].label());
    const double s = 0.5;
    CHECK((m.charts()[3].position_at(std::span<const double>(&s, 1)) - make_vec({0.5, -0.5, 0})).norm() < 1e-15);

    std::istringstream bad("1,0,0\n0,1\n");
    CHECK_THROWS_AS(read_polyline_csv(bad), InvalidSceneError);
    std::istringstream text("1,0,0\n0,abc,0\n");
    try {
        read_polyline_csv(text);
        FAIL("expected an error");
    } catch (const InvalidSceneError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}
