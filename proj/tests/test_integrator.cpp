#include <doctest.h>

#include "linkint/integrator.hpp"
#include "linkint/kernel.hpp"
#include "linkint/linking.hpp"
#include "linkint/scenes.hpp"

#include <cmath>
#include <numbers>

using namespace linkint;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

QuadratureSpec with_workers(int workers) {
    QuadratureSpec spec;
    spec.workers = workers;
    return spec;
}

}  // namespace

TEST_CASE("unit density over two unit circles gives the product of lengths") {
    const Scene s = builtin_scene("r3_split_unlink");
    const DensityFn arclength = [](const ChartPoint& x, const ChartPoint& y) {
        return Density{x.frame.col(0).norm() * y.frame.col(0).norm()};
    };
    const auto r = integrate_product(s.K, s.L, arclength, {});
    CHECK(std::abs(r.value - 4.0 * kPi * kPi) < 1e-10);
    CHECK(r.error_estimate >= 0.0);
    CHECK(r.residual <= 0.5);
}

TEST_CASE("cone bracket over great circles integrates to vol S^1 vol S^1") {
    const Scene s = builtin_scene("great_spheres", {{"k", 1}, {"l", 1}});
    const DensityFn bracket = [](const ChartPoint& x, const ChartPoint& y) {
        return Density{det_form_cone(x.position, x.frame, y.position, y.frame)};
    };
    const auto r = integrate_product(s.K, s.L, bracket, {});
    CHECK(r.value == Approx(sphere_volume(1) * sphere_volume(1)).epsilon(1e-12));
}

TEST_CASE("doubling base_order on the Hopf scene moves the value by less than 1e-6") {
    const Scene s = builtin_scene("hopf_great_circles");
    QuadratureSpec a, b;
    a.base_order = 16;
    b.base_order = 32;
    CHECK(std::abs(linking_number(s, a).value - linking_number(s, b).value) < 1e-6);
}

TEST_CASE("snap_integer") {
    const auto a = snap_integer(0.99993, 0.1);
    CHECK(a.accepted);
    CHECK(a.value == 1);
    const auto b = snap_integer(0.4, 0.1);
    CHECK_FALSE(b.accepted);
    CHECK(b.residual == Approx(0.4));
    const auto c = snap_integer(-2.0000004, 0.001);
    CHECK(c.accepted);
    CHECK(c.value == -2);
    CHECK_THROWS_AS(snap_integer(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(snap_integer(1.0, 0.5), std::invalid_argument);
}

TEST_CASE("quadrature settings validation") {
    QuadratureSpec s;
    s.base_order = 1;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = {};
    s.refine_threshold = 0.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = {};
    s.singular_guard = -1.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    CHECK_NOTHROW(QuadratureSpec{}.validate());
}

TEST_CASE("bit-identical values across worker counts") {
    for (const char* name : {"r3_hopf_circles", "s2xr_equator_poles", "hopf_great_circles"}) {
        CAPTURE(name);
        const Scene s = builtin_scene(name, {});
        const double v1 = linking_number(s, with_workers(1)).value;
        const double v3 = linking_number(s, with_workers(3)).value;
        const double v8 = linking_number(s, with_workers(8)).value;
        CHECK(v1 == v3);
        CHECK(v1 == v8);
    }
    // A refining scene exercises multi-level reduction.
    const Scene close = builtin_scene("r3_hopf_circles", {{"offset", 1.95}});
    const auto r1 = linking_number(close, with_workers(1));
    const auto r5 = linking_number(close, with_workers(5));
    CHECK(r1.deepest_level > 0);
    CHECK(r1.value == r5.value);
    CHECK(r1.error_estimate == r5.error_estimate);
}

TEST_CASE("chart order does not change the value") {
    const Scene s = builtin_scene("s2xr_equator_poles");
    std::vector<Chart> swapped(s.L.charts().rbegin(), s.L.charts().rend());
    const ParamSubmanifold L2(std::move(swapped));
    const double a = linking_number(s, {}).value;
    const double b = linking_visible(s.K, L2, {}).value;
    CHECK(std::abs(a - b) < 1e-12);
}

TEST_CASE("error estimate does not grow with the allowed depth") {
    for (double offset : {1.0, 1.9, 1.97}) {
        CAPTURE(offset);
        const Scene s = builtin_scene("r3_hopf_circles", {{"offset", offset}});
        double previous = std::numeric_limits<double>::infinity();
        for (int depth = 0; depth <= 5; ++depth) {
            QuadratureSpec spec;
            spec.max_subdivision_depth = depth;
            const auto r = linking_number(s, spec);
            CHECK(r.error_estimate <= previous);
            previous = r.error_estimate;
        }
    }
}

TEST_CASE("accuracy warning when the depth budget is exhausted") {
    const Scene s = builtin_scene("r3_hopf_circles", {{"offset", 1.97}});
    QuadratureSpec spec;
    spec.base_order = 4;
    spec.max_subdivision_depth = 0;
    CHECK(linking_number(s, spec).accuracy_warning);
    CHECK_FALSE(linking_number(s, {}).accuracy_warning);
}

TEST_CASE("near-singular nodes raise with the parameter location") {
    const Scene s = builtin_scene("r3_hopf_circles");
    // Every point of L lies at distance exactly 1 from K.
    QuadratureSpec spec;
    spec.singular_guard = 1.2;
    spec.max_subdivision_depth = 1;
    try {
        integrate_product(s.K, s.L, euclidean_density(1, 1), spec);
        FAIL("expected NearSingularError");
    } catch (const NearSingularError& e) {
        CHECK(e.s().size() == 1);
        CHECK(e.t().size() == 1);
        CHECK(e.proximity() < 1.2);
    }
}
