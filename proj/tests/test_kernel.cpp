#include <doctest.h>

#include "linkint/checks.hpp"
#include "linkint/kernel.hpp"
#include "linkint/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace linkint;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

Vec gaussian(int N, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Vec v(N);
    for (int i = 0; i < N; ++i) v(i) = g(rng);
    return v;
}

Frame gaussian_frame(int N, int k, std::mt19937_64& rng) {
    Frame f(N, k);
    for (int j = 0; j < k; ++j) f.col(j) = gaussian(N, rng);
    return f;
}

// Composite Simpson rule, independent of the Gauss-Legendre path.
double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

}  // namespace

TEST_CASE("sphere volumes") {
    CHECK(sphere_volume(0) == Approx(2.0));
    CHECK(sphere_volume(1) == Approx(2.0 * kPi).epsilon(1e-15));
    CHECK(sphere_volume(2) == Approx(4.0 * kPi).epsilon(1e-15));
    CHECK(sphere_volume(3) == Approx(2.0 * kPi * kPi).epsilon(1e-15));
    // vol S^5 = 2 pi^3 / Gamma(3) with Gamma(3) = 2 * Gamma(2) = 2.
    CHECK(sphere_volume(5) == Approx(kPi * kPi * kPi).epsilon(1e-14));
    // vol S^{n+2} = 2 pi vol S^n / (n + 1)
    for (int n = 0; n < 12; ++n)
        CHECK(sphere_volume(n + 2) == Approx(2.0 * kPi * sphere_volume(n) / (n + 1)).epsilon(1e-14));
    CHECK_THROWS_AS(sphere_volume(-1), std::domain_error);
}

TEST_CASE("angles") {
    CHECK(angle(make_vec({1, 0, 0}), make_vec({0, 1, 0})) == Approx(kPi / 2));
    CHECK(angle(make_vec({2, 0, 0, 0}), make_vec({-3, 0, 0, 0})) == Approx(kPi));
    CHECK(angle(make_vec({1, 1, 0}), make_vec({1, 0, 0})) == Approx(kPi / 4));
    CHECK(angle(make_vec({1e8, 1e-8}), make_vec({1e8, 1e-8})) == 0.0);
    CHECK_THROWS_AS(angle(make_vec({0, 0}), make_vec({1, 0})), std::domain_error);
}

TEST_CASE("omega special values") {
    CHECK(omega(1, 1, kPi / 2) == Approx(0.5).epsilon(1e-15));
    CHECK(omega_quadrature(1, 1, kPi / 2) == Approx(0.5).epsilon(1e-14));
    for (int k = 0; k <= 4; ++k)
        for (int l = 0; l <= 4; ++l) CHECK(omega(k, l, kPi) == 0.0);
    for (double a : {0.0, 0.3, 1.7, 3.0}) CHECK(omega(0, 0, a) == Approx(kPi - a).epsilon(1e-14));
    CHECK_THROWS_AS(omega(1, 2, -0.1), std::domain_error);
    CHECK_THROWS_AS(omega(1, 2, 4.0), std::domain_error);
}

TEST_CASE("omega at pi/2 equals the sphere-volume ratio") {
    for (int k = 0; k <= 5; ++k)
        for (int l = 0; l <= 5; ++l)
            CHECK(omega(k, l, kPi / 2) ==
                  Approx(sphere_volume(k + l + 1) / (sphere_volume(k) * sphere_volume(l))).epsilon(1e-12));
}

TEST_CASE("omega matches an independent Simpson rule") {
    for (int k = 0; k <= 3; ++k)
        for (int l = 0; l <= 3; ++l)
            for (double a : {0.05, 1.0, 2.5}) {
                const double ref = simpson(
                    [&](double t) { return std::pow(std::sin(t - a), k) * std::pow(std::sin(t), l); }, a, kPi,
                    4000);
                CHECK(omega(k, l, a) == Approx(ref).epsilon(1e-11));
            }
}

TEST_CASE("omega is positive below pi and the closed form agrees on a fine grid") {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double a = kPi * i / 999.0;
        worst = std::max(worst, std::abs(omega_quadrature(1, 1, a) - omega_11_closed_form(a)));
    }
    CHECK(worst < 1e-10);
    for (int k = 0; k <= 3; ++k)
        for (int l = 0; l <= 3; ++l)
            for (double a : {0.0, 1.0, 3.0, 3.14}) CHECK(omega(k, l, a) > 0.0);
}

TEST_CASE("euclidean bracket") {
    Frame fk(3, 1), fl(3, 1);
    fk << 0, 1, 0;
    fl << 0, 0, 1;
    CHECK(det_form_euclidean(make_vec({1, 0, 0}), make_vec({0, 0, 0}), fk, fl) == Approx(1.0));
    CHECK(det_form_euclidean(make_vec({1, 0, 0}), make_vec({0, 0, 0}), Frame::Zero(3, 1), fl) == 0.0);
    CHECK_THROWS_AS(det_form_euclidean(make_vec({1, 0, 0, 0}), make_vec({0, 0, 0, 0}), Frame::Zero(4, 1),
                                       Frame::Zero(4, 1)),
                    DimensionError);

    std::mt19937_64 rng(11);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const Eigen::Vector3d x = gaussian(3, rng), y = gaussian(3, rng), a = gaussian(3, rng), b = gaussian(3, rng);
        const double triple = (x - y).dot(a.cross(b));
        worst = std::max(worst, std::abs(det_form_euclidean(x, y, Frame(a), Frame(b)) - triple));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("cone bracket") {
    for (double s : {0.0, 0.4, 2.0}) {
        for (double t : {-3.0, 0.0, 5.0}) {
            const Vec x = make_vec({std::cos(s), std::sin(s), 0, 0});
            Frame dx(4, 1), dy(4, 1);
            dx << -std::sin(s), std::cos(s), 0, 0;
            dy << 0, 0, 0, 1;
            CHECK(det_form_cone(x, dx, make_vec({0, 0, 1, t}), dy) == Approx(1.0).epsilon(1e-15));
        }
    }
    std::mt19937_64 rng(3);
    const Vec x = gaussian(5, rng);
    CHECK(std::abs(det_form_cone(x, gaussian_frame(5, 1, rng), x, gaussian_frame(5, 2, rng))) < 1e-12);
}

TEST_CASE("great-sphere cone bracket is the product of the sphere densities") {
    // K = S^1 in coordinates 0-1 (angle s), L = S^2 in coordinates 2-4 (angles a, b).
    // Integrating [x, dx, y, dy] gives vol S^1 * vol S^2.
    const auto& g = gauss_legendre(24);
    double total = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const double s = kPi * (1.0 + g.nodes[i]);
        for (std::size_t j = 0; j < g.nodes.size(); ++j) {
            const double a = 0.5 * kPi * (1.0 + g.nodes[j]);
            for (std::size_t m = 0; m < g.nodes.size(); ++m) {
                const double b = kPi * (1.0 + g.nodes[m]);
                const Vec x = make_vec({std::cos(s), std::sin(s), 0, 0, 0});
                Frame dx(5, 1);
                dx << -std::sin(s), std::cos(s), 0, 0, 0;
                const Vec y = make_vec({0, 0, std::cos(a), std::sin(a) * std::cos(b), std::sin(a) * std::sin(b)});
                Frame dy(5, 2);
                dy.col(0) << 0, 0, -std::sin(a), std::cos(a) * std::cos(b), std::cos(a) * std::sin(b);
                dy.col(1) << 0, 0, 0, -std::sin(a) * std::sin(b), std::sin(a) * std::cos(b);
                total += g.weights[i] * kPi * g.weights[j] * 0.5 * kPi * g.weights[m] * kPi *
                         det_form_cone(x, dx, y, dy);
            }
        }
    }
    CHECK(total == Approx(sphere_volume(1) * sphere_volume(2)).epsilon(1e-12));
}

TEST_CASE("brackets are alternating under row swaps") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const Vec x = gaussian(5, rng), y = gaussian(5, rng);
        Frame fk = gaussian_frame(5, 2, rng), fl = gaussian_frame(5, 2, rng);
        const double e = det_form_euclidean(x, y, fk, fl);
        Frame swapped = fk;
        swapped.col(0).swap(swapped.col(1));
        CHECK(det_form_euclidean(x, y, swapped, fl) == Approx(-e).epsilon(1e-12));
        const Frame gk = gaussian_frame(5, 1, rng), gl = gaussian_frame(5, 2, rng);
        const double c = det_form_cone(x, gk, y, gl);
        Frame gs = gl;
        gs.col(0).swap(gs.col(1));
        CHECK(det_form_cone(x, gk, y, gs) == Approx(-c).epsilon(1e-12));
        // Linear in each row.
        CHECK(det_form_cone(2.5 * x, gk, y, gl) == Approx(2.5 * c).epsilon(1e-12));
    }
}

TEST_CASE("determinant fast paths agree with LU") {
    std::mt19937_64 rng(9);
    for (int N = 1; N <= 7; ++N) {
        SquareMat m(N, N);
        for (int j = 0; j < N; ++j) m.col(j) = gaussian(N, rng);
        CHECK(determinant(m) == Approx(Eigen::PartialPivLU<SquareMat>(m).determinant()).epsilon(1e-12));
    }
}

TEST_CASE("rotation invariance of the kernel ingredients") {
    std::mt19937_64 rng(17);
    for (int N = 3; N <= 6; ++N) {
        const SquareMat h = random_rotation(N, rng);
        CHECK(h.determinant() == Approx(1.0));
        CHECK((h.transpose() * h - SquareMat::Identity(N, N)).norm() < 1e-13);
        const Vec x = gaussian(N, rng), y = gaussian(N, rng);
        const Frame fk = gaussian_frame(N, 1, rng), fl = gaussian_frame(N, N - 2, rng);
        const Frame ck = gaussian_frame(N, 1, rng), cl = gaussian_frame(N, N - 3, rng);
        CHECK(std::abs(angle(h * x, h * y) - angle(x, y)) < 1e-10);
        CHECK(std::abs(det_form_euclidean(h * x, h * y, h * fk, h * fl) - det_form_euclidean(x, y, fk, fl)) < 1e-10);
        CHECK(std::abs(det_form_cone(h * x, h * ck, h * y, h * cl) - det_form_cone(x, ck, y, cl)) < 1e-10);
    }
}

TEST_CASE("ray reduction: orthogonal instance equals 1/8") {
    // int_0^inf tau / (4 tau^2 + 1)^2 dtau = [-1 / (8 (4 tau^2 + 1))]_0^inf = 1/8.
    const auto r = ray_reduction_check(make_vec({2, 0, 0, 0}), make_vec({0, 1, 0, 0}), 1, 1);
    CHECK(std::abs(r.lhs - 0.125) < 1e-10);
    CHECK(std::abs(r.rhs - 0.125) < 1e-10);
}

TEST_CASE("ray reduction: scaling x by lambda scales both sides by lambda^-(k+1)") {
    const Vec x = make_vec({1.0, 0.3, -0.2, 0.5, 0.1}), y = make_vec({-0.4, 1.2, 0.3, 0.0, 0.7});
    const int k = 2, l = 1;
    const auto base = ray_reduction_check(x, y, k, l);
    const double lambda = 3.0;
    const auto scaled = ray_reduction_check(lambda * x, y, k, l);
    CHECK(scaled.lhs == Approx(base.lhs * std::pow(lambda, -(k + 1))).epsilon(1e-11));
    CHECK(scaled.rhs == Approx(base.rhs * std::pow(lambda, -(k + 1))).epsilon(1e-12));
}

TEST_CASE("ray reduction: random instances and guards") {
    const auto report = run_check("ray-reduction", 7, 50);
    CHECK(report.passed);
    CHECK(report.max_deviation < 1e-8);
    CHECK_THROWS_AS(ray_reduction_check(make_vec({1, 0, 0, 0}), make_vec({2, 1e-8, 0, 0}), 1, 1), NearSingularError);
    CHECK_THROWS_AS(ray_reduction_check(make_vec({1, 0, 0}), make_vec({0, 1, 0}), 1, 1), DimensionError);
}

TEST_CASE("Omega at pi/2 and the join volume identity") {
    for (int k = 0; k <= 5; ++k)
        for (int l = 0; l <= 5; ++l) {
            const double trig = simpson(
                [&](double t) { return std::pow(std::cos(t), k) * std::pow(std::sin(t), l); }, 0.0, kPi / 2, 2000);
            CHECK(sphere_volume(k) * sphere_volume(l) * trig ==
                  Approx(sphere_volume(k + l + 1)).epsilon(1e-10));
        }
    CHECK(run_check("fact1", 1, 1).passed);
    CHECK(run_check("omega", 1, 1).passed);
    CHECK(run_check("invariance", 3, 40).passed);
    CHECK_THROWS_AS(run_check("nope", 1, 1), std::invalid_argument);
}

TEST_CASE("quadrature helpers") {
    const auto& g = gauss_legendre(5);
    double wsum = 0.0;
    for (double w : g.weights) wsum += w;
    CHECK(wsum == Approx(2.0).epsilon(1e-15));
    CHECK(integrate_fixed([](double t) { return t * t * t * t; }, 0.0, 1.0, 3) == Approx(0.2).epsilon(1e-15));
    CHECK(integrate_adaptive([](double t) { return 1.0 / std::sqrt(t + 1e-6); }, 0.0, 1.0, 1e-12) ==
          Approx(2.0 * (std::sqrt(1.0 + 1e-6) - std::sqrt(1e-6))).epsilon(1e-11));
    std::vector<double> v(1000, 0.1);
    CHECK(pairwise_sum(v) == Approx(100.0).epsilon(1e-14));
    CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
}
