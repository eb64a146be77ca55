#include "linkint/checks.hpp"

#include "linkint/kernel.hpp"
#include "linkint/linking.hpp"
#include "linkint/quadrature.hpp"
#include "linkint/scenes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace linkint {

namespace {

constexpr double kPi = std::numbers::pi;

double rel_dev(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

Vec random_vec(int N, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Vec v(N);
    for (int i = 0; i < N; ++i) v(i) = g(rng);
    return v;
}

Frame random_frame(int N, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Frame f(N, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < N; ++i) f(i, j) = g(rng);
    return f;
}

CheckReport invariance(std::uint64_t seed, int samples) {
    CheckReport r{"invariance", 0.0, 1e-10, false, 0};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick_n(3, 7);
    for (int c = 0; c < samples; ++c) {
        const int N = pick_n(rng);
        std::uniform_int_distribution<int> pick_k(0, N - 2);
        const SquareMat h = random_rotation(N, rng);
        const Vec x = random_vec(N, rng), y = random_vec(N, rng);
        const Vec hx = h * x, hy = h * y;
        double dev = std::abs(angle(hx, hy) - angle(x, y));
        dev = std::max(dev, rel_dev(hx.norm(), x.norm()));
        dev = std::max(dev, rel_dev(hy.norm(), y.norm()));

        const int ke = pick_k(rng), le = N - 1 - ke;
        const Frame fk = random_frame(N, ke, rng), fl = random_frame(N, le, rng);
        dev = std::max(dev, rel_dev(det_form_euclidean(hx, hy, h * fk, h * fl),
                                    det_form_euclidean(x, y, fk, fl)));

        const int kc = std::min(pick_k(rng), N - 2), lc = N - 2 - kc;
        const Frame gk = random_frame(N, kc, rng), gl = random_frame(N, lc, rng);
        dev = std::max(dev, rel_dev(det_form_cone(hx, h * gk, hy, h * gl), det_form_cone(x, gk, y, gl)));
        r.max_deviation = std::max(r.max_deviation, dev);
        ++r.cases;
    }
    return r;
}

CheckReport pullback(std::uint64_t seed, int samples) {
    CheckReport r{"pullback", 0.0, 1e-5, false, 0};
    const Scene curves = builtin_scene("r3_hopf_circles");
    const Scene spheres = builtin_scene("rn_meridional_spheres", {{"k", 1}, {"l", 2}});
    r.max_deviation = std::max(pullback_check(curves.K, curves.L, samples, seed),
                               pullback_check(spheres.K, spheres.L, samples, seed + 1));
    r.cases = 2 * samples;
    return r;
}

CheckReport ray_reduction(std::uint64_t seed, int samples) {
    CheckReport r{"ray-reduction", 0.0, 1e-8, false, 0};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick_sum(0, 4);
    std::uniform_real_distribution<double> scale(0.25, 4.0);
    for (int c = 0; c < samples; ++c) {
        const int total = pick_sum(rng);
        std::uniform_int_distribution<int> pick_k(0, total);
        const int k = pick_k(rng), l = total - k;
        const int N = k + l + 2;
        Vec x, y;
        double a = 0.0;
        do {
            x = random_vec(N, rng);
            y = random_vec(N, rng);
            a = angle(x, y);
        } while (!(a > 0.1 && a < 3.0));
        x *= scale(rng) / x.norm();
        y *= scale(rng) / y.norm();
        const RayReduction rr = ray_reduction_check(x, y, k, l);
        r.max_deviation = std::max(r.max_deviation, std::abs(rr.lhs - rr.rhs) / std::abs(rr.rhs));
        ++r.cases;
    }
    const RayReduction hand = ray_reduction_check(make_vec({2, 0, 0, 0}), make_vec({0, 1, 0, 0}), 1, 1);
    r.max_deviation = std::max({r.max_deviation, std::abs(hand.lhs - 0.125), std::abs(hand.rhs - 0.125)});
    ++r.cases;
    return r;
}

CheckReport omega_suite() {
    CheckReport r{"omega", 0.0, 1e-10, false, 0};
    constexpr int kGrid = 1000;
    for (int i = 0; i < kGrid; ++i) {
        const double a = kPi * i / (kGrid - 1);
        r.max_deviation = std::max(r.max_deviation, std::abs(omega_quadrature(1, 1, a) - omega_11_closed_form(a)));
        ++r.cases;
    }
    return r;
}

CheckReport fact1() {
    CheckReport r{"fact1", 0.0, 1e-10, false, 0};
    for (int k = 0; k <= 5; ++k) {
        for (int l = 0; l <= 5; ++l) {
            const double join = sphere_volume(k + l + 1);
            const double product = sphere_volume(k) * sphere_volume(l);
            const double trig = integrate_fixed(
                [k, l](double t) { return std::pow(std::cos(t), k) * std::pow(std::sin(t), l); }, 0.0,
                0.5 * kPi, 64);
            r.max_deviation = std::max(r.max_deviation, std::abs(product * trig / join - 1.0));
            r.max_deviation = std::max(r.max_deviation, std::abs(omega(k, l, 0.5 * kPi) * product / join - 1.0));
            r.cases += 2;
        }
    }
    return r;
}

}  // namespace

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names{"invariance", "pullback", "ray-reduction", "omega", "fact1"};
    return names;
}

SquareMat random_rotation(int N, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXd a(N, N);
    for (int j = 0; j < N; ++j)
        for (int i = 0; i < N; ++i) a(i, j) = g(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd rm = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < N; ++j)
        if (rm(j, j) < 0.0) q.col(j) = -q.col(j);
    if (q.determinant() < 0.0) q.col(0) = -q.col(0);
    return q;
}

CheckReport run_check(const std::string& name, std::uint64_t seed, int samples) {
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    CheckReport r;
    if (name == "invariance") r = invariance(seed, samples);
    else if (name == "pullback") r = pullback(seed, samples);
    else if (name == "ray-reduction") r = ray_reduction(seed, samples);
    else if (name == "omega") r = omega_suite();
    else if (name == "fact1") r = fact1();
    else throw std::invalid_argument("unknown check '" + name + "'");
    r.passed = std::isfinite(r.max_deviation) && r.max_deviation < r.tolerance;
    return r;
}

}  // namespace linkint
