#include "linkint/kernel.hpp"

#include "linkint/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace linkint {

namespace {

constexpr double kPi = std::numbers::pi;

double ipow(double base, int exponent) {
    double r = 1.0;
    for (int i = 0; i < exponent; ++i) r *= base;
    return r;
}

const GaussLegendre& omega_rule(int order) {
    static const GaussLegendre& default_rule = gauss_legendre(kOmegaOrder);
    return order == kOmegaOrder ? default_rule : gauss_legendre(order);
}

}  // namespace

double sphere_volume(int n) {
    if (n < 0) throw std::domain_error("sphere_volume: negative dimension");
    const double h = 0.5 * (n + 1);
    return 2.0 * std::pow(kPi, h) / std::tgamma(h);
}

double angle(const Vec& x, const Vec& y) {
    const double nx = x.norm(), ny = y.norm();
    if (!(nx > 0.0) || !(ny > 0.0)) throw std::domain_error("angle: zero-length vector");
    const double c = std::clamp(x.dot(y) / (nx * ny), -1.0, 1.0);
    return std::acos(c);
}

double omega_11_closed_form(double alpha) {
    return 0.5 * ((kPi - alpha) * std::cos(alpha) + std::sin(alpha));
}

double omega_quadrature(int k, int l, double alpha, int quad_order) {
    if (k < 0 || l < 0) throw std::domain_error("omega: negative exponent");
    if (!(alpha >= 0.0 && alpha <= kPi)) throw std::domain_error("omega: alpha outside [0, pi]");
    if (alpha == kPi) return 0.0;
    const auto& rule = omega_rule(quad_order);
    const double half = 0.5 * (kPi - alpha);
    const double sa = std::sin(alpha), ca = std::cos(alpha);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        // phi = theta - alpha; sin(theta) by the addition formula.
        const double phi = half * (1.0 + rule.nodes[i]);
        const double sp = std::sin(phi), cp = std::cos(phi);
        sum += rule.weights[i] * ipow(sp, k) * ipow(sa * cp + ca * sp, l);
    }
    return half * sum;
}

double omega(int k, int l, double alpha, int quad_order) {
    if (k == 1 && l == 1) {
        if (!(alpha >= 0.0 && alpha <= kPi)) throw std::domain_error("omega: alpha outside [0, pi]");
        if (alpha == kPi) return 0.0;
        return omega_11_closed_form(alpha);
    }
    return omega_quadrature(k, l, alpha, quad_order);
}

double determinant(const SquareMat& m) {
    if (m.rows() != m.cols()) throw DimensionError("determinant of a non-square matrix");
    switch (m.rows()) {
        case 0: return 1.0;
        case 1: return m(0, 0);
        case 2: return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        case 3:
            return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                   m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                   m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        case 4: {
            // Laplace expansion along the first two rows (2x2 minors).
            const double s0 = m(0, 0) * m(1, 1) - m(1, 0) * m(0, 1);
            const double s1 = m(0, 0) * m(1, 2) - m(1, 0) * m(0, 2);
            const double s2 = m(0, 0) * m(1, 3) - m(1, 0) * m(0, 3);
            const double s3 = m(0, 1) * m(1, 2) - m(1, 1) * m(0, 2);
            const double s4 = m(0, 1) * m(1, 3) - m(1, 1) * m(0, 3);
            const double s5 = m(0, 2) * m(1, 3) - m(1, 2) * m(0, 3);
            const double c5 = m(2, 2) * m(3, 3) - m(3, 2) * m(2, 3);
            const double c4 = m(2, 1) * m(3, 3) - m(3, 1) * m(2, 3);
            const double c3 = m(2, 1) * m(3, 2) - m(3, 1) * m(2, 2);
            const double c2 = m(2, 0) * m(3, 3) - m(3, 0) * m(2, 3);
            const double c1 = m(2, 0) * m(3, 2) - m(3, 0) * m(2, 2);
            const double c0 = m(2, 0) * m(3, 1) - m(3, 0) * m(2, 1);
            return s0 * c5 - s1 * c4 + s2 * c3 + s3 * c2 - s4 * c1 + s5 * c0;
        }
        default: return Eigen::PartialPivLU<SquareMat>(m).determinant();
    }
}

double det_form_euclidean(const Vec& x, const Vec& y, const Frame& frame_k, const Frame& frame_l) {
    const auto N = x.size();
    if (y.size() != N || frame_k.rows() != N || frame_l.rows() != N ||
        frame_k.cols() + frame_l.cols() + 1 != N)
        throw DimensionError("det_form_euclidean: need k + l + 1 = N rows of length N");
    SquareMat m(N, N);
    m.row(0) = (x - y).transpose();
    m.middleRows(1, frame_k.cols()) = frame_k.transpose();
    m.bottomRows(frame_l.cols()) = frame_l.transpose();
    return determinant(m);
}

double det_form_cone(const Vec& x, const Frame& frame_k, const Vec& y, const Frame& frame_l) {
    const auto N = x.size();
    if (y.size() != N || frame_k.rows() != N || frame_l.rows() != N ||
        frame_k.cols() + frame_l.cols() + 2 != N)
        throw DimensionError("det_form_cone: need k + l + 2 = N rows of length N");
    const auto k = frame_k.cols();
    SquareMat m(N, N);
    m.row(0) = x.transpose();
    m.middleRows(1, k) = frame_k.transpose();
    m.row(k + 1) = y.transpose();
    m.bottomRows(frame_l.cols()) = frame_l.transpose();
    return determinant(m);
}

RayReduction ray_reduction_check(const Vec& x, const Vec& y, int k, int l) {
    if (k < 0 || l < 0) throw DimensionError("ray_reduction_check: negative dimension");
    const int n = k + l + 1;
    if (x.size() != n + 1 || y.size() != n + 1)
        throw DimensionError("ray_reduction_check: vectors must live in R^{k+l+2}");
    const double a = angle(x, y);
    if (a < 1e-6)
        throw NearSingularError("ray_reduction_check: x and y are nearly positively colinear", {}, {}, a);
    const double nx = x.norm(), ny = y.norm();
    const double scale = ny / nx;

    // tau = scale * tan(u) puts the peak of the integrand near u = atan(cos alpha).
    auto integrand = [&](double u) {
        const double t = std::tan(u);
        const double sec2 = 1.0 + t * t;
        const double tau = scale * t;
        const double r = (tau * x - y).norm();
        return ipow(tau, k) * scale * sec2 / ipow(r, n + 1);
    };
    RayReduction out;
    out.lhs = integrate_adaptive(integrand, 0.0, 0.5 * kPi, 1e-14, 0.0, 16, 30);
    out.rhs = omega(k, l, a) / (ipow(nx, k + 1) * ipow(ny, l + 1) * ipow(std::sin(a), n));
    return out;
}

}  // namespace linkint
