#pragma once

#include "linkint/types.hpp"

namespace linkint {

/// Order of the fixed Gauss-Legendre rule used for the angular kernel.
inline constexpr int kOmegaOrder = 64;

/// n-dimensional volume of the unit n-sphere, 2 pi^{(n+1)/2} / Gamma((n+1)/2).
double sphere_volume(int n);

/// Angle in [0, pi] between two nonzero vectors. Throws std::domain_error on a
/// zero-length input.
double angle(const Vec& x, const Vec& y);

/// Kernel Omega_{k,l}(alpha) = int_alpha^pi sin^k(theta - alpha) sin^l(theta) dtheta.
/// Uses the closed form for k = l = 1 and Gauss-Legendre otherwise.
double omega(int k, int l, double alpha, int quad_order = kOmegaOrder);

/// Omega_{k,l}(alpha) by Gauss-Legendre on [alpha, pi], no fast path.
double omega_quadrature(int k, int l, double alpha, int quad_order = kOmegaOrder);

/// ((pi - alpha) cos alpha + sin alpha) / 2.
double omega_11_closed_form(double alpha);

/// Determinant of a square matrix (explicit formulas for N <= 4, LU with
/// partial pivoting beyond).
double determinant(const SquareMat& m);

/// det(x - y, dx/ds_1, ..., dx/ds_k, dy/dt_1, ..., dy/dt_l); frames hold the
/// partials as columns. Requires k + l + 1 = N.
double det_form_euclidean(const Vec& x, const Vec& y, const Frame& frame_k, const Frame& frame_l);

/// det(x, dx/ds_1, ..., dx/ds_k, y, dy/dt_1, ..., dy/dt_l). Requires k + l + 2 = N.
double det_form_cone(const Vec& x, const Frame& frame_k, const Vec& y, const Frame& frame_l);

/// Both sides of the ray integral identity
///   int_0^inf tau^k / |tau x - y|^{n+1} dtau
///     = Omega_{k,l}(alpha) / (|x|^{k+1} |y|^{l+1} sin^n alpha),
/// with n = k + l + 1 and x, y in R^{n+1}. The left side is integrated
/// adaptively after tau = (|y|/|x|) tan u.
struct RayReduction {
    double lhs = 0.0;
    double rhs = 0.0;
};
RayReduction ray_reduction_check(const Vec& x, const Vec& y, int k, int l);

}  // namespace linkint
