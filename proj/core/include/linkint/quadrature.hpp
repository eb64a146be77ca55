#pragma once

#include <functional>
#include <span>
#include <vector>

namespace linkint {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached n-point rule (n >= 1). Thread safe.
const GaussLegendre& gauss_legendre(int n);

/// Fixed-order Gauss-Legendre on [a, b].
double integrate_fixed(const std::function<double(double)>& f, double a, double b, int order);

/// Adaptive bisection on [a, b]: a panel is accepted once its order-p and
/// order-2p estimates agree to max(abs_tol, rel_tol * |integral|) times the
/// panel's share of [a, b], or at `max_depth`.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-13, double abs_tol = 0.0, int order = 16,
                          int max_depth = 40);

/// Pairwise (tree) summation in index order. The result depends only on the
/// input values and their order.
double pairwise_sum(std::span<const double> values);

}  // namespace linkint
