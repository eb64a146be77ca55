#include "linkint/quadrature.hpp"

#include "linkint/types.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace linkint {

namespace {

GaussLegendre compute_rule(int n) {
    GaussLegendre rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    // Newton iteration on P_n from the Chebyshev-like initial guess; nodes are
    // symmetric, so only the first half is computed.
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            const double pn = n == 1 ? x : p1;
            const double pnm1 = n == 1 ? 1.0 : p0;
            dp = n * (x * pn - pnm1) / (x * x - 1.0);
            const double dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute the derivative at the converged node.
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= n; ++j) {
            const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
            p0 = p1;
            p1 = p2;
        }
        const double pn = n == 1 ? x : p1;
        const double pnm1 = n == 1 ? 1.0 : p0;
        dp = n * (x * pn - pnm1) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return rule;
}

}  // namespace

const GaussLegendre& gauss_legendre(int n) {
    if (n < 1) throw Error("Gauss-Legendre order must be >= 1");
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<GaussLegendre>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<GaussLegendre>(compute_rule(n));
    return *slot;
}

double integrate_fixed(const std::function<double(double)>& f, double a, double b, int order) {
    const auto& rule = gauss_legendre(order);
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * sum;
}

namespace {

double adaptive_panel(const std::function<double(double)>& f, double a, double b, double coarse,
                      double total_len, double tol, int order, int depth) {
    const double fine = integrate_fixed(f, a, b, 2 * order);
    const double share = (b - a) / total_len;
    if (std::abs(fine - coarse) <= tol * share || depth <= 0) return fine;
    const double mid = 0.5 * (a + b);
    const double left = integrate_fixed(f, a, mid, order);
    const double right = integrate_fixed(f, mid, b, order);
    return adaptive_panel(f, a, mid, left, total_len, tol, order, depth - 1) +
           adaptive_panel(f, mid, b, right, total_len, tol, order, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double abs_tol, int order, int max_depth) {
    if (a == b) return 0.0;
    const double coarse = integrate_fixed(f, a, b, order);
    // Tolerance is global: relative to the whole integral (or to the integral
    // of |f| when the integral itself cancels to ~0).
    const double magnitude =
        integrate_fixed([&f](double x) { return std::abs(f(x)); }, a, b, 2 * order);
    const double tol = std::max({abs_tol, rel_tol * std::abs(coarse), 1e-15 * std::abs(magnitude)});
    return adaptive_panel(f, a, b, coarse, b - a, tol, order, max_depth);
}

double pairwise_sum(std::span<const double> values) {
    if (values.empty()) return 0.0;
    if (values.size() <= 8) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.subspan(0, half)) + pairwise_sum(values.subspan(half));
}

}  // namespace linkint
