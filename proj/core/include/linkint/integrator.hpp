#pragma once

#include "linkint/submanifold.hpp"

#include <cstddef>
#include <functional>
#include <limits>

namespace linkint {

struct QuadratureSpec {
    int base_order = 32;              ///< Gauss-Legendre nodes per parameter axis.
    int max_subdivision_depth = 6;    ///< Bisection levels below each chart pair.
    double refine_threshold = 1e-7;   ///< Per-tile error budget, scaled by tile measure.
    double singular_guard = 1e-9;     ///< Smallest admissible proximity at a node.
    double rank_tol = 1e-8;           ///< Frame rank check at every node.
    int workers = 0;                  ///< 0 selects the hardware thread count.

    /// Throws std::invalid_argument on out-of-range settings.
    void validate() const;
};

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;  ///< Sum over accepted tiles of |Q_2p - Q_p|.
    long long snapped = 0;        ///< Nearest integer to value.
    double residual = 0.0;        ///< |value - snapped| <= 0.5.
    std::size_t node_count = 0;   ///< Node pairs evaluated.
    double wall_time = 0.0;       ///< Seconds.
    bool accuracy_warning = false;
    int tiles = 0;
    int deepest_level = 0;
};

/// Integrand value at a node pair plus a proximity measure (|x - y| or the
/// angle alpha) checked against QuadratureSpec::singular_guard.
struct Density {
    double value = 0.0;
    double proximity = std::numeric_limits<double>::infinity();
};

/// Density on K x L. Receives points of K and L (positions, frames in compact
/// coordinates, original parameters) and must include every Jacobian factor
/// except quadrature weights, chart orientation, and multiplicity.
using DensityFn = std::function<Density(const ChartPoint& on_k, const ChartPoint& on_l)>;

/// Adaptive tensor-product Gauss-Legendre over every chart pair of K x L.
///
/// Each chart pair starts as one tile covering its compact box. A tile is
/// evaluated with order p and order 2p rules; it is bisected along every
/// axis when the two disagree by more than refine_threshold times the tile's
/// share of the pair's box, or when some node violates singular_guard. The
/// order-2p value of each accepted tile enters a fixed summation tree
/// (children in index order, chart pairs ordered by chart labels), so the
/// result is bit-identical for any worker count.
///
/// Throws NearSingularError if singular_guard is still violated at the
/// deepest level; sets accuracy_warning if a deepest-level tile misses its
/// budget by more than 10x.
IntegralResult integrate_product(const ParamSubmanifold& K, const ParamSubmanifold& L,
                                 const DensityFn& density, const QuadratureSpec& spec);

/// Outcome of snapping a value to the nearest integer.
struct SnapResult {
    bool accepted = false;
    long long value = 0;
    double residual = 0.0;
};

/// Nearest integer if |value - round(value)| < tol, else a rejection carrying
/// the residual. tol must lie in (0, 0.5).
SnapResult snap_integer(double value, double tol);

/// Fills snapped / residual of `result` from its value.
void snap_result(IntegralResult& result);

}  // namespace linkint
