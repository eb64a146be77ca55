#pragma once

#include "linkint/types.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace linkint {

/// One parameter axis of a chart. Either endpoint may be +-infinity; such
/// axes are integrated through the substitution t = c + tan(u).
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool finite() const;
    double length() const { return hi - lo; }
};

/// Image of a parameter point: the ambient position, the partials as columns
/// of `frame`, and the parameter point in the chart's original coordinates.
struct ChartPoint {
    Vec position;
    Frame frame;
    Params params;
};

/// A single oriented coordinate patch s -> x(s) of a k-dimensional
/// submanifold of R^N.
///
/// Parameters passed to evaluate() live in "compact" coordinates: finite axes
/// are unchanged, infinite axes are mapped onto a bounded interval by
/// t = c + tan(u) and the frame carries the sec^2(u) factor, so integrating
/// over compact_box() with the returned frame integrates over the full chart.
class Chart {
public:
    using MapFn = std::function<Vec(std::span<const double>)>;
    using JacobianFn = std::function<Frame(std::span<const double>)>;

    /// `jacobian` may be empty, in which case central differences are used.
    Chart(std::string label, int ambient_dim, std::vector<Interval> box, MapFn map,
          JacobianFn jacobian = {}, int orientation = 1);

    const std::string& label() const { return label_; }
    int domain_dim() const { return static_cast<int>(box_.size()); }
    int ambient_dim() const { return ambient_dim_; }
    int orientation() const { return orientation_; }
    const std::vector<Interval>& box() const { return box_; }
    bool has_analytic_jacobian() const { return static_cast<bool>(jacobian_); }

    /// Integration box in compact coordinates.
    std::vector<Interval> compact_box() const;

    /// Maps compact coordinates back to the chart's own parameters.
    Params to_original(std::span<const double> u) const;

    /// Position and frame at compact coordinates `u`. Throws
    /// DegenerateChartError when the frame's smallest singular value falls
    /// below rank_tol times its largest column norm.
    ChartPoint evaluate(std::span<const double> u, double rank_tol = 1e-8) const;

    /// Position and frame in original coordinates with no rank check.
    Vec position_at(std::span<const double> s) const;
    Frame frame_at(std::span<const double> s) const;
    Frame finite_difference_frame(std::span<const double> s) const;

    Chart with_label(std::string label) const;
    Chart with_orientation(int orientation) const;
    Chart reversed() const { return with_orientation(-orientation_); }

    /// Chart of x -> A x + b.
    Chart transformed(const SquareMat& linear, const Vec& shift) const;

private:
    std::string label_;
    int ambient_dim_;
    std::vector<Interval> box_;
    MapFn map_;
    JacobianFn jacobian_;
    int orientation_;
};

/// Smallest singular value of `frame` divided by its largest column norm
/// (1 for a zero-column frame).
double relative_rank(const Frame& frame);

}  // namespace linkint
