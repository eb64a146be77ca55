#pragma once

#include "linkint/chart.hpp"

#include <vector>

namespace linkint {

/// Closed oriented k-dimensional submanifold of R^N described by charts with
/// pairwise disjoint interiors. Immutable after construction.
class ParamSubmanifold {
public:
    explicit ParamSubmanifold(std::vector<Chart> charts, int multiplicity = 1);

    int dim() const { return dim_; }
    int ambient_dim() const { return ambient_dim_; }
    int multiplicity() const { return multiplicity_; }
    const std::vector<Chart>& charts() const { return charts_; }

    /// Same manifold with the orientation of every chart flipped.
    ParamSubmanifold reversed() const;
    ParamSubmanifold with_multiplicity(int multiplicity) const;
    /// Image under x -> A x + b.
    ParamSubmanifold transformed(const SquareMat& linear, const Vec& shift) const;
    ParamSubmanifold scaled(double factor) const;

    /// Points on an even grid of `per_axis` midpoints in every chart
    /// (compact coordinates), in chart order.
    std::vector<Vec> sample(int per_axis) const;

private:
    std::vector<Chart> charts_;
    int dim_ = 0;
    int ambient_dim_ = 0;
    int multiplicity_ = 1;
};

/// Ambient-space points of a chart on an even midpoint grid, together with
/// the compact parameter coordinates that produced them.
struct ChartSample {
    std::vector<double> u;
    Vec position;
};
std::vector<ChartSample> sample_chart(const Chart& chart, int per_axis);

/// Chart restricted to one face of its (finite) box: parameter `axis` is
/// frozen at its lower or upper end.
Chart face_chart(const Chart& chart, int axis, bool upper);

}  // namespace linkint
