#include "linkint/submanifold.hpp"

#include <set>

namespace linkint {

ParamSubmanifold::ParamSubmanifold(std::vector<Chart> charts, int multiplicity)
    : charts_(std::move(charts)), multiplicity_(multiplicity) {
    if (charts_.empty()) throw InvalidSceneError("submanifold needs at least one chart");
    if (multiplicity_ == 0) throw InvalidSceneError("submanifold multiplicity must be nonzero");
    dim_ = charts_.front().domain_dim();
    ambient_dim_ = charts_.front().ambient_dim();
    std::set<std::string> labels;
    for (const auto& c : charts_) {
        if (c.domain_dim() != dim_ || c.ambient_dim() != ambient_dim_)
            throw DimensionError("charts disagree on dimension (chart '" + c.label() + "')");
        if (!labels.insert(c.label()).second)
            throw InvalidSceneError("duplicate chart label '" + c.label() + "'");
    }
}

ParamSubmanifold ParamSubmanifold::reversed() const {
    std::vector<Chart> out;
    out.reserve(charts_.size());
    for (const auto& c : charts_) out.push_back(c.reversed());
    return ParamSubmanifold(std::move(out), multiplicity_);
}

ParamSubmanifold ParamSubmanifold::with_multiplicity(int multiplicity) const {
    return ParamSubmanifold(charts_, multiplicity);
}

ParamSubmanifold ParamSubmanifold::transformed(const SquareMat& linear, const Vec& shift) const {
    std::vector<Chart> out;
    out.reserve(charts_.size());
    for (const auto& c : charts_) out.push_back(c.transformed(linear, shift));
    return ParamSubmanifold(std::move(out), multiplicity_);
}

ParamSubmanifold ParamSubmanifold::scaled(double factor) const {
    const SquareMat linear = factor * SquareMat::Identity(ambient_dim_, ambient_dim_);
    return transformed(linear, Vec::Zero(ambient_dim_));
}

std::vector<ChartSample> sample_chart(const Chart& chart, int per_axis) {
    const auto box = chart.compact_box();
    const int d = chart.domain_dim();
    std::size_t total = 1;
    for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(per_axis);
    std::vector<ChartSample> out;
    out.reserve(total);
    std::vector<double> u(static_cast<std::size_t>(d));
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rest = flat;
        for (int i = d - 1; i >= 0; --i) {
            const auto j = static_cast<double>(rest % static_cast<std::size_t>(per_axis));
            rest /= static_cast<std::size_t>(per_axis);
            u[i] = box[i].lo + (j + 0.5) / per_axis * box[i].length();
        }
        const Params s = chart.to_original(u);
        out.push_back({u, chart.position_at({s.data(), static_cast<std::size_t>(s.size())})});
    }
    return out;
}

std::vector<Vec> ParamSubmanifold::sample(int per_axis) const {
    std::vector<Vec> out;
    for (const auto& c : charts_)
        for (auto& p : sample_chart(c, per_axis)) out.push_back(std::move(p.position));
    return out;
}

Chart face_chart(const Chart& chart, int axis, bool upper) {
    const int d = chart.domain_dim();
    if (axis < 0 || axis >= d) throw DimensionError("face axis out of range");
    const Interval frozen = chart.box()[axis];
    if (!frozen.finite()) throw InvalidSceneError("face of an infinite axis is not defined");
    const double value = upper ? frozen.hi : frozen.lo;
    std::vector<Interval> box;
    for (int i = 0; i < d; ++i)
        if (i != axis) box.push_back(chart.box()[i]);
    auto lift = [axis, value, d](std::span<const double> s) {
        std::vector<double> full(static_cast<std::size_t>(d));
        for (int i = 0, j = 0; i < d; ++i) full[i] = (i == axis) ? value : s[j++];
        return full;
    };
    Chart::MapFn map = [chart, lift](std::span<const double> s) -> Vec {
        const auto full = lift(s);
        return chart.position_at(full);
    };
    Chart::JacobianFn jac = [chart, lift, axis](std::span<const double> s) -> Frame {
        const auto full = lift(s);
        const Frame f = chart.frame_at(full);
        Frame out(f.rows(), f.cols() - 1);
        for (int i = 0, j = 0; i < f.cols(); ++i)
            if (i != axis) out.col(j++) = f.col(i);
        return out;
    };
    return Chart(chart.label() + "/face", chart.ambient_dim(), std::move(box), std::move(map),
                 std::move(jac), chart.orientation());
}

}  // namespace linkint
