#include "linkint/chart.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace linkint {

namespace {

constexpr double kHalfPi = 1.5707963267948966;

enum class AxisKind { Finite, Both, Upper, Lower };

AxisKind kind_of(const Interval& iv) {
    const bool lo_inf = std::isinf(iv.lo);
    const bool hi_inf = std::isinf(iv.hi);
    if (!lo_inf && !hi_inf) return AxisKind::Finite;
    if (lo_inf && hi_inf) return AxisKind::Both;
    return hi_inf ? AxisKind::Upper : AxisKind::Lower;
}

std::string describe(std::span<const double> s) {
    std::ostringstream os;
    os.precision(10);
    os << "(";
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? ", " : "") << s[i];
    os << ")";
    return os.str();
}

}  // namespace

bool Interval::finite() const { return std::isfinite(lo) && std::isfinite(hi); }

Chart::Chart(std::string label, int ambient_dim, std::vector<Interval> box, MapFn map,
             JacobianFn jacobian, int orientation)
    : label_(std::move(label)),
      ambient_dim_(ambient_dim),
      box_(std::move(box)),
      map_(std::move(map)),
      jacobian_(std::move(jacobian)),
      orientation_(orientation) {
    if (ambient_dim_ < 1 || ambient_dim_ > kMaxDim)
        throw DimensionError("chart '" + label_ + "': ambient dimension out of range");
    if (domain_dim() > ambient_dim_)
        throw DimensionError("chart '" + label_ + "': domain dimension exceeds ambient dimension");
    if (orientation_ != 1 && orientation_ != -1)
        throw InvalidSceneError("chart '" + label_ + "': orientation must be +1 or -1");
    if (!map_) throw InvalidSceneError("chart '" + label_ + "': missing map");
    for (const auto& iv : box_) {
        if (std::isnan(iv.lo) || std::isnan(iv.hi) || !(iv.lo < iv.hi))
            throw InvalidSceneError("chart '" + label_ + "': empty or invalid parameter interval");
    }
}

std::vector<Interval> Chart::compact_box() const {
    std::vector<Interval> out;
    out.reserve(box_.size());
    for (const auto& iv : box_) {
        switch (kind_of(iv)) {
            case AxisKind::Finite: out.push_back(iv); break;
            case AxisKind::Both: out.push_back({-kHalfPi, kHalfPi}); break;
            case AxisKind::Upper: out.push_back({0.0, kHalfPi}); break;
            case AxisKind::Lower: out.push_back({-kHalfPi, 0.0}); break;
        }
    }
    return out;
}

Params Chart::to_original(std::span<const double> u) const {
    Params s(domain_dim());
    for (int i = 0; i < domain_dim(); ++i) {
        const auto& iv = box_[i];
        switch (kind_of(iv)) {
            case AxisKind::Finite: s(i) = u[i]; break;
            case AxisKind::Both: s(i) = std::tan(u[i]); break;
            case AxisKind::Upper: s(i) = iv.lo + std::tan(u[i]); break;
            case AxisKind::Lower: s(i) = iv.hi + std::tan(u[i]); break;
        }
    }
    return s;
}

Vec Chart::position_at(std::span<const double> s) const {
    Vec x = map_(s);
    if (x.size() != ambient_dim_)
        throw DimensionError("chart '" + label_ + "': map returned wrong dimension");
    return x;
}

Frame Chart::finite_difference_frame(std::span<const double> s) const {
    const double cbrt_eps = std::cbrt(std::numeric_limits<double>::epsilon());
    Frame frame(ambient_dim_, domain_dim());
    std::vector<double> probe(s.begin(), s.end());
    for (int i = 0; i < domain_dim(); ++i) {
        const double h = cbrt_eps * std::max(1.0, std::abs(s[i]));
        probe[i] = s[i] + h;
        const Vec plus = position_at(probe);
        probe[i] = s[i] - h;
        const Vec minus = position_at(probe);
        probe[i] = s[i];
        frame.col(i) = (plus - minus) / (2.0 * h);
    }
    return frame;
}

Frame Chart::frame_at(std::span<const double> s) const {
    if (!jacobian_) return finite_difference_frame(s);
    Frame frame = jacobian_(s);
    if (frame.rows() != ambient_dim_ || frame.cols() != domain_dim())
        throw DimensionError("chart '" + label_ + "': jacobian returned wrong shape");
    return frame;
}

ChartPoint Chart::evaluate(std::span<const double> u, double rank_tol) const {
    if (static_cast<int>(u.size()) != domain_dim())
        throw DimensionError("chart '" + label_ + "': parameter point has wrong dimension");
    ChartPoint p;
    p.params = to_original(u);
    std::span<const double> s(p.params.data(), static_cast<std::size_t>(p.params.size()));
    p.position = position_at(s);
    p.frame = frame_at(s);
    for (int i = 0; i < domain_dim(); ++i) {
        if (kind_of(box_[i]) != AxisKind::Finite) {
            const double sec = 1.0 / std::cos(u[i]);
            p.frame.col(i) *= sec * sec;
        }
    }
    if (domain_dim() > 0 && relative_rank(p.frame) <= rank_tol) {
        throw DegenerateChartError("chart '" + label_ + "': frame is rank deficient at s = " +
                                   describe(s));
    }
    return p;
}

Chart Chart::with_label(std::string label) const {
    Chart c = *this;
    c.label_ = std::move(label);
    return c;
}

Chart Chart::with_orientation(int orientation) const {
    Chart c = *this;
    if (orientation != 1 && orientation != -1)
        throw InvalidSceneError("chart '" + label_ + "': orientation must be +1 or -1");
    c.orientation_ = orientation;
    return c;
}

Chart Chart::transformed(const SquareMat& linear, const Vec& shift) const {
    if (linear.rows() != ambient_dim_ || linear.cols() != ambient_dim_ || shift.size() != ambient_dim_)
        throw DimensionError("chart '" + label_ + "': transform has wrong dimension");
    Chart c = *this;
    auto map = map_;
    c.map_ = [map, linear, shift](std::span<const double> s) -> Vec {
        return linear * map(s) + shift;
    };
    if (jacobian_) {
        auto jac = jacobian_;
        c.jacobian_ = [jac, linear](std::span<const double> s) -> Frame { return linear * jac(s); };
    }
    return c;
}

double relative_rank(const Frame& frame) {
    if (frame.cols() == 0) return 1.0;
    const double largest = frame.colwise().norm().maxCoeff();
    if (!(largest > 0.0)) return 0.0;
    if (frame.cols() == 1) return 1.0;
    const Frame scaled = frame / largest;
    const SquareMat gram = scaled.transpose() * scaled;
    Eigen::SelfAdjointEigenSolver<SquareMat> eig(gram, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, eig.eigenvalues()(0)));
}

}  // namespace linkint
