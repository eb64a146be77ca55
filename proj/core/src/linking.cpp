#include "linkint/linking.hpp"

#include "linkint/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace linkint {

namespace {

double ipow(double base, int exponent) {
    double r = 1.0;
    for (int i = 0; i < exponent; ++i) r *= base;
    return r;
}

/// Compass (pattern) search for a local minimum of f over a box.
std::vector<double> compass_minimize(const std::function<double(const std::vector<double>&)>& f,
                                     std::vector<double> u, const std::vector<Interval>& box,
                                     double initial_fraction) {
    const std::size_t d = u.size();
    std::vector<double> step(d);
    for (std::size_t i = 0; i < d; ++i) step[i] = initial_fraction * box[i].length();
    double best = f(u);
    for (int iter = 0; iter < 5000; ++iter) {
        bool moved = false;
        for (std::size_t i = 0; i < d; ++i) {
            for (double dir : {1.0, -1.0}) {
                std::vector<double> trial = u;
                trial[i] = std::clamp(u[i] + dir * step[i], box[i].lo, box[i].hi);
                if (trial[i] == u[i]) continue;
                const double value = f(trial);
                if (value < best) {
                    best = value;
                    u = std::move(trial);
                    moved = true;
                    break;
                }
            }
        }
        if (!moved) {
            double largest = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                step[i] *= 0.5;
                largest = std::max(largest, step[i] / std::max(box[i].length(), 1e-300));
            }
            if (largest < 1e-15) break;
        }
    }
    return u;
}

std::vector<double> params_vector(const Chart& chart, std::span<const double> u) {
    const Params s = chart.to_original(u);
    return {s.data(), s.data() + s.size()};
}

double metric_value(SeparationMetric metric, const Vec& x, const Vec& y) {
    if (metric == SeparationMetric::Distance) return (x - y).norm();
    const double nx = x.norm(), ny = y.norm();
    if (!(nx > 0.0) || !(ny > 0.0)) return 0.0;
    return angle(x, y);
}

void guard_separation(const ParamSubmanifold& K, const ParamSubmanifold& L, SeparationMetric metric,
                      const QuadratureSpec& spec) {
    const Separation sep = min_separation(K, L, metric);
    if (sep.value < spec.singular_guard) {
        std::ostringstream os;
        os.precision(10);
        os << "near-singular configuration: " << (metric == SeparationMetric::Distance ? "|x - y|" : "alpha")
           << " = " << sep.value << " below guard " << spec.singular_guard << " at s = (";
        for (std::size_t i = 0; i < sep.s.size(); ++i) os << (i ? ", " : "") << sep.s[i];
        os << "), t = (";
        for (std::size_t i = 0; i < sep.t.size(); ++i) os << (i ? ", " : "") << sep.t[i];
        os << ")";
        throw NearSingularError(os.str(), sep.s, sep.t, sep.value);
    }
}

void require_same_ambient(const ParamSubmanifold& K, const ParamSubmanifold& L) {
    if (K.ambient_dim() != L.ambient_dim())
        throw DimensionError("K and L live in different ambient spaces");
}

}  // namespace

DensityFn euclidean_density(int k, int l) {
    const int N = k + l + 1;
    const double scale = ((k + 1) % 2 == 0 ? 1.0 : -1.0) / sphere_volume(N - 1);
    return [scale, N](const ChartPoint& x, const ChartPoint& y) {
        const Vec diff = x.position - y.position;
        const double r = diff.norm();
        const double det = det_form_euclidean(x.position, y.position, x.frame, y.frame);
        return Density{scale * det / ipow(r, N), r};
    };
}

DensityFn sphere_density(int k, int l) {
    const int n = k + l + 1;
    const double scale = 1.0 / sphere_volume(n);
    return [scale, n, k, l](const ChartPoint& x, const ChartPoint& y) {
        if (std::abs(x.position.norm() - 1.0) > 1e-8 || std::abs(y.position.norm() - 1.0) > 1e-8)
            throw InvalidSceneError("linking_sphere: point off the unit sphere");
        const double a = angle(x.position, y.position);
        const double det = det_form_cone(x.position, x.frame, y.position, y.frame);
        return Density{scale * omega(k, l, a) / ipow(std::sin(a), n) * det, a};
    };
}

DensityFn visible_density(int k, int l) {
    const int n = k + l + 1;
    const double scale = 1.0 / sphere_volume(n);
    return [scale, n, k, l](const ChartPoint& x, const ChartPoint& y) {
        const double nx = x.position.norm(), ny = y.position.norm();
        const double a = angle(x.position, y.position);
        const double det = det_form_cone(x.position, x.frame, y.position, y.frame);
        const double denom = ipow(nx, k + 1) * ipow(ny, l + 1) * ipow(std::sin(a), n);
        return Density{scale * omega(k, l, a) / denom * det, a};
    };
}

IntegralResult linking_euclidean(const ParamSubmanifold& K, const ParamSubmanifold& L,
                                 const QuadratureSpec& spec) {
    require_same_ambient(K, L);
    AmbientSpace::euclidean(K.ambient_dim()).check_dimensions(K.dim(), L.dim());
    spec.validate();
    guard_separation(K, L, SeparationMetric::Distance, spec);
    return integrate_product(K, L, euclidean_density(K.dim(), L.dim()), spec);
}

IntegralResult linking_sphere(const ParamSubmanifold& K, const ParamSubmanifold& L,
                              const QuadratureSpec& spec) {
    require_same_ambient(K, L);
    AmbientSpace::sphere(K.ambient_dim() - 1).check_dimensions(K.dim(), L.dim());
    spec.validate();
    for (const auto* M : {&K, &L})
        for (const auto& p : M->sample(4))
            if (std::abs(p.norm() - 1.0) > 1e-8)
                throw InvalidSceneError("linking_sphere: sampled point off the unit sphere");
    guard_separation(K, L, SeparationMetric::Angle, spec);
    return integrate_product(K, L, sphere_density(K.dim(), L.dim()), spec);
}

IntegralResult linking_visible(const ParamSubmanifold& K, const ParamSubmanifold& L,
                               const QuadratureSpec& spec) {
    require_same_ambient(K, L);
    if (K.ambient_dim() - 1 < 1) throw DimensionError("visible hypersurface needs n >= 1");
    if (K.dim() + L.dim() != K.ambient_dim() - 2)
        throw DimensionError("dimension mismatch: k + l must equal n - 1 for M^n in R^{n+1}");
    spec.validate();
    guard_separation(K, L, SeparationMetric::Angle, spec);
    return integrate_product(K, L, visible_density(K.dim(), L.dim()), spec);
}

IntegralResult linking_in(const AmbientSpace& ambient, const ParamSubmanifold& K,
                          const ParamSubmanifold& L, const QuadratureSpec& spec) {
    ambient.check_dimensions(K.dim(), L.dim());
    if (K.ambient_dim() != ambient.embedding_dim() || L.ambient_dim() != ambient.embedding_dim())
        throw DimensionError("submanifolds are not written in R^" +
                             std::to_string(ambient.embedding_dim()) + " as " + ambient.describe() +
                             " requires");
    switch (ambient.kind) {
        case AmbientKind::Euclidean: return linking_euclidean(K, L, spec);
        case AmbientKind::Sphere: return linking_sphere(K, L, spec);
        case AmbientKind::Visible: return linking_visible(K, L, spec);
    }
    throw Error("unknown ambient kind");
}

IntegralResult linking_number(const Scene& scene, const QuadratureSpec& spec) {
    return linking_in(scene.ambient, scene.K, scene.L, spec);
}

Separation min_separation(const ParamSubmanifold& K, const ParamSubmanifold& L,
                          SeparationMetric metric, std::size_t budget) {
    require_same_ambient(K, L);
    auto count = [](const ParamSubmanifold& M, int m) {
        std::size_t total = 0;
        for (const auto& c : M.charts()) {
            std::size_t n = 1;
            for (int i = 0; i < c.domain_dim(); ++i) n *= static_cast<std::size_t>(m);
            total += n;
        }
        return total;
    };
    int m = 512;
    while (m > 1 && count(K, m) * count(L, m) > budget) --m;

    struct Sample {
        std::size_t chart;
        ChartSample point;
    };
    auto collect = [m](const ParamSubmanifold& M) {
        std::vector<Sample> out;
        for (std::size_t c = 0; c < M.charts().size(); ++c)
            for (auto& p : sample_chart(M.charts()[c], m)) out.push_back({c, std::move(p)});
        return out;
    };
    const auto ks = collect(K);
    const auto ls = collect(L);

    struct Candidate {
        double value;
        std::size_t i, j;
    };
    std::vector<Candidate> best;
    constexpr std::size_t kKeep = 4;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        for (std::size_t j = 0; j < ls.size(); ++j) {
            const double v = metric_value(metric, ks[i].point.position, ls[j].point.position);
            if (best.size() < kKeep || v < best.back().value) {
                best.push_back({v, i, j});
                std::sort(best.begin(), best.end(),
                          [](const Candidate& a, const Candidate& b) { return a.value < b.value; });
                if (best.size() > kKeep) best.pop_back();
            }
        }
    }

    Separation out;
    out.value = std::numeric_limits<double>::infinity();
    for (const auto& cand : best) {
        const Chart& kc = K.charts()[ks[cand.i].chart];
        const Chart& lc = L.charts()[ls[cand.j].chart];
        const auto kbox = kc.compact_box(), lbox = lc.compact_box();
        std::vector<Interval> box = kbox;
        box.insert(box.end(), lbox.begin(), lbox.end());
        std::vector<double> u = ks[cand.i].point.u;
        u.insert(u.end(), ls[cand.j].point.u.begin(), ls[cand.j].point.u.end());
        const std::size_t kd = kbox.size();
        auto f = [&](const std::vector<double>& w) {
            const std::span<const double> all(w);
            const auto s = params_vector(kc, all.subspan(0, kd));
            const auto t = params_vector(lc, all.subspan(kd));
            return metric_value(metric, kc.position_at(s), lc.position_at(t));
        };
        const auto opt = compass_minimize(f, u, box, 0.5 / m);
        const double v = f(opt);
        if (v < out.value) {
            const std::span<const double> all(opt);
            out.value = v;
            out.s = params_vector(kc, all.subspan(0, kd));
            out.t = params_vector(lc, all.subspan(kd));
        }
    }
    return out;
}

double distance_to_manifold(const Vec& point, const ParamSubmanifold& M, int per_axis) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& chart : M.charts()) {
        const auto samples = sample_chart(chart, per_axis);
        std::size_t arg = 0;
        double seed_value = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < samples.size(); ++i) {
            const double v = (samples[i].position - point).norm();
            if (v < seed_value) {
                seed_value = v;
                arg = i;
            }
        }
        if (chart.domain_dim() == 0) {
            best = std::min(best, seed_value);
            continue;
        }
        auto f = [&](const std::vector<double>& u) {
            return (chart.position_at(params_vector(chart, u)) - point).norm();
        };
        const auto opt = compass_minimize(f, samples[arg].u, chart.compact_box(), 0.5 / per_axis);
        best = std::min(best, f(opt));
    }
    return best;
}

double pullback_check(const ParamSubmanifold& K, const ParamSubmanifold& L, int samples,
                      std::uint64_t seed) {
    require_same_ambient(K, L);
    const int N = K.ambient_dim();
    const int k = K.dim(), l = L.dim();
    if (k + l + 1 != N) throw DimensionError("pullback_check: need k + l = N - 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double cbrt_eps = std::cbrt(std::numeric_limits<double>::epsilon());

    auto random_point = [&](const ParamSubmanifold& M) {
        const auto idx = static_cast<std::size_t>(unif(rng) * static_cast<double>(M.charts().size()));
        const Chart& c = M.charts()[std::min(idx, M.charts().size() - 1)];
        std::vector<double> u;
        for (const auto& iv : c.compact_box()) u.push_back(iv.lo + (0.05 + 0.9 * unif(rng)) * iv.length());
        return std::pair<const Chart*, std::vector<double>>{&c, u};
    };
    auto position = [](const Chart& c, const std::vector<double>& u) {
        return c.position_at(params_vector(c, u));
    };

    double worst = 0.0;
    for (int sample = 0; sample < samples; ++sample) {
        auto [kc, u] = random_point(K);
        auto [lc, v] = random_point(L);
        const ChartPoint x = kc->evaluate(u);
        const ChartPoint y = lc->evaluate(v);
        const Vec diff = x.position - y.position;
        const double r = diff.norm();
        auto f_at = [&](const std::vector<double>& uu, const std::vector<double>& vv) -> Vec {
            const Vec d = position(*kc, uu) - position(*lc, vv);
            return d / d.norm();
        };

        SquareMat m(N, N);
        m.row(0) = (diff / r).transpose();
        int row = 1;
        for (int i = 0; i < k; ++i, ++row) {
            const double h = cbrt_eps * std::max(1.0, std::abs(u[i]));
            auto up = u, dn = u;
            up[i] += h;
            dn[i] -= h;
            m.row(row) = ((f_at(up, v) - f_at(dn, v)) / (2.0 * h)).transpose();
        }
        for (int j = 0; j < l; ++j, ++row) {
            const double h = cbrt_eps * std::max(1.0, std::abs(v[j]));
            auto up = v, dn = v;
            up[j] += h;
            dn[j] -= h;
            m.row(row) = ((f_at(u, up) - f_at(u, dn)) / (2.0 * h)).transpose();
        }
        const double lhs = determinant(m);
        const double sign = (l % 2 == 0) ? 1.0 : -1.0;
        const double rhs = sign * det_form_euclidean(x.position, y.position, x.frame, y.frame) / ipow(r, N);
        double bound = 1.0 / ipow(r, N - 1);
        for (int i = 0; i < k; ++i) bound *= x.frame.col(i).norm();
        for (int j = 0; j < l; ++j) bound *= y.frame.col(j).norm();
        worst = std::max(worst, std::abs(lhs - rhs) / bound);
    }
    return worst;
}

}  // namespace linkint
