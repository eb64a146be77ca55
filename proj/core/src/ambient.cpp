#include "linkint/ambient.hpp"

#include <cmath>
#include <random>

namespace linkint {

RoundSphere::RoundSphere(int n) : n_(n) {
    if (n < 0 || n + 1 > kMaxDim) throw DimensionError("sphere dimension out of range");
}

std::string RoundSphere::name() const { return "sphere(" + std::to_string(n_) + ")"; }

std::vector<RayHit> RoundSphere::ray_hits(const Vec& direction) const {
    const double len = direction.norm();
    if (!(len > 0.0)) return {};
    return {{1.0 / len, true}};
}

SphereCylinder::SphereCylinder(int n, int m) : n_(n), m_(m) {
    if (n < 0 || m < 0 || n + m + 1 > kMaxDim)
        throw DimensionError("sphere_cylinder dimensions out of range");
}

std::string SphereCylinder::name() const {
    return "sphere_cylinder(" + std::to_string(n_) + "," + std::to_string(m_) + ")";
}

std::vector<RayHit> SphereCylinder::ray_hits(const Vec& direction) const {
    // The ray t d meets the surface where |P(t d)| = 1, P projecting onto the
    // first n+1 coordinates. The normal there is P(d)/|P(d)|, so any hit is
    // transversal.
    const double radial = direction.head(n_ + 1).norm();
    if (radial < 1e-14 * std::max(1.0, direction.norm())) return {};
    return {{1.0 / radial, true}};
}

ImplicitSurface::ImplicitSurface(std::string name, int ambient_dim, ScalarFn value,
                                 GradientFn gradient, double reach, int ray_samples)
    : name_(std::move(name)),
      dim_(ambient_dim),
      value_(std::move(value)),
      gradient_(std::move(gradient)),
      reach_(reach),
      ray_samples_(ray_samples) {
    if (dim_ < 1 || dim_ > kMaxDim) throw DimensionError("implicit surface dimension out of range");
    if (!(reach_ > 0.0) || ray_samples_ < 8)
        throw InvalidSurfaceError("implicit surface needs a positive reach and >= 8 ray samples");
}

bool ImplicitSurface::contains_origin() const {
    return std::abs(value_(Vec::Zero(dim_))) < 1e-12;
}

std::vector<RayHit> ImplicitSurface::ray_hits(const Vec& direction) const {
    const Vec d = direction.normalized();
    auto f = [&](double t) { return value_(t * d); };
    auto transversal_at = [&](double t) {
        const Vec g = gradient_(t * d);
        return std::abs(g.dot(d)) > 1e-8 * std::max(g.norm(), 1e-300);
    };

    std::vector<double> ts(static_cast<std::size_t>(ray_samples_) + 1);
    std::vector<double> fs(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        ts[i] = reach_ * static_cast<double>(i) / ray_samples_;
        fs[i] = f(ts[i]);
    }

    std::vector<RayHit> hits;
    for (std::size_t i = 1; i < ts.size(); ++i) {
        if (fs[i] == 0.0 || (fs[i - 1] < 0.0) != (fs[i] < 0.0)) {
            if (fs[i - 1] == 0.0) continue;  // already reported at i - 1
            double a = ts[i - 1], b = ts[i], fa = fs[i - 1];
            for (int it = 0; it < 200 && b - a > 1e-15 * reach_; ++it) {
                const double mid = 0.5 * (a + b);
                const double fm = f(mid);
                if ((fm < 0.0) == (fa < 0.0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            const double root = 0.5 * (a + b);
            hits.push_back({root, transversal_at(root)});
        }
    }
    // Tangential contacts: |F| has a near-zero local minimum without a sign change.
    for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
        const bool same_sign = (fs[i - 1] < 0.0) == (fs[i] < 0.0) && (fs[i] < 0.0) == (fs[i + 1] < 0.0);
        if (!same_sign || fs[i] == 0.0) continue;
        if (std::abs(fs[i]) > std::abs(fs[i - 1]) || std::abs(fs[i]) > std::abs(fs[i + 1])) continue;
        double a = ts[i - 1], b = ts[i + 1];
        constexpr double kGolden = 0.6180339887498949;
        double c = b - kGolden * (b - a), e = a + kGolden * (b - a);
        double fc = std::abs(f(c)), fe = std::abs(f(e));
        for (int it = 0; it < 120; ++it) {
            if (fc < fe) {
                b = e; e = c; fe = fc;
                c = b - kGolden * (b - a);
                fc = std::abs(f(c));
            } else {
                a = c; c = e; fc = fe;
                e = a + kGolden * (b - a);
                fe = std::abs(f(e));
            }
        }
        const double tmin = 0.5 * (a + b);
        if (std::abs(f(tmin)) < 1e-10) hits.push_back({tmin, false});
    }
    return hits;
}

std::shared_ptr<const Hypersurface> make_torus(double major_radius, double minor_radius) {
    if (!(major_radius > 0.0) || !(minor_radius > 0.0))
        throw InvalidSurfaceError("torus radii must be positive");
    const double R = major_radius, r = minor_radius;
    auto value = [R, r](const Vec& p) {
        const double rho = std::hypot(p(0), p(1));
        return (rho - R) * (rho - R) + p(2) * p(2) - r * r;
    };
    auto gradient = [R](const Vec& p) {
        const double rho = std::hypot(p(0), p(1));
        Vec g(3);
        const double scale = rho > 0.0 ? 2.0 * (rho - R) / rho : 0.0;
        g << scale * p(0), scale * p(1), 2.0 * p(2);
        return g;
    };
    return std::make_shared<ImplicitSurface>(
        "torus(" + std::to_string(R) + "," + std::to_string(r) + ")", 3, value, gradient,
        R + r + 1.0);
}

VisibilityReport visibility_check(const Hypersurface& surface, int samples, std::uint64_t seed) {
    if (surface.contains_origin())
        throw InvalidSurfaceError("surface " + surface.name() + " passes through the origin");
    const int dim = surface.ambient_dim();

    std::vector<Vec> directions;
    for (int i = 0; i < dim; ++i) {
        for (double sign : {1.0, -1.0}) {
            Vec d = Vec::Zero(dim);
            d(i) = sign;
            directions.push_back(d);
        }
    }
    for (int i = 0; i < dim; ++i) {
        for (int j = i + 1; j < dim; ++j) {
            for (double si : {1.0, -1.0}) {
                for (double sj : {1.0, -1.0}) {
                    Vec d = Vec::Zero(dim);
                    d(i) = si;
                    d(j) = sj;
                    directions.push_back(d.normalized());
                }
            }
        }
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    for (int s = 0; s < samples; ++s) {
        Vec d(dim);
        do {
            for (int i = 0; i < dim; ++i) d(i) = gauss(rng);
        } while (d.norm() < 1e-12);
        directions.push_back(d.normalized());
    }

    VisibilityReport report;
    for (const auto& d : directions) {
        ++report.rays_checked;
        auto hits = surface.ray_hits(d);
        bool bad = hits.size() > 1;
        for (const auto& h : hits) bad = bad || !h.transversal;
        if (bad) {
            report.visible = false;
            report.witness = d;
            report.witness_hits = std::move(hits);
            return report;
        }
    }
    return report;
}

AmbientSpace AmbientSpace::euclidean(int N) {
    if (N < 2 || N > kMaxDim) throw DimensionError("Euclidean dimension out of range");
    return {AmbientKind::Euclidean, N, nullptr};
}

AmbientSpace AmbientSpace::sphere(int n) {
    if (n < 1 || n + 1 > kMaxDim) throw DimensionError("sphere dimension out of range");
    return {AmbientKind::Sphere, n, std::make_shared<RoundSphere>(n)};
}

AmbientSpace AmbientSpace::visible(std::shared_ptr<const Hypersurface> surface) {
    if (!surface) throw InvalidSurfaceError("visible ambient needs a hypersurface");
    if (surface->contains_origin())
        throw InvalidSurfaceError("surface " + surface->name() + " passes through the origin");
    const int n = surface->ambient_dim() - 1;
    return {AmbientKind::Visible, n, std::move(surface)};
}

int AmbientSpace::embedding_dim() const { return kind == AmbientKind::Euclidean ? dim : dim + 1; }

void AmbientSpace::check_dimensions(int k, int l) const {
    if (k < 0 || l < 0) throw DimensionError("submanifold dimensions must be non-negative");
    const int required = dim - 1;
    if (k + l != required) {
        const char* which = kind == AmbientKind::Euclidean ? "N - 1" : "n - 1";
        throw DimensionError("dimension mismatch: k + l = " + std::to_string(k + l) + " but " +
                             which + " = " + std::to_string(required) + " for " + describe());
    }
}

std::string AmbientSpace::describe() const {
    switch (kind) {
        case AmbientKind::Euclidean: return "R^" + std::to_string(dim);
        case AmbientKind::Sphere: return "S^" + std::to_string(dim);
        case AmbientKind::Visible:
            return "visible " + (surface ? surface->name() : std::string("?"));
    }
    return "?";
}

}  // namespace linkint
