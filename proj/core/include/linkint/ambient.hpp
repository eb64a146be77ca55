#pragma once

#include "linkint/types.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace linkint {

/// Intersection of the ray {t d : t > 0} with a hypersurface.
struct RayHit {
    double t = 0.0;
    bool transversal = true;
};

/// Hypersurface M^n in R^{n+1} that can count its intersections with rays
/// from the origin.
class Hypersurface {
public:
    virtual ~Hypersurface() = default;

    virtual std::string name() const = 0;
    /// Dimension of the space the surface lives in (n + 1).
    virtual int ambient_dim() const = 0;
    virtual bool contains_origin() const = 0;
    virtual std::vector<RayHit> ray_hits(const Vec& direction) const = 0;
};

/// Unit sphere S^n in R^{n+1}.
class RoundSphere final : public Hypersurface {
public:
    explicit RoundSphere(int n);
    std::string name() const override;
    int ambient_dim() const override { return n_ + 1; }
    bool contains_origin() const override { return false; }
    std::vector<RayHit> ray_hits(const Vec& direction) const override;

private:
    int n_;
};

/// S^n x R^m realized in R^{n+m+1} as {|first n+1 coordinates| = 1}.
class SphereCylinder final : public Hypersurface {
public:
    SphereCylinder(int n, int m);
    std::string name() const override;
    int ambient_dim() const override { return n_ + m_ + 1; }
    bool contains_origin() const override { return false; }
    std::vector<RayHit> ray_hits(const Vec& direction) const override;

    int sphere_dim() const { return n_; }
    int line_dim() const { return m_; }

private:
    int n_;
    int m_;
};

/// Level set {F = 0}. Ray intersections are found by sampling F along the ray
/// out to `reach`, bisecting sign changes, and probing near-zero minima of |F|
/// for tangential contact.
class ImplicitSurface final : public Hypersurface {
public:
    using ScalarFn = std::function<double(const Vec&)>;
    using GradientFn = std::function<Vec(const Vec&)>;

    ImplicitSurface(std::string name, int ambient_dim, ScalarFn value, GradientFn gradient,
                    double reach, int ray_samples = 4096);

    std::string name() const override { return name_; }
    int ambient_dim() const override { return dim_; }
    bool contains_origin() const override;
    std::vector<RayHit> ray_hits(const Vec& direction) const override;

private:
    std::string name_;
    int dim_;
    ScalarFn value_;
    GradientFn gradient_;
    double reach_;
    int ray_samples_;
};

/// Torus of revolution about the z-axis of R^3, centered at the origin.
std::shared_ptr<const Hypersurface> make_torus(double major_radius, double minor_radius);

/// Result of the sampled ray test. `witness` holds the first offending
/// direction when the surface is not visible.
struct VisibilityReport {
    bool visible = true;
    std::optional<Vec> witness;
    std::vector<RayHit> witness_hits;
    int rays_checked = 0;
};

/// Checks that every sampled ray from the origin meets `surface` at most once
/// and transversally. Coordinate axes and their pairwise diagonals are probed
/// first, then `samples` seeded random directions. A `visible` answer is a
/// probabilistic certificate only.
VisibilityReport visibility_check(const Hypersurface& surface, int samples, std::uint64_t seed);

enum class AmbientKind { Euclidean, Sphere, Visible };

/// Which linking formula applies. `dim` is N for Euclidean space and n for
/// the sphere / visible hypersurface M^n in R^{n+1}.
struct AmbientSpace {
    AmbientKind kind = AmbientKind::Euclidean;
    int dim = 3;
    std::shared_ptr<const Hypersurface> surface;

    static AmbientSpace euclidean(int N);
    static AmbientSpace sphere(int n);
    static AmbientSpace visible(std::shared_ptr<const Hypersurface> surface);

    /// Dimension of the Euclidean space the submanifolds are written in.
    int embedding_dim() const;
    /// Throws DimensionError unless k + l matches the applicable formula.
    void check_dimensions(int k, int l) const;
    std::string describe() const;
};

}  // namespace linkint
