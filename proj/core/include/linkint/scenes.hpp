#pragma once

#include "linkint/ambient.hpp"
#include "linkint/submanifold.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace linkint {

/// A (k+1)-chain bounded by K, used to cap the truncated cone. Its boundary
/// is the face of every chart where parameter `boundary_axis` sits at the
/// upper end of its interval.
struct CapChain {
    ParamSubmanifold chain;
    int boundary_axis = 0;
};

/// Two disjoint oriented submanifolds in a named ambient space.
struct Scene {
    std::string name;
    ParamSubmanifold K;
    ParamSubmanifold L;
    AmbientSpace ambient;
    std::optional<CapChain> cap_upper;  ///< Registered caps for K, if any.
    std::optional<CapChain> cap_lower;
};

using SceneParams = std::map<std::string, double>;

/// Names accepted by builtin_scene().
const std::vector<std::string>& builtin_scene_names();

/// Built-in scene families:
///   hopf_great_circles      two Hopf fibres in S^3 (param phi, default pi/3)
///   great_spheres           unit S^k and S^l in complementary coordinates of S^{k+l+1} (k, l)
///   s2xr_equator_poles      equator of S^2 x {0} vs. the north (+) and south (-) pole lines
///   r3_hopf_circles         unit circle in the xy-plane vs. circle in the xz-plane centered (offset, 0, 0)
///   r3_split_unlink         unit circles in parallel planes `separation` apart
///   rn_meridional_spheres   unit S^k vs. a meridional l-sphere of `radius` around e_1 in R^{k+l+1}
///   s3_split_circles        two small circles of angular `radius` in disjoint caps of S^3
/// Throws InvalidSceneError on unknown names or parameters, DimensionError
/// on bad dimensions.
Scene builtin_scene(const std::string& name, const SceneParams& params = {});

/// Chart of the round k-sphere (hyperspherical coordinates) embedded in R^N:
/// center + radius * (unit sphere in the listed coordinates). Oriented so that
/// det(x - center, dx) > 0 in those coordinates, i.e. as the boundary of the ball.
Chart round_sphere_chart(const std::string& label, int k, int N, const std::vector<int>& coords,
                         const Vec& center, double radius);

/// Round k-sphere as a submanifold (two signed points when k = 0).
ParamSubmanifold round_sphere(const std::string& label, int k, int N,
                              const std::vector<int>& coords, const Vec& center, double radius);

/// Hemisphere of the great (k+1)-sphere spanned by a unit great k-sphere and
/// the unit vector e_{lift_axis}: one chart z(psi, u) = sin(psi) x(u) +- cos(psi) e_axis,
/// psi in [0, pi/2], per chart of the sphere. Its boundary (psi = pi/2) is
/// the given sphere with its orientation.
CapChain hemisphere_cap(const ParamSubmanifold& great_sphere, int lift_axis, bool upper);

/// Circle of angular radius `radius` on the unit 3-sphere around the unit
/// vector `center`, lying in span(center, u, v) with u, v orthonormal to it.
ParamSubmanifold spherical_small_circle(const std::string& label, const Vec& center, const Vec& u,
                                        const Vec& v, double radius);

/// Spherical disk of angular radius `radius` around `center` bounded by
/// spherical_small_circle(center, u, v, radius), parameters (psi, t).
CapChain spherical_disk_cap(const Vec& center, const Vec& u, const Vec& v, double radius);

}  // namespace linkint
