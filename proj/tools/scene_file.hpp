#pragma once

#include "linkint/integrator.hpp"
#include "linkint/scenes.hpp"

#include <optional>
#include <string>

namespace linkint::cli {

/// Malformed scene file. `where` is "line L, column C" for syntax errors and
/// a field path such as "manifolds[1].orientation" otherwise.
class SceneFileError : public Error {
public:
    SceneFileError(const std::string& where, const std::string& message)
        : Error(where + ": " + message), where_(where) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

struct SceneFile {
    Scene scene;
    QuadratureSpec quadrature;
    double snap_tol = 0.1;
    std::optional<CapChain> cap;  ///< Selected cap for K, if the scene has one.
};

/// Parses a JSON scene file. Relative CSV paths resolve against the file's
/// directory.
SceneFile load_scene_file(const std::string& path);
SceneFile parse_scene_text(const std::string& text, const std::string& base_dir = ".");

/// Hypersurface from a name such as "sphere(2)", "sphere_cylinder(2,1)",
/// "torus(2,0.5)".
std::shared_ptr<const Hypersurface> surface_from_name(const std::string& name);

}  // namespace linkint::cli
