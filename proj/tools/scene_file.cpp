#include "scene_file.hpp"

#include "linkint/polyline.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace linkint::cli {

namespace {

using nlohmann::json;

void only_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
    if (!obj.is_object()) throw SceneFileError(where, "expected an object");
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key)) throw SceneFileError(where + "." + key, "unknown key");
}

double number(const json& obj, const std::string& key, const std::string& where) {
    const auto& v = obj.at(key);
    if (!v.is_number()) throw SceneFileError(where + "." + key, "expected a number");
    return v.get<double>();
}

int integer(const json& obj, const std::string& key, const std::string& where) {
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) throw SceneFileError(where + "." + key, "expected an integer");
    return v.get<int>();
}

std::string text(const json& obj, const std::string& key, const std::string& where) {
    const auto& v = obj.at(key);
    if (!v.is_string()) throw SceneFileError(where + "." + key, "expected a string");
    return v.get<std::string>();
}

AmbientSpace parse_ambient(const json& a) {
    const std::string where = "ambient";
    only_keys(a, where, {"kind", "n", "N", "surface"});
    if (!a.contains("kind")) throw SceneFileError(where + ".kind", "missing");
    const std::string kind = text(a, "kind", where);
    if (kind == "euclidean") {
        if (!a.contains("N")) throw SceneFileError(where + ".N", "missing");
        if (a.contains("n") || a.contains("surface"))
            throw SceneFileError(where, "euclidean ambient takes only N");
        const int N = integer(a, "N", where);
        if (N < 2 || N > kMaxDim) throw SceneFileError(where + ".N", "must lie in [2, 16]");
        return AmbientSpace::euclidean(N);
    }
    if (kind == "sphere") {
        if (!a.contains("n")) throw SceneFileError(where + ".n", "missing");
        if (a.contains("N") || a.contains("surface")) throw SceneFileError(where, "sphere ambient takes only n");
        const int n = integer(a, "n", where);
        if (n < 1 || n + 1 > kMaxDim) throw SceneFileError(where + ".n", "must lie in [1, 15]");
        return AmbientSpace::sphere(n);
    }
    if (kind == "visible") {
        if (!a.contains("surface")) throw SceneFileError(where + ".surface", "missing");
        if (a.contains("N")) throw SceneFileError(where, "visible ambient takes n and surface");
        std::shared_ptr<const Hypersurface> surface;
        try {
            surface = surface_from_name(text(a, "surface", where));
        } catch (const Error& e) {
            throw SceneFileError(where + ".surface", e.what());
        }
        AmbientSpace amb = AmbientSpace::visible(surface);
        if (a.contains("n") && integer(a, "n", where) != amb.dim)
            throw SceneFileError(where + ".n", "does not match the surface dimension " + std::to_string(amb.dim));
        return amb;
    }
    throw SceneFileError(where + ".kind", "expected euclidean, sphere or visible");
}

struct Entry {
    ParamSubmanifold manifold;
    std::optional<CapChain> cap_upper, cap_lower;
};

Entry parse_manifold(const json& m, int index, const std::string& base_dir) {
    const std::string where = "manifolds[" + std::to_string(index) + "]";
    only_keys(m, where, {"builtin", "params", "part", "csv", "dim", "orientation", "multiplicity"});
    const bool builtin = m.contains("builtin"), csv = m.contains("csv");
    if (builtin == csv) throw SceneFileError(where, "needs exactly one of builtin, csv");

    int orientation = 1;
    if (m.contains("orientation")) {
        orientation = integer(m, "orientation", where);
        if (orientation != 1 && orientation != -1) throw SceneFileError(where + ".orientation", "must be 1 or -1");
    }
    int multiplicity = 1;
    if (m.contains("multiplicity")) {
        multiplicity = integer(m, "multiplicity", where);
        if (multiplicity == 0) throw SceneFileError(where + ".multiplicity", "must be nonzero");
    }

    std::optional<Entry> entry;
    if (builtin) {
        if (m.contains("dim")) throw SceneFileError(where + ".dim", "only valid with csv");
        SceneParams params;
        if (m.contains("params")) {
            const auto& p = m.at("params");
            if (!p.is_object()) throw SceneFileError(where + ".params", "expected an object");
            for (const auto& [key, value] : p.items()) {
                if (!value.is_number()) throw SceneFileError(where + ".params." + key, "expected a number");
                params[key] = value.get<double>();
            }
        }
        std::string part = index == 0 ? "K" : "L";
        if (m.contains("part")) {
            part = text(m, "part", where);
            if (part != "K" && part != "L") throw SceneFileError(where + ".part", "must be K or L");
        }
        Scene s = [&] {
            try {
                return builtin_scene(text(m, "builtin", where), params);
            } catch (const InvalidSceneError& e) {
                throw SceneFileError(where + ".builtin", e.what());
            }
        }();
        if (part == "K") entry = Entry{s.K, s.cap_upper, s.cap_lower};
        else entry = Entry{s.L, std::nullopt, std::nullopt};
    } else {
        if (m.contains("params") || m.contains("part"))
            throw SceneFileError(where, "params and part are only valid with builtin");
        const int dim = m.contains("dim") ? integer(m, "dim", where) : 1;
        if (dim != 1) throw SceneFileError(where + ".dim", "polyline CSV supports dim 1 only");
        std::filesystem::path path = text(m, "csv", where);
        if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
        try {
            entry = Entry{polyline_curve(index == 0 ? "K" : "L", read_polyline_csv_file(path.string())),
                          std::nullopt, std::nullopt};
        } catch (const InvalidSceneError& e) {
            throw SceneFileError(where + ".csv", e.what());
        }
    }
    if (orientation < 0) {
        entry->manifold = entry->manifold.reversed();
        for (auto* cap : {&entry->cap_upper, &entry->cap_lower})
            if (*cap) (*cap)->chain = (*cap)->chain.reversed();
    }
    entry->manifold = entry->manifold.with_multiplicity(entry->manifold.multiplicity() * multiplicity);
    return *entry;
}

}  // namespace

std::shared_ptr<const Hypersurface> surface_from_name(const std::string& name) {
    static const std::regex pattern(R"(\s*([a-z_]+)\s*\(([^)]*)\)\s*)");
    std::smatch m;
    if (!std::regex_match(name, m, pattern))
        throw InvalidSurfaceError("surface '" + name + "' is not of the form name(args)");
    std::vector<double> args;
    std::stringstream ss(m[2].str());
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            args.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InvalidSurfaceError("surface '" + name + "': bad argument '" + item + "'");
        }
    }
    auto as_int = [&](double v) {
        if (v != static_cast<int>(v) || v < 0) throw InvalidSurfaceError("surface '" + name + "': expected a non-negative integer");
        return static_cast<int>(v);
    };
    const std::string kind = m[1].str();
    if (kind == "sphere" && args.size() == 1) return std::make_shared<RoundSphere>(as_int(args[0]));
    if (kind == "sphere_cylinder" && args.size() == 2)
        return std::make_shared<SphereCylinder>(as_int(args[0]), as_int(args[1]));
    if (kind == "torus" && args.size() == 2) return make_torus(args[0], args[1]);
    throw InvalidSurfaceError("unknown surface '" + name +
                              "' (expected sphere(n), sphere_cylinder(n,m) or torus(R,r))");
}

SceneFile parse_scene_text(const std::string& source, const std::string& base_dir) {
    json doc;
    try {
        doc = json::parse(source);
    } catch (const json::parse_error& e) {
        const auto upto = std::min<std::size_t>(e.byte, source.size());
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i + 1 < upto; ++i) {
            if (source[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::string msg = e.what();
        if (const auto pos = msg.find("parse error"); pos != std::string::npos) msg = msg.substr(pos);
        throw SceneFileError("line " + std::to_string(line) + ", column " + std::to_string(column), msg);
    }
    only_keys(doc, "scene", {"name", "ambient", "manifolds", "quadrature", "snap_tol", "cap"});
    if (!doc.contains("ambient")) throw SceneFileError("ambient", "missing");
    if (!doc.contains("manifolds")) throw SceneFileError("manifolds", "missing");
    const auto& ms = doc.at("manifolds");
    if (!ms.is_array() || ms.size() != 2) throw SceneFileError("manifolds", "expected exactly two entries");

    const Entry first = parse_manifold(ms[0], 0, base_dir);
    const Entry second = parse_manifold(ms[1], 1, base_dir);
    SceneFile out{Scene{doc.contains("name") ? text(doc, "name", "scene") : std::string("scene"),
                        first.manifold, second.manifold, parse_ambient(doc.at("ambient")),
                        first.cap_upper, first.cap_lower},
                  QuadratureSpec{}, 0.1, std::nullopt};

    if (doc.contains("quadrature")) {
        const auto& q = doc.at("quadrature");
        only_keys(q, "quadrature", {"base_order", "max_depth", "refine_threshold"});
        if (q.contains("base_order")) out.quadrature.base_order = integer(q, "base_order", "quadrature");
        if (q.contains("max_depth")) out.quadrature.max_subdivision_depth = integer(q, "max_depth", "quadrature");
        if (q.contains("refine_threshold"))
            out.quadrature.refine_threshold = number(q, "refine_threshold", "quadrature");
        try {
            out.quadrature.validate();
        } catch (const std::invalid_argument& e) {
            throw SceneFileError("quadrature", e.what());
        }
    }
    if (doc.contains("snap_tol")) {
        out.snap_tol = number(doc, "snap_tol", "scene");
        if (!(out.snap_tol > 0.0 && out.snap_tol < 0.5)) throw SceneFileError("snap_tol", "must lie in (0, 0.5)");
    }
    std::string cap = "upper";
    if (doc.contains("cap")) {
        cap = text(doc, "cap", "scene");
        if (cap != "upper" && cap != "lower") throw SceneFileError("cap", "must be upper or lower");
    }
    out.cap = cap == "upper" ? out.scene.cap_upper : out.scene.cap_lower;
    return out;
}

SceneFile load_scene_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SceneFileError(path, "cannot open scene file");
    std::stringstream buf;
    buf << in.rdbuf();
    const auto dir = std::filesystem::path(path).parent_path();
    return parse_scene_text(buf.str(), dir.empty() ? "." : dir.string());
}

}  // namespace linkint::cli
