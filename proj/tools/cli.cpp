#include "cli.hpp"

#include "scene_file.hpp"

#include "linkint/ambient.hpp"
#include "linkint/checks.hpp"
#include "linkint/cone.hpp"
#include "linkint/kernel.hpp"
#include "linkint/linking.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace linkint::cli {

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string g12(double v) { return fmt("%.12g", v); }
std::string g17(double v) { return fmt("%.17g", v); }
std::string g2(double v) { return fmt("%.2g", v); }

struct Overrides {
    int order = 0;
    int depth = -1;
    double snap_tol = 0.0;
    int workers = 0;
};

void apply(const Overrides& o, SceneFile& file) {
    if (o.order > 0) file.quadrature.base_order = o.order;
    if (o.depth >= 0) file.quadrature.max_subdivision_depth = o.depth;
    if (o.snap_tol > 0.0) file.snap_tol = o.snap_tol;
    file.quadrature.workers = o.workers;
    file.quadrature.validate();
    if (!(file.snap_tol > 0.0 && file.snap_tol < 0.5))
        throw std::invalid_argument("--snap-tol must lie in (0, 0.5)");
}

/// Writes to `path`, or to `fallback` when path is empty.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw InvalidSceneError("cannot write '" + path + "'");
            os_ = &file_;
        }
    }
    std::ostream& operator*() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

int cmd_link(const std::string& path, const Overrides& o, const std::string& out_csv, bool timing,
             std::ostream& out, std::ostream& err) {
    SceneFile file = load_scene_file(path);
    apply(o, file);
    const IntegralResult r = linking_number(file.scene, file.quadrature);
    const SnapResult snap = snap_integer(r.value, file.snap_tol);

    out << "scene           " << file.scene.name << "\n"
        << "ambient         " << file.scene.ambient.describe() << "\n"
        << "dimensions      k = " << file.scene.K.dim() << ", l = " << file.scene.L.dim() << "\n"
        << "value           " << g12(r.value) << "\n"
        << "error_estimate  " << g2(r.error_estimate) << "\n"
        << "snapped         " << r.snapped << "\n"
        << "residual        " << g2(r.residual) << "\n"
        << "node_count      " << r.node_count << "\n"
        << "tiles           " << r.tiles << " (deepest level " << r.deepest_level << ")\n";
    if (timing) out << "wall_time       " << fmt("%.3f", r.wall_time) << " s\n";
    if (r.accuracy_warning)
        err << "warning: some tiles missed the error budget at the maximum subdivision depth\n";
    if (!out_csv.empty()) {
        Sink sink(out_csv, out);
        *sink << "scene,ambient,value,error_estimate,snapped,residual,node_count\n"
              << file.scene.name << ',' << file.scene.ambient.describe() << ',' << g17(r.value) << ','
              << g17(r.error_estimate) << ',' << r.snapped << ',' << g17(r.residual) << ','
              << r.node_count << "\n";
    }
    if (!snap.accepted) {
        out << "Lk rejected: residual " << g2(snap.residual) << " exceeds snap tolerance "
            << g2(file.snap_tol) << "\n";
        return kExitRejected;
    }
    out << "Lk = " << snap.value << " (residual " << g2(snap.residual) << ")\n";
    return kExitOk;
}

int cmd_convergence(const std::string& path, const std::vector<double>& radii, const Overrides& o,
                    const std::string& out_csv, std::ostream& out, std::ostream& err) {
    SceneFile file = load_scene_file(path);
    apply(o, file);
    if (file.scene.ambient.kind == AmbientKind::Euclidean)
        throw InvalidSceneError("convergence needs a sphere or visible ambient");
    if (!file.cap) throw InvalidSceneError("scene '" + file.scene.name + "' has no registered cap for K");
    if (radii.empty()) throw InvalidSceneError("no radii given");

    const double reference = linking_number(file.scene, file.quadrature).value;
    Sink sink(out_csv, out);
    *sink << "R,total,trunk,cap,abs_error_vs_reference\n";
    std::vector<double> lr, lc;
    for (double R : radii) {
        const auto cone = cone_truncate(file.scene.K, *file.cap, R);
        const auto r = cone_truncated_linking(cone, file.scene.L, file.quadrature);
        *sink << g17(R) << ',' << g17(r.total.value) << ',' << g17(r.trunk.value) << ','
              << g17(r.cap.value) << ',' << g17(std::abs(r.total.value - reference)) << "\n";
        if (r.cap.value != 0.0) {
            lr.push_back(std::log(R));
            lc.push_back(std::log(std::abs(r.cap.value)));
        }
        if (r.total.accuracy_warning) err << "warning: accuracy budget missed at R = " << g12(R) << "\n";
    }
    if (!out_csv.empty()) {
        out << "reference       " << g12(reference) << "\n";
        if (lr.size() >= 2) {
            double mx = 0, my = 0;
            for (std::size_t i = 0; i < lr.size(); ++i) mx += lr[i], my += lc[i];
            mx /= lr.size();
            my /= lr.size();
            double sxy = 0, sxx = 0;
            for (std::size_t i = 0; i < lr.size(); ++i) {
                sxy += (lr[i] - mx) * (lc[i] - my);
                sxx += (lr[i] - mx) * (lr[i] - mx);
            }
            if (sxx > 0.0) out << "cap slope       " << fmt("%.4f", sxy / sxx) << "\n";
        }
        out << "wrote           " << out_csv << "\n";
    }
    return kExitOk;
}

int cmd_check(const std::string& name, std::uint64_t seed, int samples, std::ostream& out) {
    const CheckReport r = run_check(name, seed, samples);
    out << "check " << r.name << ": max deviation " << g2(r.max_deviation) << " (tolerance " << g2(r.tolerance)
        << ", " << r.cases << " cases) " << (r.passed ? "PASS" : "FAIL") << "\n";
    return r.passed ? kExitOk : kExitRejected;
}

int cmd_omega_table(const std::vector<int>& ks, const std::vector<int>& ls, int points, int order,
                    const std::string& out_csv, std::ostream& out) {
    if (points < 2) throw std::invalid_argument("--points must be >= 2");
    if (order < 1) throw std::invalid_argument("--order must be >= 1");
    Sink sink(out_csv, out);
    *sink << "k,l,alpha,omega\n";
    for (int k : ks) {
        for (int l : ls) {
            if (k < 0 || l < 0) throw std::invalid_argument("k and l must be >= 0");
            for (int i = 0; i < points; ++i) {
                const double a = std::numbers::pi * i / (points - 1);
                *sink << k << ',' << l << ',' << g17(a) << ',' << g17(omega(k, l, a, order)) << "\n";
            }
        }
    }
    return kExitOk;
}

int cmd_visibility(const std::string& surface, int samples, std::uint64_t seed, std::ostream& out) {
    const auto s = surface_from_name(surface);
    const VisibilityReport r = visibility_check(*s, samples, seed);
    if (r.visible) {
        out << s->name() << ": visible (" << r.rays_checked << " rays checked)\n";
        return kExitOk;
    }
    out << s->name() << ": not visible; witness direction (";
    for (Eigen::Index i = 0; i < r.witness->size(); ++i) out << (i ? ", " : "") << g12((*r.witness)(i));
    out << ") meets the surface " << r.witness_hits.size() << " time(s)";
    for (const auto& h : r.witness_hits)
        out << (h.transversal ? "" : " [tangential]") << " at t = " << g12(h.t);
    out << "\n";
    return kExitRejected;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Linking numbers of submanifolds via Gauss-type integrals", "linkint"};
    app.require_subcommand(1);
    Overrides o;
    std::string out_path;
    std::uint64_t seed = 1;
    int samples = 0;

    std::string scene_path;
    bool timing = false;
    auto* link = app.add_subcommand("link", "Compute the linking number of a scene file");
    link->add_option("scene", scene_path, "Scene file (JSON)")->required();
    link->add_option("--order", o.order, "Gauss-Legendre nodes per axis");
    link->add_option("--depth", o.depth, "Maximum subdivision depth");
    link->add_option("--snap-tol", o.snap_tol, "Integer snap tolerance in (0, 0.5)");
    link->add_option("--workers", o.workers, "Worker threads (0 = hardware)");
    link->add_option("--out", out_path, "Also write a CSV row here");
    link->add_flag("--timing", timing, "Report wall time");

    std::vector<double> radii{2, 4, 8, 16, 32};
    auto* conv = app.add_subcommand("convergence", "Truncated-cone study over a radius sweep");
    conv->add_option("scene", scene_path, "Scene file (JSON)")->required();
    conv->add_option("--radii", radii, "Truncation radii")->delimiter(',');
    conv->add_option("--order", o.order, "Gauss-Legendre nodes per axis");
    conv->add_option("--depth", o.depth, "Maximum subdivision depth");
    conv->add_option("--workers", o.workers, "Worker threads (0 = hardware)");
    conv->add_option("--out", out_path, "CSV output (stdout if omitted)");

    std::string check_name;
    int check_samples = 50;
    auto* check = app.add_subcommand("check", "Run an identity suite");
    check->add_option("which", check_name, "invariance | pullback | ray-reduction | omega | fact1")->required();
    check->add_option("--seed", seed, "Random seed");
    check->add_option("--samples", check_samples, "Random cases");

    std::vector<int> ks{1}, ls{1};
    int points = 181, omega_order = kOmegaOrder;
    auto* table = app.add_subcommand("omega-table", "Tabulate the angular kernel as CSV");
    table->add_option("--k", ks, "k values")->delimiter(',');
    table->add_option("--l", ls, "l values")->delimiter(',');
    table->add_option("--points", points, "Angles per (k, l) on [0, pi]");
    table->add_option("--order", omega_order, "Gauss-Legendre order");
    table->add_option("--out", out_path, "CSV output (stdout if omitted)");

    std::string surface;
    samples = 10000;
    auto* vis = app.add_subcommand("visibility", "Sampled ray test of a hypersurface");
    vis->add_option("surface", surface, "sphere(n) | sphere_cylinder(n,m) | torus(R,r)")->required();
    vis->add_option("--samples", samples, "Random rays");
    vis->add_option("--seed", seed, "Random seed");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*link) return cmd_link(scene_path, o, out_path, timing, out, err);
        if (*conv) return cmd_convergence(scene_path, radii, o, out_path, out, err);
        if (*check) return cmd_check(check_name, seed, check_samples, out);
        if (*table) return cmd_omega_table(ks, ls, points, omega_order, out_path, out);
        if (*vis) return cmd_visibility(surface, samples, seed, out);
    } catch (const NearSingularError& e) {
        err << "error: " << e.what() << "\n";
        return kExitSingular;
    } catch (const SceneFileError& e) {
        err << "error: scene file: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DimensionError& e) {
        err << "error: dimension: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace linkint::cli
