#include <doctest.h>

#include "cli.hpp"
#include "scene_file.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using linkint::cli::run;

namespace {

const std::string kScenes = LINKINT_SCENE_DIR;

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_scene(const std::string& name, const std::string& body) {
    const auto path = std::filesystem::temp_directory_path() / ("linkint_test_" + name + ".json");
    std::ofstream(path) << body;
    return path.string();
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("link reports the Hopf linking number") {
    const auto r = invoke({"link", kScenes + "/hopf_great_circles.json"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "Lk = 1 (residual "));
    CHECK(contains(r.out, "error_estimate"));
    CHECK(contains(r.out, "node_count"));
    CHECK_FALSE(contains(r.out, "wall_time"));
    CHECK(contains(invoke({"link", kScenes + "/hopf_great_circles.json", "--timing"}).out, "wall_time"));
}

TEST_CASE("identical invocations give byte-identical reports") {
    const std::vector<std::string> args{"link", kScenes + "/s2xr_equator_poles.json", "--order", "24"};
    const auto a = invoke(args);
    auto b_args = args;
    b_args.insert(b_args.end(), {"--workers", "3"});
    const auto b = invoke(b_args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("exit codes of link") {
    const auto dim = invoke({"link", kScenes + "/dimension_mismatch.json"});
    CHECK(dim.code == 2);
    CHECK(contains(dim.err, "k + l"));

    const auto touch = invoke({"link", kScenes + "/r3_touching_circles.json"});
    CHECK(touch.code == 4);
    CHECK(contains(touch.err, "s = ("));
    CHECK(contains(touch.err, "t = ("));

    const auto rejected = invoke({"link", kScenes + "/r3_hopf_circles.json", "--snap-tol", "1e-30"});
    CHECK(rejected.code == 3);
    CHECK(contains(rejected.out, "rejected"));

    CHECK(invoke({"link", kScenes + "/no_such_file.json"}).code == 2);
    CHECK(invoke({"link", kScenes + "/hopf_great_circles.json", "--snap-tol", "0.7"}).code == 2);
    CHECK(invoke({"link", kScenes + "/hopf_great_circles.json", "--order", "1"}).code == 2);
}

TEST_CASE("link writes a CSV row") {
    const auto path = (std::filesystem::temp_directory_path() / "linkint_test_row.csv").string();
    CHECK(invoke({"link", kScenes + "/r3_split_unlink.json", "--out", path}).code == 0);
    std::ifstream in(path);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header == "scene,ambient,value,error_estimate,snapped,residual,node_count");
    CHECK(row.rfind("r3_split_unlink,R^3,", 0) == 0);
}

TEST_CASE("scene file diagnostics name the line or field") {
    const auto syntax = invoke({"link", temp_scene("syntax", "{\n  \"ambient\": {\"kind\": \"sphere\", \"n\": 3},\n  \"manifolds\": [,]\n}\n")});
    CHECK(syntax.code == 2);
    CHECK(contains(syntax.err, "line 3"));

    const auto typo = invoke({"link", temp_scene("typo", R"J({
      "ambient": {"kind": "sphere", "n": 3},
      "manifolds": [{"builtin": "hopf_great_circles"}, {"builtin": "hopf_great_circles"}],
      "quadrature": {"base_ordr": 16}
    })J")});
    CHECK(typo.code == 2);
    CHECK(contains(typo.err, "quadrature.base_ordr"));

    const auto orient = invoke({"link", temp_scene("orient", R"J({
      "ambient": {"kind": "sphere", "n": 3},
      "manifolds": [{"builtin": "hopf_great_circles", "orientation": 2}, {"builtin": "hopf_great_circles"}]
    })J")});
    CHECK(orient.code == 2);
    CHECK(contains(orient.err, "manifolds[0].orientation"));

    const auto one = invoke({"link", temp_scene("one", R"J({
      "ambient": {"kind": "sphere", "n": 3},
      "manifolds": [{"builtin": "hopf_great_circles"}]
    })J")});
    CHECK(one.code == 2);
    CHECK(contains(one.err, "exactly two"));

    const auto surface = invoke({"link", temp_scene("surface", R"J({
      "ambient": {"kind": "visible", "surface": "klein_bottle(2)"},
      "manifolds": [{"builtin": "s2xr_equator_poles"}, {"builtin": "s2xr_equator_poles"}]
    })J")});
    CHECK(surface.code == 2);
    CHECK(contains(surface.err, "ambient.surface"));
}

TEST_CASE("scene entries can flip orientation and set multiplicity") {
    const auto flipped = invoke({"link", temp_scene("flip", R"J({
      "ambient": {"kind": "visible", "n": 3, "surface": "sphere_cylinder(2,1)"},
      "manifolds": [{"builtin": "s2xr_equator_poles"},
                    {"builtin": "s2xr_equator_poles", "orientation": -1, "multiplicity": 3}]
    })J")});
    CHECK(flipped.code == 0);
    CHECK(contains(flipped.out, "Lk = -3 "));
}

TEST_CASE("polyline CSV scenes") {
    const auto r = invoke({"link", kScenes + "/torus_link_2_4.json"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "Lk = -2 "));
}

TEST_CASE("convergence study") {
    const auto path = (std::filesystem::temp_directory_path() / "linkint_test_conv.csv").string();
    const auto r = invoke({"convergence", kScenes + "/hopf_great_circles.json", "--radii", "2,4", "--out", path});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "cap slope"));
    std::ifstream in(path);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "R,total,trunk,cap,abs_error_vs_reference");
    CHECK(lines[1].rfind("2,", 0) == 0);

    const auto single = invoke({"convergence", kScenes + "/hopf_great_circles.json", "--radii", "5"});
    CHECK(single.code == 0);
    CHECK(std::count(single.out.begin(), single.out.end(), '\n') == 2);

    const auto split = invoke({"convergence", kScenes + "/s3_split_circles.json", "--radii", "2,16"});
    CHECK(split.code == 0);

    CHECK(invoke({"convergence", kScenes + "/r3_hopf_circles.json"}).code == 2);
    const auto no_cap = invoke({"convergence", temp_scene("nocap", R"J({
      "ambient": {"kind": "sphere", "n": 3},
      "manifolds": [{"builtin": "hopf_great_circles", "part": "L"}, {"builtin": "hopf_great_circles", "part": "K"}]
    })J")});
    CHECK(no_cap.code == 2);
    CHECK(contains(no_cap.err, "cap"));
}

TEST_CASE("check verbs") {
    for (const char* name : {"invariance", "pullback", "ray-reduction", "omega", "fact1"}) {
        CAPTURE(name);
        const auto r = invoke({"check", name, "--seed", "7", "--samples", "50"});
        CHECK(r.code == 0);
        CHECK(contains(r.out, "PASS"));
    }
    CHECK(invoke({"check", "bogus"}).code == 2);
}

TEST_CASE("omega table") {
    const auto r = invoke({"omega-table", "--k", "1,2", "--l", "1", "--points", "3"});
    CHECK(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "k,l,alpha,omega");
    std::getline(in, line);
    CHECK(line == "1,1,0,1.5707963267948966");
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 7);
}

TEST_CASE("visibility verb") {
    CHECK(invoke({"visibility", "sphere(3)", "--samples", "200"}).code == 0);
    CHECK(invoke({"visibility", "sphere_cylinder(2,1)", "--samples", "200"}).code == 0);
    const auto torus = invoke({"visibility", "torus(2,0.5)", "--samples", "200"});
    CHECK(torus.code == 3);
    CHECK(contains(torus.out, "not visible"));
    CHECK(invoke({"visibility", "blob(1)"}).code == 2);
}

TEST_CASE("usage errors") {
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({"link"}).code == 2);
    CHECK(invoke({"--help"}).code == 0);
}
