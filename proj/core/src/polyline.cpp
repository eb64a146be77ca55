#include "linkint/polyline.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace linkint {

ParamSubmanifold polyline_curve(const std::string& label, const std::vector<Vec>& vertices,
                                int orientation) {
    if (vertices.size() < 3) throw InvalidSceneError("polyline '" + label + "' needs at least 3 vertices");
    const auto N = vertices.front().size();
    std::vector<Chart> charts;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const Vec a = vertices[i];
        const Vec b = vertices[(i + 1) % vertices.size()];
        if (b.size() != N) throw DimensionError("polyline '" + label + "': vertices differ in dimension");
        const Vec edge = b - a;
        if (!(edge.norm() > 0.0)) throw InvalidSceneError("polyline '" + label + "': repeated vertex");
        char suffix[16];
        std::snprintf(suffix, sizeof suffix, "/seg%05zu", i);
        Chart::MapFn map = [a, edge](std::span<const double> s) -> Vec { return a + s[0] * edge; };
        Chart::JacobianFn jac = [edge](std::span<const double>) -> Frame { return Frame(edge); };
        charts.emplace_back(label + suffix, static_cast<int>(N), std::vector<Interval>{{0.0, 1.0}},
                            std::move(map), std::move(jac), orientation);
    }
    return ParamSubmanifold(std::move(charts));
}

std::vector<Vec> read_polyline_csv(std::istream& in) {
    std::vector<Vec> rows;
    std::string line;
    int line_no = 0;
    Eigen::Index width = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::vector<double> values;
        bool numeric = true;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) {
            const auto b = field.find_first_not_of(" \t");
            const auto e = field.find_last_not_of(" \t");
            if (b == std::string::npos) {
                numeric = false;
                break;
            }
            double v = 0.0;
            const char* first = field.data() + b;
            const char* last = field.data() + e + 1;
            const auto [ptr, ec] = std::from_chars(first, last, v);
            if (ec != std::errc{} || ptr != last) {
                numeric = false;
                break;
            }
            values.push_back(v);
        }
        if (!numeric) {
            if (rows.empty() && width < 0) {
                width = 0;  // header row
                continue;
            }
            throw InvalidSceneError("polyline CSV line " + std::to_string(line_no) + ": non-numeric field");
        }
        const auto n = static_cast<Eigen::Index>(values.size());
        if (n < 2 || n > kMaxDim)
            throw InvalidSceneError("polyline CSV line " + std::to_string(line_no) +
                                    ": expected 2 to 16 columns");
        if (!rows.empty() && n != rows.front().size())
            throw InvalidSceneError("polyline CSV line " + std::to_string(line_no) + ": column count changed");
        Vec v(n);
        for (Eigen::Index i = 0; i < n; ++i) v(i) = values[static_cast<std::size_t>(i)];
        rows.push_back(v);
    }
    if (rows.size() > 1 && (rows.back() - rows.front()).norm() == 0.0) rows.pop_back();
    if (rows.size() < 3) throw InvalidSceneError("polyline CSV needs at least 3 distinct vertices");
    return rows;
}

std::vector<Vec> read_polyline_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidSceneError("cannot open polyline CSV '" + path + "'");
    return read_polyline_csv(in);
}

}  // namespace linkint
