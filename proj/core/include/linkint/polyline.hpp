#pragma once

#include "linkint/submanifold.hpp"

#include <istream>
#include <string>
#include <vector>

namespace linkint {

/// Closed polygon through `vertices` as a curve with one linear chart per
/// edge, s in [0, 1]. Labels are "<label>/seg00000", ... so label order
/// matches edge order.
ParamSubmanifold polyline_curve(const std::string& label, const std::vector<Vec>& vertices,
                                int orientation = 1);

/// Reads polyline CSV: one row per vertex, N numeric columns, an optional
/// non-numeric header row. A final row repeating the first vertex is
/// dropped. Throws InvalidSceneError with the offending line number.
std::vector<Vec> read_polyline_csv(std::istream& in);
std::vector<Vec> read_polyline_csv_file(const std::string& path);

}  // namespace linkint
