#pragma once

#include <string>
#include <vector>

#include "tropenum/broken.hpp"
#include "tropenum/tropcurve.hpp"

namespace tropenum {

// Coordinates are printed with six fixed decimals so output is byte-stable.
std::string render_diagram_svg(const Fan& fan, const ScatteringDiagram& d, const std::vector<BrokenLine>& lines = {});
std::string render_curves_svg(const std::vector<ParamTropCurve>& curves, const std::vector<RatVec2>& points);

}  // namespace tropenum
