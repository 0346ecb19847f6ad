#pragma once

#include <string>
#include <vector>

#include "zonoreach/common.hpp"

namespace zonoreach {

/// One polygon outline in a figure.
struct SvgSeries {
  std::string label;
  std::string color;  ///< CSS color, e.g. "#d62728"
  bool fill = false;
  std::vector<Eigen::Vector2d> polygon;
};

/// Renders polygon outlines with a legend into a standalone SVG document.
/// Output is deterministic: coordinates are written with fixed precision
/// and series are rendered in the given order.
std::string render_svg(const std::vector<SvgSeries>& series, int width = 640,
                       int height = 480);

}  // namespace zonoreach
