#include "zonoreach/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

namespace zonoreach {

namespace {

std::string fmt(double v) {
  char buffer[48];
  std::snprintf(buffer, sizeof(buffer), "%.3f", v);
  return buffer;
}

}  // namespace

std::string render_svg(const std::vector<SvgSeries>& series, int width, int height) {
  require_param(width > 0 && height > 0, "render_svg: canvas must be positive.");

  // Data bounds over all polygons, with a 10% margin.
  double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
  double hi_x = -lo_x, hi_y = -lo_y;
  for (const SvgSeries& s : series) {
    for (const Eigen::Vector2d& v : s.polygon) {
      lo_x = std::min(lo_x, v.x());
      hi_x = std::max(hi_x, v.x());
      lo_y = std::min(lo_y, v.y());
      hi_y = std::max(hi_y, v.y());
    }
  }
  if (!(lo_x <= hi_x)) {  // no points at all
    lo_x = lo_y = -1.0;
    hi_x = hi_y = 1.0;
  }
  const double span_x = std::max(hi_x - lo_x, 1e-12);
  const double span_y = std::max(hi_y - lo_y, 1e-12);
  lo_x -= 0.1 * span_x;
  hi_x += 0.1 * span_x;
  lo_y -= 0.1 * span_y;
  hi_y += 0.1 * span_y;

  const auto map_x = [&](double x) {
    return (x - lo_x) / (hi_x - lo_x) * static_cast<double>(width);
  };
  const auto map_y = [&](double y) {  // SVG y grows downward
    return (1.0 - (y - lo_y) / (hi_y - lo_y)) * static_cast<double>(height);
  };

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                    std::to_string(width) + "\" height=\"" + std::to_string(height) +
                    "\" viewBox=\"0 0 " + std::to_string(width) + " " +
                    std::to_string(height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (const SvgSeries& s : series) {
    if (s.polygon.empty()) continue;
    out += "<path d=\"";
    for (std::size_t i = 0; i < s.polygon.size(); ++i) {
      out += i == 0 ? "M " : "L ";
      out += fmt(map_x(s.polygon[i].x())) + " " + fmt(map_y(s.polygon[i].y())) + " ";
    }
    out += "Z\" stroke=\"" + s.color + "\" stroke-width=\"1.5\" fill=\"";
    out += s.fill ? s.color + "\" fill-opacity=\"0.25\"" : std::string("none\"");
    out += "/>\n";
  }

  // Legend, one line per series.
  int line = 0;
  for (const SvgSeries& s : series) {
    const int y = 20 + 18 * line++;
    out += "<line x1=\"12\" y1=\"" + std::to_string(y - 4) + "\" x2=\"36\" y2=\"" +
           std::to_string(y - 4) + "\" stroke=\"" + s.color + "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"42\" y=\"" + std::to_string(y) +
           "\" font-family=\"monospace\" font-size=\"12\">" + s.label + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace zonoreach
