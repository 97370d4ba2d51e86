#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "homolink/scenario.hpp"

// Deterministic SVG 1.1 rendering of plan results: blocked boxes, skeleton
// marks, one colored polyline per class, legend with signatures and costs.
// 2D scenes draw directly; higher dimensions project onto an axis pair.

namespace homolink {
namespace svg {

inline const std::vector<std::string>& palette() {
  static const std::vector<std::string> colors{
      "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
      "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};
  return colors;
}

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace svg

/// Axis-pair projection: axes are 1-based scene axes (e.g. {1,2} for xy).
inline std::string emit_svg(const Scenario& scenario, const ResultBundle& r,
                            std::array<int, 2> axes = {1, 2}) {
  const int D = scenario.D;
  if (axes[0] < 1 || axes[0] > D || axes[1] < 1 || axes[1] > D ||
      axes[0] == axes[1])
    throw std::invalid_argument("svg: invalid projection axes");
  if (D > 2 && axes[0] == 1 && axes[1] == 2 && !scenario.grid)
    throw std::invalid_argument("svg: projection requires a grid scene");
  const int ax = axes[0] - 1, ay = axes[1] - 1;

  double x0 = -1, x1 = 1, y0 = -1, y1 = 1;
  if (scenario.grid) {
    x0 = scenario.grid->min[ax];
    x1 = scenario.grid->max[ax];
    y0 = scenario.grid->min[ay];
    y1 = scenario.grid->max[ay];
  }
  const double scale = 640.0 / std::max(x1 - x0, y1 - y0);
  const double w = (x1 - x0) * scale;
  const double h = (y1 - y0) * scale;
  const double legend_h = 22.0 * (r.classes.size() + 1);
  auto px = [&](double x) { return (x - x0) * scale; };
  auto py = [&](double y) { return h - (y - y0) * scale; };  // y up

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
     << svg::fmt(w) << "\" height=\"" << svg::fmt(h + legend_h)
     << "\" viewBox=\"0 0 " << svg::fmt(w) << " " << svg::fmt(h + legend_h)
     << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << svg::fmt(w) << "\" height=\""
     << svg::fmt(h) << "\" fill=\"#ffffff\" stroke=\"#000000\"/>\n";

  if (scenario.grid)
    for (const Box& b : scenario.grid->blocked) {
      const double bx = px(b.min[ax]);
      const double by = py(b.max[ay]);
      os << "<rect x=\"" << svg::fmt(bx) << "\" y=\"" << svg::fmt(by)
         << "\" width=\"" << svg::fmt((b.max[ax] - b.min[ax]) * scale)
         << "\" height=\"" << svg::fmt((b.max[ay] - b.min[ay]) * scale)
         << "\" fill=\"#bbbbbb\"/>\n";
    }

  // skeleton marks
  for (const auto& g : scenario.skeletons) {
    if (g.type == "point") {
      os << "<circle cx=\"" << svg::fmt(px(g.at[ax])) << "\" cy=\""
         << svg::fmt(py(g.at[ay]))
         << "\" r=\"4\" fill=\"#333333\"/>\n";
    } else if (g.type == "polyline-loop") {
      os << "<polyline fill=\"none\" stroke=\"#333333\" stroke-width=\"1.5\" "
            "stroke-dasharray=\"4 3\" points=\"";
      for (const Vec& p : g.points)
        os << svg::fmt(px(p[ax])) << ',' << svg::fmt(py(p[ay])) << ' ';
      if (g.closed && !g.points.empty())
        os << svg::fmt(px(g.points[0][ax])) << ','
           << svg::fmt(py(g.points[0][ay]));
      os << "\"/>\n";
    }
  }

  // per-class trajectories
  for (std::size_t i = 0; i < r.class_positions.size(); ++i) {
    const auto& color = svg::palette()[i % svg::palette().size()];
    os << "<polyline fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"2\" points=\"";
    for (const Vec& p : r.class_positions[i])
      os << svg::fmt(px(p[ax])) << ',' << svg::fmt(py(p[ay])) << ' ';
    os << "\"/>\n";
  }

  // legend
  os << "<text x=\"8\" y=\"" << svg::fmt(h + 16)
     << "\" font-family=\"monospace\" font-size=\"13\">classes: "
     << r.classes.size() << "</text>\n";
  for (std::size_t i = 0; i < r.classes.size(); ++i) {
    const double ly = h + 22.0 * (i + 1) + 16;
    const auto& color = svg::palette()[i % svg::palette().size()];
    os << "<line x1=\"8\" y1=\"" << svg::fmt(ly - 4) << "\" x2=\"40\" y2=\""
       << svg::fmt(ly - 4) << "\" stroke=\"" << color
       << "\" stroke-width=\"3\"/>\n";
    os << "<text x=\"48\" y=\"" << svg::fmt(ly)
       << "\" font-family=\"monospace\" font-size=\"13\">class "
       << r.classes[i].rank << "  c=(";
    for (std::size_t c = 0; c < r.classes[i].signature.values.size(); ++c)
      os << (c ? ", " : "") << svg::fmt(r.classes[i].signature.values[c]);
    os << ")  cost=" << svg::fmt(r.classes[i].cost) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace homolink
