#pragma once

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "hypack/disk.hpp"

namespace hypack {

namespace detail {

inline double svgX(double x) { return 300.0 + 280.0 * x; }
inline double svgY(double y) { return 300.0 - 280.0 * y; }

inline const char* classColor(CurvatureClass c) {
  switch (c) {
    case CurvatureClass::Hypercycle: return "#1f77b4";
    case CurvatureClass::Horocycle: return "#2ca02c";
    case CurvatureClass::Circle: return "#d62728";
  }
  return "#000000";
}

}  // namespace detail

// Static debug rendering of one face in the Poincare disk: the three
// generalized circles (hypercycles clipped to the disk), the tangency
// points, and the face region shaded.
inline void renderConfigSvg(const ThreeCircleConfig& cfg, std::ostream& out) {
  DiskConfig d = configToDisk(cfg);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" "
         "viewBox=\"0 0 600 600\">\n";
  out << "  <defs><clipPath id=\"disk\"><circle cx=\"300\" cy=\"300\" r=\"280\"/>"
         "</clipPath></defs>\n";
  out << "  <rect width=\"600\" height=\"600\" fill=\"white\"/>\n";
  out << "  <circle cx=\"300\" cy=\"300\" r=\"280\" fill=\"none\" "
         "stroke=\"#888\" stroke-width=\"1.5\"/>\n";

  // face region: the three minor arcs between tangency points
  std::ostringstream path;
  auto q0 = d.tangency[0];
  path << "M " << detail::svgX(q0.x()) << ' ' << detail::svgY(q0.y());
  constexpr int legCycle[3] = {1, 2, 0};
  constexpr int legTo[3] = {1, 2, 0};
  for (int leg = 0; leg < 3; ++leg) {
    const DiskCircle& c = d.circles[legCycle[leg]];
    Eigen::Vector2d from = d.tangency[leg];
    Eigen::Vector2d to = d.tangency[legTo[leg]];
    double a1 = std::atan2(from.y() - c.center.y(), from.x() - c.center.x());
    double a2 = std::atan2(to.y() - c.center.y(), to.x() - c.center.x());
    double sweep = std::remainder(a2 - a1, 2.0 * std::numbers::pi);
    double r = 280.0 * c.radius;
    // svg y-axis is flipped, so a positive (ccw) sweep renders as sweep=0
    int sweepFlag = sweep > 0 ? 0 : 1;
    path << " A " << r << ' ' << r << " 0 0 " << sweepFlag << ' '
         << detail::svgX(to.x()) << ' ' << detail::svgY(to.y());
  }
  path << " Z";
  out << "  <path d=\"" << path.str()
      << "\" fill=\"#ffdd88\" fill-opacity=\"0.8\" stroke=\"none\" "
         "clip-path=\"url(#disk)\"/>\n";

  for (int a = 0; a < 3; ++a) {
    const DiskCircle& c = d.circles[a];
    out << "  <circle cx=\"" << detail::svgX(c.center.x()) << "\" cy=\""
        << detail::svgY(c.center.y()) << "\" r=\"" << 280.0 * c.radius
        << "\" fill=\"none\" stroke=\"" << detail::classColor(cfg.classes[a])
        << "\" stroke-width=\"2\" clip-path=\"url(#disk)\"/>\n";
  }
  for (int a = 0; a < 3; ++a) {
    out << "  <circle cx=\"" << detail::svgX(d.tangency[a].x()) << "\" cy=\""
        << detail::svgY(d.tangency[a].y())
        << "\" r=\"4\" fill=\"#333\"/>\n";
  }
  out << "  <text x=\"12\" y=\"24\" font-family=\"monospace\" font-size=\"14\">"
      << "k = (" << cfg.k[0] << ", " << cfg.k[1] << ", " << cfg.k[2]
      << "), area = " << cfg.area << "</text>\n";
  out << "</svg>\n";
}

}  // namespace hypack
