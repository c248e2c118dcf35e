#pragma once

#include <array>
#include <cmath>
#include <numbers>

#include "hypack/errors.hpp"
#include "hypack/gauss_legendre.hpp"
#include "hypack/minkowski.hpp"
#include "hypack/three_circle.hpp"

namespace hypack {

// Poincare disk image of a hyperboloid point.
inline Eigen::Vector2d toDisk(const Vec3& p) {
  return {p.x() / (1.0 + p.z()), p.y() / (1.0 + p.z())};
}

// Euclidean circle representing a generalized circle in the disk model.
struct DiskCircle {
  Eigen::Vector2d center;
  double radius;
};

// The cycle {<x,w> = -1} maps to the Euclidean circle with center
// wbar/(w_z + 1) and radius k^{-1}/|w_z + 1|; requires w_z + 1 > 0, which
// holds whenever the disk is centered inside the configuration.
inline DiskCircle cycleToDisk(const Vec3& w, double k) {
  double denom = w.z() + 1.0;
  if (!(denom > 1e-9))
    throw OracleFailureError("cycle degenerates to a line in the disk model");
  return {Eigen::Vector2d(w.x() / denom, w.y() / denom), 1.0 / (k * denom)};
}

// A three-circle configuration recentred so the mean of its tangency points
// sits at the disk origin. Keeps every cycle a bounded Euclidean circle.
struct DiskConfig {
  std::array<DiskCircle, 3> circles;         // images of cycles i, j, k
  std::array<Eigen::Vector2d, 3> tangency;   // images of p_ij, p_jk, p_ki
};

inline DiskConfig configToDisk(const ThreeCircleConfig& cfg) {
  Vec3 centroid = normalizePoint(cfg.tangencyPoints[0] + cfg.tangencyPoints[1] +
                                 cfg.tangencyPoints[2]);
  Mat3 center = translation(centroid, Vec3(0.0, 0.0, 1.0));
  DiskConfig out;
  for (int a = 0; a < 3; ++a) {
    out.circles[a] = cycleToDisk(center * cfg.cycleVectors[a], cfg.k[a]);
    out.tangency[a] = toDisk(normalizePoint(center * cfg.tangencyPoints[a]));
  }
  return out;
}

namespace detail {

// Angle of a point on a disk circle, as seen from its Euclidean center.
inline double angleOn(const DiskCircle& c, const Eigen::Vector2d& q) {
  return std::atan2(q.y() - c.center.y(), q.x() - c.center.x());
}

// Line integral of the hyperbolic area primitive
//   eta = 2 (x dy - y dx) / (1 - x^2 - y^2),    d(eta) = dA_hyp,
// alongc's arc from angle a1 to a2 (the short way, |a2-a1| <= pi).
inline double areaPrimitiveOnArc(const DiskCircle& c, double a1, double a2,
                                 double tol, bool* converged) {
  double sweep = std::remainder(a2 - a1, 2.0 * std::numbers::pi);
  auto integrand = [&](double phi) {
    double x = c.center.x() + c.radius * std::cos(phi);
    double y = c.center.y() + c.radius * std::sin(phi);
    double numer = c.center.x() * std::cos(phi) + c.center.y() * std::sin(phi) +
                   c.radius;
    return 2.0 * c.radius * numer / (1.0 - x * x - y * y);
  };
  return integrateAdaptive(integrand, a1, a1 + sweep, 16, tol, converged);
}

}  // namespace detail

// Hyperbolic area of the face region by direct numerical integration of the
// area form in the Poincare disk (Green's theorem along the three bounding
// arcs). Independent of the pi - sum(arcs) identity; test oracle only.
inline double configAreaNumeric(const ThreeCircleConfig& cfg) {
  DiskConfig d = configToDisk(cfg);
  // Boundary: p_ij ->(cycle j)-> p_jk ->(cycle k)-> p_ki ->(cycle i)-> p_ij.
  // Each bounding arc is the minor one: the tangency points seen from the
  // Euclidean center subtend the center-triangle angle, which is < pi.
  struct Leg {
    int cycle;
    int from, to;  // indices into tangency[]: 0 = p_ij, 1 = p_jk, 2 = p_ki
  };
  constexpr Leg legs[3] = {{1, 0, 1}, {2, 1, 2}, {0, 2, 0}};
  double total = 0.0;
  for (const Leg& leg : legs) {
    const DiskCircle& c = d.circles[leg.cycle];
    double a1 = detail::angleOn(c, d.tangency[leg.from]);
    double a2 = detail::angleOn(c, d.tangency[leg.to]);
    bool ok = false;
    total += detail::areaPrimitiveOnArc(c, a1, a2, 1e-12, &ok);
    if (!ok) throw OracleFailureError("area quadrature did not converge");
  }
  double area = std::abs(total);
  if (!(area > 0.0) || !(area < std::numbers::pi))
    throw OracleFailureError("area quadrature returned an out-of-range value");
  return area;
}

inline double configAreaNumeric(double ki, double kj, double kk) {
  return configAreaNumeric(solveConfig(ki, kj, kk));
}

}  // namespace hypack
