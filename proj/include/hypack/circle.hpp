#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "hypack/minkowski.hpp"

namespace hypack {

// Class of a constant-geodesic-curvature curve: hypercycle (k < 1),
// horocycle (k = 1), circle (k > 1). Comparison is exact on the stored value.
enum class CurvatureClass { Hypercycle, Horocycle, Circle };

inline const char* curvatureClassName(CurvatureClass c) {
  switch (c) {
    case CurvatureClass::Hypercycle: return "hypercycle";
    case CurvatureClass::Horocycle: return "horocycle";
    case CurvatureClass::Circle: return "circle";
  }
  return "?";
}

inline CurvatureClass classify(double k) {
  if (!std::isfinite(k) || k <= 0.0)
    throw std::invalid_argument("geodesic curvature must be positive and finite, got " +
                                std::to_string(k));
  if (k < 1.0) return CurvatureClass::Hypercycle;
  if (k > 1.0) return CurvatureClass::Circle;
  return CurvatureClass::Horocycle;
}

struct GeneralizedCircle {
  double k;     // geodesic curvature
  double logK;  // K = ln k, the coordinate the flows evolve
  CurvatureClass cls;

  static GeneralizedCircle fromCurvature(double k) {
    return {k, std::log(k), classify(k)};
  }
  static GeneralizedCircle fromLog(double K) {
    double k = std::exp(K);
    return {k, K, classify(k)};
  }
};

// Length d(ij) between the two tangent cycles' centers (circles), axes
// (hypercycles), or mixed; +infinity as soon as a horocycle is involved,
// its center being ideal.
inline double edgeLength(double ki, double kj) {
  auto half = [](double k) {
    switch (classify(k)) {
      case CurvatureClass::Hypercycle: return std::atanh(k);
      case CurvatureClass::Circle: return std::atanh(1.0 / k);  // arccoth
      case CurvatureClass::Horocycle:
      default: return std::numeric_limits<double>::infinity();
    }
  };
  return half(ki) + half(kj);
}

// A generalized circle as the locus {x : <x,w> = -1} on the hyperboloid.
// The squared norm <w,w> = 1/k^2 - 1 is negative for circles, zero for
// horocycles, positive for hypercycles.
struct MinkowskiRep {
  Vec3 w;
};

// Canonical (axis-aligned) representative; solveConfig fixes actual
// positions when three cycles are assembled into a face.
inline MinkowskiRep minkowskiRep(const GeneralizedCircle& c) {
  double e = std::expm1(-2.0 * c.logK);  // <w,w> without cancellation near k=1
  switch (c.cls) {
    case CurvatureClass::Circle: return {Vec3(0.0, 0.0, std::sqrt(-e))};
    case CurvatureClass::Horocycle: return {Vec3(1.0, 0.0, 1.0)};
    case CurvatureClass::Hypercycle:
    default: return {Vec3(std::sqrt(e), 0.0, 0.0)};
  }
}

}  // namespace hypack
