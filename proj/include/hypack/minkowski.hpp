#pragma once

#include <Eigen/Dense>
#include <cmath>

namespace hypack {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Minkowski bilinear form of signature (+,+,-); the third coordinate is time.
// The hyperbolic plane is the sheet {<x,x> = -1, x.z > 0}.
inline double minkDot(const Vec3& a, const Vec3& b) {
  return a.x() * b.x() + a.y() * b.y() - a.z() * b.z();
}

// Minkowski cross product, defined by <minkCross(a,b), c> = det[a b c].
// Equals the Euclidean cross product with the time component negated.
inline Vec3 minkCross(const Vec3& a, const Vec3& b) {
  Vec3 c = a.cross(b);
  c.z() = -c.z();
  return c;
}

// Rescale a timelike vector onto the unit hyperboloid <x,x> = -1.
inline Vec3 normalizePoint(const Vec3& x) {
  return x / std::sqrt(-minkDot(x, x));
}

inline double coshDistance(const Vec3& p, const Vec3& q) {
  return -minkDot(p, q);
}

inline double distance(const Vec3& p, const Vec3& q) {
  return std::acosh(std::max(coshDistance(p, q), 1.0));
}

// Point reflection of the hyperbolic plane through m (unit timelike,
// forward sheet): sigma_m(x) = -x - 2<x,m>m, an isometry fixing m.
inline Mat3 pointReflection(const Vec3& m) {
  Mat3 J = Mat3::Identity();
  J(2, 2) = -1.0;
  return -Mat3::Identity() - 2.0 * m * (m.transpose() * J);
}

// Orientation-preserving isometry translating a to b along their geodesic
// (both unit timelike, forward sheet): reflection through a, then through
// the midpoint of a and b.
inline Mat3 translation(const Vec3& a, const Vec3& b) {
  Vec3 mid = normalizePoint(a + b);
  return pointReflection(mid) * pointReflection(a);
}

}  // namespace hypack
