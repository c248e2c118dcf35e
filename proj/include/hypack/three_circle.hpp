#pragma once

#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>
#include <numbers>

#include "hypack/circle.hpp"
#include "hypack/errors.hpp"

namespace hypack {

// Curvatures with |ln k| below this band are treated as exact horocycles
// (light-like vectors); avoids cancellation in 1/k^2 - 1.
inline constexpr double kHorocycleBand = 1e-8;

// Finite-difference step in K for the per-face Jacobian.
inline constexpr double kJacobianStep = 1e-5;

namespace detail {

// Total geodesic curvature of the arc of one cycle between its two tangency
// points, from the invariants of the hyperboloid construction:
//   e = <w,w> = 1/k^2 - 1,
//   h = -(1 + <p1,p2>)/2  (chord invariant of the tangency points).
//
// The cycle {<x,w> = -1} is an orbit of the flow v' = w x v, which advances
// total geodesic curvature at unit rate for every class, so the arc's total
// curvature is the flow parameter between p1 and p2. Written with half-angle
// identities it stays fully accurate through the horocycle boundary e -> 0:
//   circle:     2 asin (k sqrt(-e h)) / sqrt(-e)
//   horocycle:  2 sqrt(h)
//   hypercycle: 2 asinh(k sqrt( e h)) / sqrt(e)
inline double arcFromInvariants(double k, double e, double h) {
  h = std::max(h, 0.0);
  if (std::abs(e) < 2.0 * kHorocycleBand) return 2.0 * std::sqrt(h);
  double x = k * std::sqrt(std::abs(e) * h);
  if (e < 0.0) return 2.0 * std::asin(std::min(x, 1.0)) / std::sqrt(-e);
  return 2.0 * std::asinh(x) / std::sqrt(e);
}

inline double squaredNormEntry(double K) {
  // <w,w> = 1/k^2 - 1, snapped to an exact horocycle inside the band
  return std::abs(K) < kHorocycleBand ? 0.0 : std::expm1(-2.0 * K);
}

}  // namespace detail

// Arc total geodesic curvatures and area of one face, in log-curvature
// coordinates. Algebraically identical to measuring the full construction
// of solveConfig, using the closed chord invariant
//   h_a = 1/((k_a+k_b)(k_a+k_c)),
// which is exact at any magnitude of K. This is the hot path for curvature
// assembly and finite differences.
struct FaceArcs {
  std::array<double, 3> L;  // total geodesic curvature per arc, each in (0,pi)
  double area;              // pi - L[0] - L[1] - L[2]
};

inline FaceArcs faceArcsFromLog(double Ki, double Kj, double Kk) {
  if (!std::isfinite(Ki) || !std::isfinite(Kj) || !std::isfinite(Kk))
    throw std::invalid_argument("log-curvatures must be finite");
  const std::array<double, 3> K{Ki, Kj, Kk};
  std::array<double, 3> k;
  std::array<double, 3> e;
  for (int a = 0; a < 3; ++a) {
    k[a] = std::exp(K[a]);
    e[a] = detail::squaredNormEntry(K[a]);
  }
  FaceArcs out;
  for (int a = 0; a < 3; ++a) {
    int b = (a + 1) % 3, c = (a + 2) % 3;
    double h = 1.0 / ((k[a] + k[b]) * (k[a] + k[c]));
    out.L[a] = detail::arcFromInvariants(k[a], e[a], h);
  }
  out.area = std::numbers::pi - out.L[0] - out.L[1] - out.L[2];
  return out;
}

inline FaceArcs faceArcs(double ki, double kj, double kk) {
  classify(ki);
  classify(kj);
  classify(kk);
  return faceArcsFromLog(std::log(ki), std::log(kj), std::log(kk));
}

// One face realized as three mutually tangent generalized circles on the
// hyperboloid, with the tangency points kept for diagnostics and rendering.
struct ThreeCircleConfig {
  std::array<double, 3> k;
  std::array<CurvatureClass, 3> classes;
  std::array<double, 3> arcs;              // L_i^{jk}, L_j^{ki}, L_k^{ij}
  double area;                             // pi - sum(arcs)
  std::array<Vec3, 3> cycleVectors;        // w_i, w_j, w_k
  std::array<Vec3, 3> tangencyPoints;      // p_ij, p_jk, p_ki (forward sheet)
};

// Realizes the face by building the Gram matrix
//   G_aa = 1/k_a^2 - 1,   G_ab = -(1 + 1/(k_a k_b)),
// factoring it into vectors of the signature-(2,1) form, and measuring each
// arc between the two tangency points of its cycle. The construction is a
// smooth function of the log-curvatures, across the class boundaries k = 1.
inline ThreeCircleConfig solveConfig(double ki, double kj, double kk) {
  ThreeCircleConfig cfg;
  cfg.k = {ki, kj, kk};
  for (int a = 0; a < 3; ++a) cfg.classes[a] = classify(cfg.k[a]);

  std::array<double, 3> K{std::log(ki), std::log(kj), std::log(kk)};
  Mat3 G;
  for (int a = 0; a < 3; ++a) {
    G(a, a) = detail::squaredNormEntry(K[a]);
    for (int b = a + 1; b < 3; ++b) {
      G(a, b) = G(b, a) = -(1.0 + std::exp(-(K[a] + K[b])));
    }
  }

  Eigen::SelfAdjointEigenSolver<Mat3> es(G);
  if (es.info() != Eigen::Success)
    throw GeometricDegeneracyError("Gram matrix eigendecomposition failed");
  Vec3 mu = es.eigenvalues();  // ascending
  if (!(mu[0] < 0.0 && mu[1] > 0.0))
    throw GeometricDegeneracyError("Gram matrix is not of signature (2,1)");

  // w_a = (sqrt(mu2) U_a2, sqrt(mu1) U_a1, sqrt(-mu0) U_a0) satisfies
  // <w_a, w_b> = G_ab with the negative eigendirection mapped to time.
  const Mat3& U = es.eigenvectors();
  std::array<Vec3, 3> w;
  for (int a = 0; a < 3; ++a)
    w[a] = Vec3(std::sqrt(mu[2]) * U(a, 2), std::sqrt(mu[1]) * U(a, 1),
                std::sqrt(-mu[0]) * U(a, 0));

  // Tangency point of cycles a and b: p = (k_a w_a + k_b w_b)/(k_a + k_b),
  // automatically on the unit hyperboloid.
  auto tangency = [&](int a, int b) {
    return Vec3(((cfg.k[a] * w[a] + cfg.k[b] * w[b]) / (cfg.k[a] + cfg.k[b])));
  };
  std::array<Vec3, 3> p{tangency(0, 1), tangency(1, 2), tangency(2, 0)};
  if (p[0].z() < 0.0) {  // factorization fixed W only up to sign
    for (auto& v : w) v = -v;
    for (auto& q : p) q = -q;
  }
  for (const auto& q : p) {
    if (!(q.z() > 0.0) || std::abs(minkDot(q, q) + 1.0) > 1e-6)
      throw GeometricDegeneracyError("tangency point off the forward sheet");
  }
  for (auto& q : p) q = normalizePoint(q);

  // Measure each arc from the constructed vectors.
  for (int a = 0; a < 3; ++a) {
    const Vec3& p1 = p[a];            // p_{a,a+1}
    const Vec3& p2 = p[(a + 2) % 3];  // p_{a-1,a}
    double h = -(1.0 + minkDot(p1, p2)) / 2.0;
    cfg.arcs[a] = detail::arcFromInvariants(cfg.k[a], minkDot(w[a], w[a]), h);
  }
  cfg.area = std::numbers::pi - cfg.arcs[0] - cfg.arcs[1] - cfg.arcs[2];
  cfg.cycleVectors = w;
  cfg.tangencyPoints = p;
  return cfg;
}

// Per-face Jacobian M_ab = dL_a/dK_b by central differences in K, plus the
// gradient of the face area. Symmetric with negative off-diagonal and
// positive diagonal entries.
struct FaceJacobian {
  Mat3 dL;         // dL[a][b] = dL_a / dK_b
  Vec3 dArea;      // dArea[b] = d area / dK_b
};

inline FaceJacobian faceJacobian(double Ki, double Kj, double Kk,
                                 double step = kJacobianStep) {
  std::array<double, 3> K{Ki, Kj, Kk};
  FaceJacobian J;
  for (int b = 0; b < 3; ++b) {
    std::array<double, 3> Ku = K, Kd = K;
    Ku[b] += step;
    Kd[b] -= step;
    FaceArcs up = faceArcsFromLog(Ku[0], Ku[1], Ku[2]);
    FaceArcs dn = faceArcsFromLog(Kd[0], Kd[1], Kd[2]);
    for (int a = 0; a < 3; ++a) J.dL(a, b) = (up.L[a] - dn.L[a]) / (2.0 * step);
    J.dArea[b] = (up.area - dn.area) / (2.0 * step);
  }
  return J;
}

inline Mat3 configJacobian(double ki, double kj, double kk,
                           double step = kJacobianStep) {
  classify(ki);
  classify(kj);
  classify(kk);
  return faceJacobian(std::log(ki), std::log(kj), std::log(kk), step).dL;
}

}  // namespace hypack
