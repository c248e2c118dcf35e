#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>

#include "hypack/errors.hpp"
#include "hypack/gauss_legendre.hpp"
#include "hypack/surface.hpp"
#include "hypack/three_circle.hpp"

namespace hypack {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// L_v = sum over incident faces of the arc at slot v. Faces are accumulated
// in their stored order, which fixes the reduction order and makes the map
// bitwise reproducible.
inline Vector totalCurvature(const TriangulatedSurface& s, const Vector& K) {
  if (K.size() != s.nVertices())
    throw std::invalid_argument("state length does not match vertex count");
  Vector L = Vector::Zero(s.nVertices());
  for (const auto& tri : s.faces()) {
    FaceArcs fa = faceArcsFromLog(K[tri[0]], K[tri[1]], K[tri[2]]);
    for (int a = 0; a < 3; ++a) L[tri[a]] += fa.L[a];
  }
  return L;
}

// Jacobian Lambda = dL/dK with its decomposition Lambda = -Lambda_A + Lambda_B:
//   A_i = d/dK_i of the total incident face area (all A_i < 0),
//   B_ij = sum over the two faces at edge ij of dL_i^{face}/dK_j (all < 0).
struct JacobianMatrix {
  Matrix lambda;  // symmetric positive definite
  Vector A;       // diagonal of Lambda_A
  Matrix B;       // symmetric edge weights, zero off-edges
};

inline JacobianMatrix assembleJacobian(const TriangulatedSurface& s,
                                       const Vector& K) {
  if (K.size() != s.nVertices())
    throw std::invalid_argument("state length does not match vertex count");
  int n = s.nVertices();
  JacobianMatrix J{Matrix::Zero(n, n), Vector::Zero(n), Matrix::Zero(n, n)};
  for (const auto& tri : s.faces()) {
    FaceJacobian fj = faceJacobian(K[tri[0]], K[tri[1]], K[tri[2]]);
    for (int a = 0; a < 3; ++a) {
      J.A[tri[a]] += fj.dArea[a];
      for (int b = 0; b < 3; ++b) {
        J.lambda(tri[a], tri[b]) += fj.dL(a, b);
        if (a != b) J.B(tri[a], tri[b]) += fj.dL(a, b);
      }
    }
  }
  double asym = (J.lambda - J.lambda.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-7)
    throw InternalConsistencyError("curvature Jacobian asymmetry " +
                                   std::to_string(asym));
  return J;
}

// Delta f = -Lambda f.
inline Vector laplaceApply(const JacobianMatrix& J, const Vector& f) {
  return -(J.lambda * f);
}

// Orthonormal eigendecomposition Lambda = Q^T diag(lambda) Q; rows of Q are
// eigenvectors. Eigenvalues at or below the floor raise rather than clamp:
// Lambda is provably positive definite, so a near-zero eigenvalue signals an
// upstream bug or near-degenerate input.
struct SpectralDecomposition {
  Matrix Q;
  Vector lambdas;

  static SpectralDecomposition compute(const JacobianMatrix& J) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(J.lambda);
    if (es.info() != Eigen::Success)
      throw SpectralDegeneracyError("eigendecomposition failed");
    Vector lam = es.eigenvalues();
    for (int i = 0; i < lam.size(); ++i)
      if (!(lam[i] > 1e-12))
        throw SpectralDegeneracyError("Jacobian eigenvalue " +
                                      std::to_string(lam[i]) +
                                      " at or below positivity floor");
    return {es.eigenvectors().transpose(), std::move(lam)};
  }
};

// Delta^s f = -Q^T diag(lambda^s) Q f.
inline Vector fractionalLaplaceApply(const SpectralDecomposition& spec, double s,
                                     const Vector& f) {
  Vector y = spec.Q * f;
  for (int i = 0; i < y.size(); ++i) {
    double ls = std::pow(spec.lambdas[i], s);
    if (!std::isfinite(ls))
      throw SpectralDegeneracyError("non-finite eigenvalue power");
    y[i] *= ls;
  }
  return -(spec.Q.transpose() * y);
}

// Delta_p f_i = sum_{j~i} (-B_ij) |f_j - f_i|^{p-2} (f_j - f_i); equal values
// contribute exactly zero, the limit for every p > 1.
inline Vector pLaplaceApply(const TriangulatedSurface& s, const Matrix& B,
                            double p, const Vector& f) {
  if (!(p > 1.0)) throw std::invalid_argument("p-Laplacian requires p > 1");
  Vector out = Vector::Zero(f.size());
  for (auto [u, v] : s.edges()) {
    double d = f[v] - f[u];
    if (d == 0.0) continue;
    double w = std::pow(std::abs(d), p - 1.0) * (d > 0 ? 1.0 : -1.0);
    out[u] += -B(u, v) * w;
    out[v] += -B(v, u) * (-w);
  }
  return out;
}

inline double calabiEnergy(const Vector& L, const Vector& Lhat) {
  if (L.size() != Lhat.size()) throw std::invalid_argument("length mismatch");
  return (L - Lhat).squaredNorm();
}

// E(K) = int over the segment K_base -> K of sum (L_i - Lhat_i) dK_i.
// Path-independent because the Jacobian is symmetric; evaluated by 32-point
// Gauss-Legendre, doubling segments until the estimate moves < 1e-10.
inline double energy(const TriangulatedSurface& s, const Vector& K,
                     const Vector& Kbase, const Vector& Lhat) {
  Vector dir = K - Kbase;
  if (dir.norm() == 0.0) return 0.0;
  auto integrand = [&](double t) {
    Vector Kt = Kbase + t * dir;
    return (totalCurvature(s, Kt) - Lhat).dot(dir);
  };
  bool ok = false;
  double val = integrateAdaptive(integrand, 0.0, 1.0, 32, 1e-10, &ok);
  if (!ok) throw NumericError("energy quadrature did not converge");
  return val;
}

}  // namespace hypack
