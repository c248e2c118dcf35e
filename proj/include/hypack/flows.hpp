#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "hypack/assembly.hpp"

namespace hypack {

enum class FlowKind { Calabi, Fractional, PCalabi, Ricci };

inline const char* flowKindName(FlowKind k) {
  switch (k) {
    case FlowKind::Calabi: return "calabi";
    case FlowKind::Fractional: return "fractional";
    case FlowKind::PCalabi: return "pcalabi";
    case FlowKind::Ricci: return "ricci";
  }
  return "?";
}

struct FlowSpec {
  FlowKind kind = FlowKind::Calabi;
  double s = 0.5;        // fractional exponent
  double p = 2.0;        // p-th flow exponent, must be > 1
  Vector target;         // prescribed total geodesic curvatures Lhat
  double step = 0.1;     // initial step size
  double tol = 1e-10;    // Calabi-energy stopping threshold
  double maxTime = 1e4;
  long maxSteps = 500000;
};

// dK/dt at K:
//   Calabi:       Delta (L - Lhat)
//   Fractional s: Delta^s (L - Lhat)     (s = 0 short-circuits to the Ricci
//                                         field, the two flows are aliases)
//   PCalabi p:    Delta_p (L - Lhat) + A .* (L - Lhat)
//   Ricci:        -(L - Lhat)
inline Vector flowRhs(const FlowSpec& spec, const TriangulatedSurface& s,
                      const Vector& K) {
  Vector d = totalCurvature(s, K) - spec.target;
  switch (spec.kind) {
    case FlowKind::Ricci:
      return -d;
    case FlowKind::Calabi:
      return laplaceApply(assembleJacobian(s, K), d);
    case FlowKind::Fractional: {
      if (spec.s == 0.0) return -d;
      JacobianMatrix J = assembleJacobian(s, K);
      return fractionalLaplaceApply(SpectralDecomposition::compute(J), spec.s, d);
    }
    case FlowKind::PCalabi: {
      if (!(spec.p > 1.0)) throw std::invalid_argument("pcalabi requires p > 1");
      JacobianMatrix J = assembleJacobian(s, K);
      return pLaplaceApply(s, J.B, spec.p, d) + J.A.cwiseProduct(d);
    }
  }
  throw std::invalid_argument("unknown flow kind");
}

enum class FlowOutcome { Converged, MaxTime, Diverged };

inline const char* flowOutcomeName(FlowOutcome o) {
  switch (o) {
    case FlowOutcome::Converged: return "converged";
    case FlowOutcome::MaxTime: return "max_time";
    case FlowOutcome::Diverged: return "diverged";
  }
  return "?";
}

struct FlowSample {
  double t;
  Vector K;
  Vector L;
  double calabi;
  bool energyFallback = false;  // PCalabi step accepted on E-decrease
};

struct FlowTrace {
  std::vector<FlowSample> samples;
  FlowOutcome outcome = FlowOutcome::MaxTime;
  std::string divergedReason;
  bool internalError = false;  // divergence caused by a geometric/spectral fault
  Vector finalK;
  long acceptedSteps = 0;
  long rejectedSteps = 0;
};

inline constexpr double kDivergenceThreshold = 50.0;  // on |K|_inf
inline constexpr double kStepFloor = 1e-10;
inline constexpr double kHardStepFloor = 1e-14;

// Classic RK4 with energy-based step acceptance: a step that increases the
// Calabi energy is rejected and the step halved; after 10 straight accepts
// the step grows by 1.5x. A PCalabi step that cannot decrease the Calabi
// energy at the step floor is accepted on a decrease of the convex energy E
// instead (the paper-backed Lyapunov function for that flow).
inline FlowTrace integrate(const FlowSpec& spec, const TriangulatedSurface& surf,
                           const Vector& K0) {
  if (!(spec.step > 0) || !(spec.tol > 0) || !(spec.maxTime > 0))
    throw std::invalid_argument("flow parameters must be positive");
  if (spec.kind == FlowKind::PCalabi && !(spec.p > 1.0))
    throw std::invalid_argument("pcalabi requires p > 1");
  if (spec.target.size() != surf.nVertices())
    throw std::invalid_argument("target length does not match vertex count");

  FlowTrace trace;
  Vector K = K0;
  double t = 0.0;
  double h = spec.step;
  int streak = 0;

  auto record = [&](double calabi, const Vector& L, bool fallback) {
    trace.samples.push_back({t, K, L, calabi, fallback});
  };

  try {
    Vector L = totalCurvature(surf, K);
    double C = calabiEnergy(L, spec.target);
    record(C, L, false);
    if (C < spec.tol) {
      trace.outcome = FlowOutcome::Converged;
      trace.finalK = K;
      return trace;
    }

    while (true) {
      Vector k1 = flowRhs(spec, surf, K);
      Vector k2 = flowRhs(spec, surf, K + 0.5 * h * k1);
      Vector k3 = flowRhs(spec, surf, K + 0.5 * h * k2);
      Vector k4 = flowRhs(spec, surf, K + h * k3);
      Vector Knext = K + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

      Vector Lnext = totalCurvature(surf, Knext);
      double Cnext = calabiEnergy(Lnext, spec.target);
      bool fallback = false;
      bool accept = Cnext <= C;
      if (!accept && h > kStepFloor) {
        h *= 0.5;
        ++trace.rejectedSteps;
        streak = 0;
        continue;
      }
      if (!accept && spec.kind == FlowKind::PCalabi) {
        // deltaE = int_{K}^{Knext} sum (L - Lhat) dK
        double deltaE = energy(surf, Knext, K, spec.target);
        if (deltaE < 0.0) {
          accept = true;
          fallback = true;
        }
      }
      if (!accept) {
        if (h > kHardStepFloor) {
          h *= 0.5;
          ++trace.rejectedSteps;
          streak = 0;
          continue;
        }
        trace.outcome = FlowOutcome::Diverged;
        trace.divergedReason = "step size underflow without energy decrease";
        trace.finalK = K;
        return trace;
      }

      K = Knext;
      t += h;
      C = Cnext;
      ++trace.acceptedSteps;
      record(C, Lnext, fallback);

      if (C < spec.tol) {
        trace.outcome = FlowOutcome::Converged;
        trace.finalK = K;
        return trace;
      }
      if (K.cwiseAbs().maxCoeff() > kDivergenceThreshold) {
        trace.outcome = FlowOutcome::Diverged;
        trace.divergedReason = "log-curvature norm exceeded " +
                               std::to_string(kDivergenceThreshold);
        trace.finalK = K;
        return trace;
      }
      if (t >= spec.maxTime || trace.acceptedSteps >= spec.maxSteps) {
        trace.outcome = FlowOutcome::MaxTime;
        trace.finalK = K;
        return trace;
      }
      if (++streak >= 10) {
        h *= 1.5;
        streak = 0;
      }
    }
  } catch (const GeometricDegeneracyError& e) {
    trace.outcome = FlowOutcome::Diverged;
    trace.divergedReason = std::string("geometric error: ") + e.what();
    trace.internalError = true;
    trace.finalK = K;
    return trace;
  } catch (const SpectralDegeneracyError& e) {
    trace.outcome = FlowOutcome::Diverged;
    trace.divergedReason = std::string("spectral error: ") + e.what();
    trace.internalError = true;
    trace.finalK = K;
    return trace;
  }
}

struct NewtonResult {
  bool converged = false;
  Vector K;
  double residualInf = 0.0;
  int iterations = 0;
};

// Damped Newton iteration K <- K - alpha Lambda^{-1}(L - Lhat) with
// backtracking on ||L - Lhat||^2 (Armijo constant 1e-4). The convex-energy
// minimizer; serves as the fast oracle for the flow tests.
inline NewtonResult newtonSolve(const TriangulatedSurface& surf,
                                const Vector& Lhat, const Vector& K0,
                                double tol = 1e-11, int maxIterations = 200) {
  for (int i = 0; i < Lhat.size(); ++i)
    if (!(Lhat[i] > 0.0))
      throw std::invalid_argument("target curvatures must be strictly positive");
  NewtonResult res;
  Vector K = K0;
  Vector d = totalCurvature(surf, K) - Lhat;
  double C = d.squaredNorm();
  for (int it = 0; it < maxIterations; ++it) {
    res.iterations = it;
    res.residualInf = d.cwiseAbs().maxCoeff();
    if (res.residualInf < tol) {
      res.converged = true;
      res.K = K;
      return res;
    }
    JacobianMatrix J = assembleJacobian(surf, K);
    Vector delta = J.lambda.llt().solve(d);
    double alpha = 1.0;
    while (true) {
      Vector Ktrial = K - alpha * delta;
      Vector dtrial = totalCurvature(surf, Ktrial) - Lhat;
      double Ctrial = dtrial.squaredNorm();
      if (Ctrial <= C * (1.0 - 2e-4 * alpha)) {
        K = Ktrial;
        d = dtrial;
        C = Ctrial;
        break;
      }
      alpha *= 0.5;
      if (alpha < 1e-12) {
        res.K = K;  // line-search stall: expected for inadmissible targets
        return res;
      }
    }
  }
  res.K = K;
  res.residualInf = d.cwiseAbs().maxCoeff();
  res.converged = res.residualInf < tol;
  return res;
}

struct RateFit {
  double rate = 0.0;      // magnitude of the ln-Calabi slope
  double rSquared = 1.0;
};

// Least-squares line through (t, ln C) over the last half of a converged
// trace; the exponential-decay check of the flow theory.
inline RateFit fitExponentialRate(const FlowTrace& trace) {
  if (trace.outcome != FlowOutcome::Converged || trace.samples.size() < 20)
    throw InsufficientDataError("rate fit needs a converged trace with >= 20 samples");
  size_t start = trace.samples.size() / 2;
  std::vector<double> ts, ys;
  for (size_t i = start; i < trace.samples.size(); ++i) {
    if (trace.samples[i].calabi <= 0.0) continue;
    ts.push_back(trace.samples[i].t);
    ys.push_back(std::log(trace.samples[i].calabi));
  }
  if (ts.size() < 3) throw InsufficientDataError("too few positive-energy samples");
  double n = static_cast<double>(ts.size());
  double tm = 0, ym = 0;
  for (size_t i = 0; i < ts.size(); ++i) {
    tm += ts[i];
    ym += ys[i];
  }
  tm /= n;
  ym /= n;
  double stt = 0, sty = 0, syy = 0;
  for (size_t i = 0; i < ts.size(); ++i) {
    stt += (ts[i] - tm) * (ts[i] - tm);
    sty += (ts[i] - tm) * (ys[i] - ym);
    syy += (ys[i] - ym) * (ys[i] - ym);
  }
  RateFit fit;
  if (stt == 0.0) return fit;
  double slope = sty / stt;
  fit.rate = std::abs(slope);
  double ssRes = syy - slope * sty;
  fit.rSquared = syy < 1e-30 ? 1.0 : 1.0 - ssRes / syy;
  return fit;
}

}  // namespace hypack
