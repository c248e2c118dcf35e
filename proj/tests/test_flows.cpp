#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include "hypack/flows.hpp"

using namespace hypack;

namespace {

TriangulatedSurface tetra() {
  return TriangulatedSurface::fromData(tetrahedronSurface());
}
TriangulatedSurface octa() {
  return TriangulatedSurface::fromData(octahedronSurface());
}

Vector randomState(int n, std::mt19937& rng, double amplitude = 1.0) {
  std::uniform_real_distribution<double> u(-amplitude, amplitude);
  Vector K(n);
  for (int i = 0; i < n; ++i) K[i] = u(rng);
  return K;
}

FlowSpec makeSpec(FlowKind kind, const Vector& target, double tol = 1e-18) {
  FlowSpec spec;
  spec.kind = kind;
  spec.target = target;
  spec.tol = tol;
  return spec;
}

}  // namespace

TEST_CASE("flow fields vanish at a manufactured equilibrium") {
  std::mt19937 rng(31);
  auto surf = tetra();
  Vector Kstar = randomState(4, rng, 0.5);
  Vector Lhat = totalCurvature(surf, Kstar);
  for (FlowKind kind :
       {FlowKind::Calabi, FlowKind::Fractional, FlowKind::PCalabi, FlowKind::Ricci}) {
    FlowSpec spec = makeSpec(kind, Lhat);
    spec.s = 0.7;
    spec.p = 2.5;
    CHECK(flowRhs(spec, surf, Kstar).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("reduction identities of the flow fields") {
  std::mt19937 rng(37);
  auto surf = octa();
  Vector Lhat = Vector::Ones(6);
  for (int trial = 0; trial < 20; ++trial) {
    Vector K = randomState(6, rng);
    Vector d = totalCurvature(surf, K) - Lhat;

    FlowSpec calabi = makeSpec(FlowKind::Calabi, Lhat);
    FlowSpec frac1 = makeSpec(FlowKind::Fractional, Lhat);
    frac1.s = 1.0;
    FlowSpec frac0 = makeSpec(FlowKind::Fractional, Lhat);
    frac0.s = 0.0;
    FlowSpec p2 = makeSpec(FlowKind::PCalabi, Lhat);
    p2.p = 2.0;
    FlowSpec ricci = makeSpec(FlowKind::Ricci, Lhat);

    Vector rc = flowRhs(calabi, surf, K);
    CHECK((flowRhs(frac1, surf, K) - rc).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((flowRhs(p2, surf, K) - rc).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((flowRhs(frac0, surf, K) + d).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((flowRhs(ricci, surf, K) + d).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("calabi flow reaches the prescribed curvatures on the tetrahedron") {
  auto surf = tetra();
  Vector Lhat = Vector::Ones(4);
  FlowSpec spec = makeSpec(FlowKind::Calabi, Lhat, 1e-10);
  FlowTrace trace = integrate(spec, surf, Vector::Zero(4));
  REQUIRE(trace.outcome == FlowOutcome::Converged);

  Vector L = totalCurvature(surf, trace.finalK);
  NewtonResult newton = newtonSolve(surf, Lhat, Vector::Zero(4));
  REQUIRE(newton.converged);
  for (int i = 0; i < 4; ++i) {
    CHECK(L[i] == Catch::Approx(1.0).margin(1e-5));
    CHECK(trace.finalK[i] == Catch::Approx(newton.K[i]).margin(1e-5));
  }

  // trace invariants
  for (size_t i = 1; i < trace.samples.size(); ++i) {
    CHECK(trace.samples[i].t > trace.samples[i - 1].t);
    if (!trace.samples[i].energyFallback)
      CHECK(trace.samples[i].calabi <= trace.samples[i - 1].calabi);
  }
}

TEST_CASE("an exact equilibrium stays fixed") {
  std::mt19937 rng(41);
  auto surf = tetra();
  Vector Kstar = randomState(4, rng, 0.4);
  Vector Lhat = totalCurvature(surf, Kstar);
  FlowSpec spec = makeSpec(FlowKind::Calabi, Lhat, 1e-10);
  FlowTrace trace = integrate(spec, surf, Kstar);
  CHECK(trace.outcome == FlowOutcome::Converged);
  CHECK(trace.samples.size() == 1);
  CHECK((trace.finalK - Kstar).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("newton recovers manufactured solutions") {
  auto surf = tetra();
  Vector Lhat = Vector::Constant(4, 3.0);  // L at K = 0
  Vector K0(4);
  K0 << 1.0, -1.0, 0.5, 0.0;
  NewtonResult res = newtonSolve(surf, Lhat, K0);
  REQUIRE(res.converged);
  CHECK(res.K.cwiseAbs().maxCoeff() < 1e-9);

  std::mt19937 rng(43);
  auto o = octa();
  for (int trial = 0; trial < 5; ++trial) {
    Vector Kstar = randomState(6, rng, 0.8);
    Vector target = totalCurvature(o, Kstar);
    NewtonResult r = newtonSolve(o, target, Vector::Zero(6));
    REQUIRE(r.converged);
    CHECK((r.K - Kstar).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("newton reports failure on an inadmissible target") {
  auto surf = tetra();
  Vector Lhat = Vector::Constant(4, 3.0 * std::numbers::pi);
  NewtonResult res = newtonSolve(surf, Lhat, Vector::Zero(4));
  CHECK_FALSE(res.converged);
  CHECK(res.residualInf > 1e-3);
}

TEST_CASE("flows agree with each other and with newton") {
  auto surf = tetra();
  Vector Lhat = Vector::Ones(4);
  std::vector<Vector> solutions;

  FlowSpec calabi = makeSpec(FlowKind::Calabi, Lhat);
  solutions.push_back(integrate(calabi, surf, Vector::Zero(4)).finalK);

  FlowSpec frac = makeSpec(FlowKind::Fractional, Lhat);
  frac.s = 0.5;
  solutions.push_back(integrate(frac, surf, Vector::Zero(4)).finalK);

  FlowSpec pflow = makeSpec(FlowKind::PCalabi, Lhat);
  pflow.p = 3.0;
  solutions.push_back(integrate(pflow, surf, Vector::Zero(4)).finalK);

  NewtonResult newton = newtonSolve(surf, Lhat, Vector::Zero(4));
  REQUIRE(newton.converged);
  solutions.push_back(newton.K);

  for (size_t i = 0; i < solutions.size(); ++i)
    for (size_t j = i + 1; j < solutions.size(); ++j)
      CHECK((solutions[i] - solutions[j]).cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("converged packing is independent of the initial state") {
  std::mt19937 rng(47);
  auto surf = octa();
  Vector Kstar = randomState(6, rng, 0.6);
  Vector Lhat = totalCurvature(surf, Kstar);
  FlowSpec spec = makeSpec(FlowKind::Calabi, Lhat);

  Vector reference;
  for (int trial = 0; trial < 5; ++trial) {
    Vector K0 = randomState(6, rng, 2.0);
    FlowTrace trace = integrate(spec, surf, K0);
    REQUIRE(trace.outcome == FlowOutcome::Converged);
    if (trial == 0)
      reference = trace.finalK;
    else
      CHECK((trace.finalK - reference).cwiseAbs().maxCoeff() < 1e-5);
  }
  CHECK((reference - Kstar).cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("halving the initial step leaves the solution unchanged") {
  auto surf = tetra();
  Vector Lhat = Vector::Ones(4);
  FlowSpec spec = makeSpec(FlowKind::Calabi, Lhat, 1e-22);
  FlowTrace a = integrate(spec, surf, Vector::Zero(4));
  spec.step *= 0.5;
  FlowTrace b = integrate(spec, surf, Vector::Zero(4));
  REQUIRE(a.outcome == FlowOutcome::Converged);
  REQUIRE(b.outcome == FlowOutcome::Converged);
  CHECK((a.finalK - b.finalK).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("inadmissible targets never converge") {
  auto surf = tetra();
  Vector Lhat = Vector::Constant(4, 3.0 * std::numbers::pi);
  for (FlowKind kind : {FlowKind::Calabi, FlowKind::Ricci}) {
    FlowSpec spec = makeSpec(kind, Lhat, 1e-10);
    spec.maxTime = 50.0;
    FlowTrace trace = integrate(spec, surf, Vector::Zero(4));
    CHECK(trace.outcome != FlowOutcome::Converged);
  }
}

TEST_CASE("exponential rate fit on converged flows") {
  auto surf = tetra();
  Vector Lhat = Vector::Ones(4);
  FlowSpec spec = makeSpec(FlowKind::Calabi, Lhat);
  FlowTrace trace = integrate(spec, surf, Vector::Zero(4));
  REQUIRE(trace.outcome == FlowOutcome::Converged);
  REQUIRE(trace.samples.size() >= 20);
  RateFit fit = fitExponentialRate(trace);
  CHECK(fit.rSquared > 0.99);
  CHECK(fit.rate > 0.0);

  FlowSpec ricci = makeSpec(FlowKind::Ricci, Lhat);
  FlowTrace rtrace = integrate(ricci, surf, Vector::Zero(4));
  REQUIRE(rtrace.outcome == FlowOutcome::Converged);
  RateFit rfit = fitExponentialRate(rtrace);
  CHECK(rfit.rSquared > 0.99);
}

TEST_CASE("rate fit degenerates gracefully") {
  FlowTrace flat;
  flat.outcome = FlowOutcome::Converged;
  for (int i = 0; i < 30; ++i)
    flat.samples.push_back({0.1 * i, Vector::Zero(2), Vector::Zero(2), 1e-4, false});
  RateFit fit = fitExponentialRate(flat);
  CHECK(fit.rate == Catch::Approx(0.0).margin(1e-12));

  FlowTrace tooShort;
  tooShort.outcome = FlowOutcome::Converged;
  for (int i = 0; i < 5; ++i)
    tooShort.samples.push_back({0.1 * i, Vector::Zero(2), Vector::Zero(2), 1.0, false});
  CHECK_THROWS_AS(fitExponentialRate(tooShort), InsufficientDataError);

  FlowTrace notConverged;
  notConverged.outcome = FlowOutcome::MaxTime;
  for (int i = 0; i < 30; ++i)
    notConverged.samples.push_back({0.1 * i, Vector::Zero(2), Vector::Zero(2), 1.0, false});
  CHECK_THROWS_AS(fitExponentialRate(notConverged), InsufficientDataError);
}

TEST_CASE("integrate validates its parameters") {
  auto surf = tetra();
  Vector Lhat = Vector::Ones(4);
  FlowSpec spec = makeSpec(FlowKind::PCalabi, Lhat);
  spec.p = 1.0;
  CHECK_THROWS_AS(integrate(spec, surf, Vector::Zero(4)), std::invalid_argument);
  FlowSpec bad = makeSpec(FlowKind::Calabi, Lhat);
  bad.step = -1.0;
  CHECK_THROWS_AS(integrate(bad, surf, Vector::Zero(4)), std::invalid_argument);
  FlowSpec wrongLen = makeSpec(FlowKind::Calabi, Vector::Ones(3));
  CHECK_THROWS_AS(integrate(wrongLen, surf, Vector::Zero(4)), std::invalid_argument);
}

TEST_CASE("pcalabi flows converge for exponents on both sides of 2") {
  auto surf = tetra();
  Vector Lhat = Vector::Ones(4);
  for (double p : {1.5, 4.0}) {
    FlowSpec spec = makeSpec(FlowKind::PCalabi, Lhat, 1e-16);
    spec.p = p;
    FlowTrace trace = integrate(spec, surf, Vector::Zero(4));
    REQUIRE(trace.outcome == FlowOutcome::Converged);
    Vector L = totalCurvature(surf, trace.finalK);
    for (int i = 0; i < 4; ++i) CHECK(L[i] == Catch::Approx(1.0).margin(1e-6));
  }
}
