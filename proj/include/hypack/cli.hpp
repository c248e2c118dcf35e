#pragma once

#include <chrono>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "hypack/io.hpp"
#include "hypack/svg.hpp"

namespace hypack {

namespace cli {

constexpr int kExitOk = 0;
constexpr int kExitNotConverged = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitGeometric = 3;

inline std::string subsetToString(const VertexSubset& I) {
  std::ostringstream out;
  out << '{';
  for (size_t i = 0; i < I.size(); ++i) out << (i ? "," : "") << (I[i] + 1);
  out << '}';
  return out.str();
}

struct LoadedProblem {
  TriangulatedSurface surface;
  Vector target;
};

inline LoadedProblem loadProblem(const std::string& surfacePath,
                                 const std::string& targetPath) {
  SurfaceData data = loadSurfaceFile(surfacePath);
  ValidationResult v = validateSurface(data);
  if (!v.ok) throw ParseError(surfacePath + ": " + v.message);
  TriangulatedSurface surface = TriangulatedSurface::fromData(std::move(data));
  Vector target = loadTargetFile(targetPath);
  if (target.size() != surface.nVertices())
    throw ParseError(targetPath + ": L_hat length " +
                     std::to_string(target.size()) + " does not match " +
                     std::to_string(surface.nVertices()) + " vertices");
  for (int i = 0; i < target.size(); ++i)
    if (!(target[i] > 0.0) || !std::isfinite(target[i]))
      throw ParseError(targetPath + ": L_hat entries must be positive and finite");
  return {std::move(surface), std::move(target)};
}

inline int runCheck(const std::string& surfacePath, const std::string& targetPath,
                    bool literal, std::ostream& out, std::ostream& err) {
  try {
    LoadedProblem prob = loadProblem(surfacePath, targetPath);
    AdmissibilityMode mode =
        literal ? AdmissibilityMode::Literal : AdmissibilityMode::SubsetSum;
    AdmissibilityReport rep = admissible(prob.surface, prob.target, mode);
    if (rep.admissible) {
      out << "admissible (tightest subset I=" << subsetToString(rep.worstSubset)
          << ": " << formatDouble(rep.subsetSum) << " < "
          << formatDouble(rep.bound) << ", slack " << formatDouble(rep.slack)
          << ")\n";
      return kExitOk;
    }
    out << "inadmissible, I=" << subsetToString(rep.worstSubset) << ": "
        << formatDouble(rep.subsetSum) << " >= " << formatDouble(rep.bound)
        << " (slack " << formatDouble(rep.slack) << ")\n";
    return kExitNotConverged;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
}

struct FlowRequest {
  std::string flow = "calabi";
  double s = 0.5;
  double p = 3.0;
  double tol = 1e-10;
  double maxTime = 1e4;
  double step = 0.1;
  long maxSteps = 500000;
};

inline FlowSpec makeFlowSpec(const FlowRequest& req, const Vector& target) {
  FlowSpec spec;
  if (req.flow == "calabi") spec.kind = FlowKind::Calabi;
  else if (req.flow == "ricci") { spec.kind = FlowKind::Fractional; spec.s = 0.0; }
  else if (req.flow == "fractional") { spec.kind = FlowKind::Fractional; spec.s = req.s; }
  else if (req.flow == "pcalabi") { spec.kind = FlowKind::PCalabi; spec.p = req.p; }
  else throw std::invalid_argument("unknown flow: " + req.flow);
  spec.target = target;
  spec.tol = req.tol;
  spec.maxTime = req.maxTime;
  spec.step = req.step;
  spec.maxSteps = req.maxSteps;
  return spec;
}

inline int runSolve(const std::string& surfacePath, const std::string& targetPath,
                    const FlowRequest& req, const std::string& outPath,
                    const std::string& tracePath, bool randomInit,
                    unsigned long seed, std::ostream& out, std::ostream& err) {
  try {
    LoadedProblem prob = loadProblem(surfacePath, targetPath);
    Vector K0 = Vector::Zero(prob.surface.nVertices());
    if (randomInit) {
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      for (int i = 0; i < K0.size(); ++i) K0[i] = u(rng);
    }

    auto t0 = std::chrono::steady_clock::now();
    SolveResult res;
    FlowTrace trace;
    bool haveTrace = false;
    if (req.flow == "newton") {
      NewtonResult nr = newtonSolve(prob.surface, prob.target, K0, 1e-11);
      res.k = nr.K.array().exp();
      for (int i = 0; i < res.k.size(); ++i)
        res.classes.push_back(classify(res.k[i]));
      res.residual = calabiEnergy(totalCurvature(prob.surface, nr.K), prob.target);
      res.outcome = nr.converged ? FlowOutcome::Converged : FlowOutcome::Diverged;
      if (!nr.converged) res.divergedReason = "newton line search stalled";
      res.iterations = nr.iterations;
    } else {
      FlowSpec spec = makeFlowSpec(req, prob.target);
      trace = integrate(spec, prob.surface, K0);
      haveTrace = true;
      res.k = trace.finalK.array().exp();
      for (int i = 0; i < res.k.size(); ++i)
        res.classes.push_back(classify(res.k[i]));
      res.residual = trace.samples.back().calabi;
      res.outcome = trace.outcome;
      res.divergedReason = trace.divergedReason;
      res.iterations = trace.acceptedSteps;
    }
    auto t1 = std::chrono::steady_clock::now();
    res.wallTime = std::chrono::duration<double>(t1 - t0).count();

    std::string json = solveResultToJson(res);
    if (outPath.empty())
      out << json;
    else
      atomicWrite(outPath, json);
    if (!tracePath.empty() && haveTrace)
      atomicWrite(tracePath, traceToCsv(trace, prob.surface.nVertices()));
    err << "wall_time: " << res.wallTime << " s\n";

    if (haveTrace && trace.internalError) {
      err << "error: " << trace.divergedReason << "\n";
      return kExitGeometric;
    }
    return res.outcome == FlowOutcome::Converged ? kExitOk : kExitNotConverged;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const GeometricDegeneracyError& e) {
    err << "geometric error: " << e.what() << "\n";
    return kExitGeometric;
  } catch (const SpectralDegeneracyError& e) {
    err << "spectral error: " << e.what() << "\n";
    return kExitGeometric;
  }
}

// Documented working range for direct configuration queries.
inline constexpr double kCurvatureMin = 1e-8;
inline constexpr double kCurvatureMax = 1e8;

inline int runConfig(double ki, double kj, double kk, const std::string& svgPath,
                     std::ostream& out, std::ostream& err) {
  for (double k : {ki, kj, kk}) {
    if (!std::isfinite(k) || k < kCurvatureMin || k > kCurvatureMax) {
      err << "error: curvatures must lie in [" << kCurvatureMin << ", "
          << kCurvatureMax << "]\n";
      return kExitBadInput;
    }
  }
  try {
    ThreeCircleConfig cfg = solveConfig(ki, kj, kk);
    out << "L_i^{jk} = " << formatDouble(cfg.arcs[0]) << "  ("
        << curvatureClassName(cfg.classes[0]) << ")\n";
    out << "L_j^{ki} = " << formatDouble(cfg.arcs[1]) << "  ("
        << curvatureClassName(cfg.classes[1]) << ")\n";
    out << "L_k^{ij} = " << formatDouble(cfg.arcs[2]) << "  ("
        << curvatureClassName(cfg.classes[2]) << ")\n";
    out << "area     = " << formatDouble(cfg.area) << "\n";
    if (!svgPath.empty()) {
      std::ostringstream svg;
      renderConfigSvg(cfg, svg);
      atomicWrite(svgPath, svg.str());
    }
    return kExitOk;
  } catch (const GeometricDegeneracyError& e) {
    err << "geometric error: " << e.what() << "\n";
    return kExitGeometric;
  }
}

struct CompareRow {
  std::string name;
  bool converged = false;
  long iterations = 0;
  double residual = 0.0;
  double wallTime = 0.0;
  Vector K;
};

inline int runCompare(const std::string& surfacePath, const std::string& targetPath,
                      const std::string& flowsArg, double tol, double maxTime,
                      std::ostream& out, std::ostream& err) {
  try {
    LoadedProblem prob = loadProblem(surfacePath, targetPath);

    AdmissibilityReport rep = admissible(prob.surface, prob.target);
    if (!rep.admissible)
      err << "warning: target is inadmissible (I="
          << subsetToString(rep.worstSubset) << "); flows will not converge\n";

    std::vector<FlowRequest> requests;
    std::stringstream ss(flowsArg);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      FlowRequest req;
      auto colon = item.find(':');
      req.flow = item.substr(0, colon);
      if (colon != std::string::npos) {
        double value = std::stod(item.substr(colon + 1));
        if (req.flow == "fractional") req.s = value;
        else if (req.flow == "pcalabi") req.p = value;
        else throw std::invalid_argument("flow " + req.flow + " takes no parameter");
      }
      if (req.flow != "calabi" && req.flow != "ricci" && req.flow != "fractional" &&
          req.flow != "pcalabi")
        throw std::invalid_argument("unknown flow: " + req.flow);
      req.tol = tol;
      req.maxTime = maxTime;
      requests.push_back(req);
    }
    if (requests.empty()) throw std::invalid_argument("empty flow list");

    Vector K0 = Vector::Zero(prob.surface.nVertices());
    std::vector<std::future<CompareRow>> futures;
    for (const FlowRequest& req : requests) {
      futures.push_back(std::async(std::launch::async, [&, req]() {
        CompareRow row;
        row.name = req.flow;
        if (req.flow == "fractional") row.name += ":" + std::to_string(req.s);
        if (req.flow == "pcalabi") row.name += ":" + std::to_string(req.p);
        auto t0 = std::chrono::steady_clock::now();
        FlowTrace trace = integrate(makeFlowSpec(req, prob.target), prob.surface, K0);
        auto t1 = std::chrono::steady_clock::now();
        row.converged = trace.outcome == FlowOutcome::Converged;
        row.iterations = trace.acceptedSteps;
        row.residual = trace.samples.back().calabi;
        row.wallTime = std::chrono::duration<double>(t1 - t0).count();
        row.K = trace.finalK;
        return row;
      }));
    }
    auto newtonFuture = std::async(std::launch::async, [&]() {
      CompareRow row;
      row.name = "newton";
      auto t0 = std::chrono::steady_clock::now();
      NewtonResult nr = newtonSolve(prob.surface, prob.target, K0, 1e-11);
      auto t1 = std::chrono::steady_clock::now();
      row.converged = nr.converged;
      row.iterations = nr.iterations;
      row.residual = calabiEnergy(totalCurvature(prob.surface, nr.K), prob.target);
      row.wallTime = std::chrono::duration<double>(t1 - t0).count();
      row.K = nr.K;
      return row;
    });

    std::vector<CompareRow> rows;
    for (auto& f : futures) rows.push_back(f.get());
    rows.push_back(newtonFuture.get());

    out << std::left << std::setw(22) << "flow" << std::setw(12) << "status"
        << std::setw(12) << "iterations" << std::setw(16) << "residual"
        << "wall_time\n";
    bool allConverged = true;
    for (const auto& row : rows) {
      out << std::left << std::setw(22) << row.name << std::setw(12)
          << (row.converged ? "converged" : "failed") << std::setw(12)
          << row.iterations << std::setw(16) << row.residual << row.wallTime
          << "\n";
      allConverged = allConverged && row.converged;
    }

    double maxDisagreement = 0.0;
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = i + 1; j < rows.size(); ++j)
        if (rows[i].converged && rows[j].converged)
          maxDisagreement = std::max(
              maxDisagreement, (rows[i].K - rows[j].K).cwiseAbs().maxCoeff());
    out << "max pairwise |K - K'|_inf over converged flows: "
        << formatDouble(maxDisagreement) << "\n";

    return (allConverged && maxDisagreement < 1e-5) ? kExitOk : kExitNotConverged;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
}

}  // namespace cli

// Command-line driver; returns the process exit code.
inline int runCli(std::vector<std::string> args, std::ostream& out,
                  std::ostream& err) {
  CLI::App app{"generalized hyperbolic circle packings via curvature flows"};
  app.require_subcommand(1);
  unsigned long seed = 0;
  app.add_option("--seed", seed, "seed for randomized helpers");

  auto* check = app.add_subcommand("check", "check a target for admissibility");
  std::string surfacePath, targetPath;
  bool literal = false;
  check->add_option("surface", surfacePath, "surface JSON file")->required();
  check->add_option("target", targetPath, "target JSON file")->required();
  check->add_flag("--literal", literal,
                  "use the literal full-sum inequality instead of the "
                  "subset-restricted reading");

  auto* solve = app.add_subcommand("solve", "solve for a packing metric");
  cli::FlowRequest req;
  std::string outPath, tracePath, init = "zeros";
  solve->add_option("surface", surfacePath, "surface JSON file")->required();
  solve->add_option("target", targetPath, "target JSON file")->required();
  solve->add_option("--flow", req.flow,
                    "calabi | ricci | fractional | pcalabi | newton");
  solve->add_option("--s", req.s, "fractional exponent");
  solve->add_option("--p", req.p, "p-th flow exponent (> 1)");
  solve->add_option("--tol", req.tol, "Calabi-energy stopping threshold");
  solve->add_option("--max-time", req.maxTime, "flow time limit");
  solve->add_option("--step", req.step, "initial step size");
  solve->add_option("--max-steps", req.maxSteps, "accepted-step limit");
  solve->add_option("--out", outPath, "result JSON path (default: stdout)");
  solve->add_option("--trace", tracePath, "CSV trace path");
  solve->add_option("--init", init, "initial state: zeros | random (uses --seed)");

  auto* config = app.add_subcommand("config", "solve one three-circle face");
  double ki = 1.0, kj = 1.0, kk = 1.0;
  std::string svgPath;
  config->add_option("k_i", ki, "curvature at slot i")->required();
  config->add_option("k_j", kj, "curvature at slot j")->required();
  config->add_option("k_k", kk, "curvature at slot k")->required();
  config->add_option("--svg", svgPath, "write a Poincare-disk rendering");

  auto* compare = app.add_subcommand("compare", "run several flows and compare");
  std::string flowsArg = "calabi";
  double cmpTol = 1e-14, cmpMaxTime = 1e4;
  compare->add_option("surface", surfacePath, "surface JSON file")->required();
  compare->add_option("target", targetPath, "target JSON file")->required();
  compare->add_option("--flows", flowsArg,
                      "comma list, e.g. calabi,fractional:0.5,pcalabi:3");
  compare->add_option("--tol", cmpTol, "per-flow stopping threshold");
  compare->add_option("--max-time", cmpMaxTime, "per-flow time limit");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return cli::kExitBadInput;
  }

  if (check->parsed())
    return cli::runCheck(surfacePath, targetPath, literal, out, err);
  if (solve->parsed()) {
    if (init != "zeros" && init != "random") {
      err << "error: --init must be zeros or random\n";
      return cli::kExitBadInput;
    }
    return cli::runSolve(surfacePath, targetPath, req, outPath, tracePath,
                         init == "random", seed, out, err);
  }
  if (config->parsed()) return cli::runConfig(ki, kj, kk, svgPath, out, err);
  if (compare->parsed())
    return cli::runCompare(surfacePath, targetPath, flowsArg, cmpTol, cmpMaxTime,
                           out, err);
  err << "error: no subcommand\n";
  return cli::kExitBadInput;
}

}  // namespace hypack
