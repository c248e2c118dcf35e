#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hypack/circle.hpp"
#include "hypack/flows.hpp"
#include "hypack/surface.hpp"

namespace hypack {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 17 significant digits, locale-independent; enough to round-trip a double.
inline std::string formatDouble(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x,
                           std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline nlohmann::json parseJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

// {"n_vertices": int, "faces": [[i,j,k],...]} with 1-based vertex indices.
inline SurfaceData loadSurfaceFile(const std::string& path) {
  nlohmann::json j = parseJsonFile(path);
  SurfaceData data;
  try {
    data.nVertices = j.at("n_vertices").get<int>();
    for (const auto& face : j.at("faces")) {
      if (!face.is_array() || face.size() != 3)
        throw ParseError(path + ": each face must be a triple of vertex indices");
      std::array<int, 3> tri{};
      for (int a = 0; a < 3; ++a) tri[a] = face[a].get<int>() - 1;
      data.faces.push_back(tri);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return data;
}

// {"L_hat": [..]} aligned 1-based with the surface vertices.
inline Vector loadTargetFile(const std::string& path) {
  nlohmann::json j = parseJsonFile(path);
  try {
    const auto& arr = j.at("L_hat");
    if (!arr.is_array()) throw ParseError(path + ": L_hat must be an array");
    Vector L(arr.size());
    for (size_t i = 0; i < arr.size(); ++i) L[i] = arr[i].get<double>();
    return L;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

// Writes via a temp file plus rename so consumers never see partial output.
inline void atomicWrite(const std::string& path, const std::string& content) {
  std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  std::filesystem::rename(tmp, target);
}

struct SolveResult {
  Vector k;                             // converged curvatures
  std::vector<CurvatureClass> classes;  // the emergent partition
  double residual = 0.0;                // final Calabi energy
  FlowOutcome outcome = FlowOutcome::MaxTime;
  std::string divergedReason;
  long iterations = 0;
  double wallTime = 0.0;  // reported on the console, not in the JSON bytes
};

// Deterministic serialization: fixed key order, fixed float formatting.
// Wall time is deliberately excluded so identical invocations produce
// byte-identical files.
inline std::string solveResultToJson(const SolveResult& r) {
  std::ostringstream out;
  out << "{\n  \"k\": [";
  for (int i = 0; i < r.k.size(); ++i)
    out << (i ? ", " : "") << formatDouble(r.k[i]);
  out << "],\n  \"classes\": [";
  for (size_t i = 0; i < r.classes.size(); ++i)
    out << (i ? ", " : "") << '"' << curvatureClassName(r.classes[i]) << '"';
  out << "],\n  \"residual\": " << formatDouble(r.residual);
  out << ",\n  \"outcome\": \"" << flowOutcomeName(r.outcome) << '"';
  if (!r.divergedReason.empty())
    out << ",\n  \"diverged_reason\": \"" << r.divergedReason << '"';
  out << ",\n  \"iterations\": " << r.iterations << "\n}\n";
  return out.str();
}

inline SolveResult solveResultFromJson(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  SolveResult r;
  const auto& karr = j.at("k");
  r.k.resize(karr.size());
  for (size_t i = 0; i < karr.size(); ++i) r.k[i] = karr[i].get<double>();
  for (const auto& c : j.at("classes")) {
    std::string name = c.get<std::string>();
    if (name == "hypercycle") r.classes.push_back(CurvatureClass::Hypercycle);
    else if (name == "horocycle") r.classes.push_back(CurvatureClass::Horocycle);
    else r.classes.push_back(CurvatureClass::Circle);
  }
  r.residual = j.at("residual").get<double>();
  std::string outcome = j.at("outcome").get<std::string>();
  r.outcome = outcome == "converged"  ? FlowOutcome::Converged
              : outcome == "max_time" ? FlowOutcome::MaxTime
                                      : FlowOutcome::Diverged;
  r.iterations = j.at("iterations").get<long>();
  return r;
}

// CSV trace: header t,calabi,K_1..K_n; decimal points regardless of locale.
inline std::string traceToCsv(const FlowTrace& trace, int nVertices) {
  std::ostringstream out;
  out << "t,calabi";
  for (int i = 1; i <= nVertices; ++i) out << ",K_" << i;
  out << "\n";
  for (const auto& s : trace.samples) {
    out << formatDouble(s.t) << ',' << formatDouble(s.calabi);
    for (int i = 0; i < s.K.size(); ++i) out << ',' << formatDouble(s.K[i]);
    out << "\n";
  }
  return out.str();
}

}  // namespace hypack
