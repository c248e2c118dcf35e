#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "hypack/errors.hpp"

#include <Eigen/Dense>

namespace hypack {

// Raw combinatorial input: vertex count plus faces as 0-based index triples.
// File formats are 1-based; conversion happens at the I/O boundary.
struct SurfaceData {
  int nVertices = 0;
  std::vector<std::array<int, 3>> faces;
};

struct ValidationResult {
  bool ok = true;
  std::string message;  // first violated invariant, with the offending simplex
};

// Checks the closed-triangulated-surface invariants in order: index ranges,
// no repeated vertex in a face, every edge in exactly two faces, connected
// face adjacency, and an even Euler characteristic <= 2. Never throws;
// returns the first violation found.
inline ValidationResult validateSurface(const SurfaceData& s) {
  auto fail = [](std::string m) { return ValidationResult{false, std::move(m)}; };
  if (s.nVertices <= 0) return fail("n_vertices must be positive");
  if (s.faces.empty()) return fail("surface has no faces");
  for (size_t f = 0; f < s.faces.size(); ++f) {
    const auto& tri = s.faces[f];
    for (int v : tri)
      if (v < 0 || v >= s.nVertices)
        return fail("face " + std::to_string(f + 1) + " has vertex index out of range");
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
      return fail("face " + std::to_string(f + 1) + " repeats a vertex");
  }

  std::map<std::pair<int, int>, std::vector<int>> edgeFaces;
  for (size_t f = 0; f < s.faces.size(); ++f) {
    const auto& tri = s.faces[f];
    for (int e = 0; e < 3; ++e) {
      int u = tri[e], v = tri[(e + 1) % 3];
      edgeFaces[{std::min(u, v), std::max(u, v)}].push_back(static_cast<int>(f));
    }
  }
  for (const auto& [edge, fs] : edgeFaces) {
    if (fs.size() != 2)
      return fail("edge (" + std::to_string(edge.first + 1) + "," +
                  std::to_string(edge.second + 1) + ") lies in " +
                  std::to_string(fs.size()) + " face(s), expected 2");
  }

  // Face adjacency connectivity by union over shared edges.
  std::vector<int> component(s.faces.size(), -1);
  std::vector<int> stack{0};
  component[0] = 0;
  std::map<int, std::vector<int>> faceNeighbors;
  for (const auto& [edge, fs] : edgeFaces) {
    faceNeighbors[fs[0]].push_back(fs[1]);
    faceNeighbors[fs[1]].push_back(fs[0]);
  }
  while (!stack.empty()) {
    int f = stack.back();
    stack.pop_back();
    for (int g : faceNeighbors[f])
      if (component[g] < 0) {
        component[g] = 0;
        stack.push_back(g);
      }
  }
  for (size_t f = 0; f < s.faces.size(); ++f)
    if (component[f] < 0) return fail("face adjacency graph is disconnected");

  long chi = static_cast<long>(s.nVertices) - static_cast<long>(edgeFaces.size()) +
             static_cast<long>(s.faces.size());
  if (chi > 2 || chi % 2 != 0)
    return fail("Euler characteristic " + std::to_string(chi) +
                " is not an even integer <= 2");
  return {};
}

// Closed triangulated surface with incidence maps. Construction validates.
class TriangulatedSurface {
 public:
  static TriangulatedSurface fromData(SurfaceData data) {
    ValidationResult r = validateSurface(data);
    if (!r.ok) throw std::invalid_argument("invalid surface: " + r.message);
    return TriangulatedSurface(std::move(data));
  }

  int nVertices() const { return data_.nVertices; }
  int nFaces() const { return static_cast<int>(data_.faces.size()); }
  int nEdges() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::array<int, 3>>& faces() const { return data_.faces; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<std::vector<int>>& vertexFaces() const { return vertexFaces_; }
  const std::vector<std::vector<int>>& neighbors() const { return neighbors_; }
  const SurfaceData& data() const { return data_; }

  int faceDegree(int v) const { return static_cast<int>(vertexFaces_[v].size()); }

 private:
  explicit TriangulatedSurface(SurfaceData data) : data_(std::move(data)) {
    vertexFaces_.resize(data_.nVertices);
    neighbors_.resize(data_.nVertices);
    std::map<std::pair<int, int>, bool> seen;
    for (size_t f = 0; f < data_.faces.size(); ++f) {
      const auto& tri = data_.faces[f];
      for (int e = 0; e < 3; ++e) {
        vertexFaces_[tri[e]].push_back(static_cast<int>(f));
        int u = tri[e], v = tri[(e + 1) % 3];
        auto key = std::minmax(u, v);
        if (!seen[{key.first, key.second}]) {
          seen[{key.first, key.second}] = true;
          edges_.emplace_back(key.first, key.second);
        }
      }
    }
    std::sort(edges_.begin(), edges_.end());
    for (auto [u, v] : edges_) {
      neighbors_[u].push_back(v);
      neighbors_[v].push_back(u);
    }
  }

  SurfaceData data_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> vertexFaces_;
  std::vector<std::vector<int>> neighbors_;
};

// Sorted list of 0-based vertex indices.
using VertexSubset = std::vector<int>;

// |F_I|: number of faces with at least one vertex in I.
inline int facesMeeting(const TriangulatedSurface& s, const VertexSubset& I) {
  std::vector<char> in(s.nVertices(), 0);
  for (int v : I) {
    if (v < 0 || v >= s.nVertices())
      throw std::invalid_argument("vertex index out of range in subset");
    in[v] = 1;
  }
  int count = 0;
  for (const auto& tri : s.faces())
    if (in[tri[0]] || in[tri[1]] || in[tri[2]]) ++count;
  return count;
}

enum class AdmissibilityMode {
  SubsetSum,  // sum_{i in I} Lhat_i < pi |F_I|  (default reading)
  Literal,    // sum_{i=1}^{|V|} Lhat_i < pi |F_I|  (the inequality as printed)
};

enum class AdmissibilityMethod { Exhaustive, Heuristic };

struct AdmissibilityReport {
  bool admissible = true;
  bool certified = true;        // false for the heuristic search
  VertexSubset worstSubset;     // tightest (or maximally violated) subset
  double subsetSum = 0.0;       // left-hand side for that subset
  double bound = 0.0;           // pi |F_I|
  double slack = 0.0;           // bound - lhs; <= 0 means violated
};

inline constexpr int kExhaustiveVertexLimit = 25;

namespace detail {

inline bool lexBefore(const VertexSubset& a, const VertexSubset& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline VertexSubset maskToSubset(uint32_t mask) {
  VertexSubset out;
  while (mask) {
    out.push_back(__builtin_ctz(mask));
    mask &= mask - 1;
  }
  return out;
}

}  // namespace detail

// Checks every nonempty I subset of V against sum < pi |F_I| (strict; equality
// is inadmissible with zero slack). The empty subset is excluded: it would
// read 0 < 0. Reports the minimum-slack subset, ties broken lexicographically.
inline AdmissibilityReport admissibleExhaustive(const TriangulatedSurface& s,
                                                const Eigen::VectorXd& Lhat,
                                                AdmissibilityMode mode) {
  int n = s.nVertices();
  if (n > kExhaustiveVertexLimit)
    throw CapacityError("exhaustive admissibility limited to " +
                        std::to_string(kExhaustiveVertexLimit) +
                        " vertices; use the heuristic method for larger surfaces");
  std::vector<uint32_t> faceMask(s.nFaces(), 0);
  for (int f = 0; f < s.nFaces(); ++f)
    for (int v : s.faces()[f]) faceMask[f] |= (1u << v);

  double totalSum = Lhat.sum();
  AdmissibilityReport best;
  bool haveBest = false;
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    int fi = 0;
    for (uint32_t fm : faceMask) fi += (fm & mask) ? 1 : 0;
    double lhs;
    if (mode == AdmissibilityMode::Literal) {
      lhs = totalSum;
    } else {
      lhs = 0.0;
      uint32_t m = mask;
      while (m) {
        lhs += Lhat[__builtin_ctz(m)];
        m &= m - 1;
      }
    }
    double bound = std::numbers::pi * fi;
    double slack = bound - lhs;
    if (!haveBest || slack < best.slack) {
      haveBest = true;
      best.worstSubset = detail::maskToSubset(mask);
      best.subsetSum = lhs;
      best.bound = bound;
      best.slack = slack;
    } else if (slack == best.slack) {
      VertexSubset cand = detail::maskToSubset(mask);
      if (detail::lexBefore(cand, best.worstSubset)) {
        best.worstSubset = std::move(cand);
        best.subsetSum = lhs;
        best.bound = bound;
      }
    }
  }
  best.admissible = best.slack > 0.0;
  best.certified = true;
  return best;
}

// Greedy multi-start local search (add/remove moves) for a violating subset.
// Non-certifying: an "admissible" verdict only means no violation was found.
inline AdmissibilityReport admissibleHeuristic(const TriangulatedSurface& s,
                                               const Eigen::VectorXd& Lhat,
                                               AdmissibilityMode mode) {
  int n = s.nVertices();
  auto evaluate = [&](const std::vector<char>& in) {
    double lhs = 0.0;
    if (mode == AdmissibilityMode::Literal) {
      lhs = Lhat.sum();
    } else {
      for (int v = 0; v < n; ++v)
        if (in[v]) lhs += Lhat[v];
    }
    int fi = 0;
    for (const auto& tri : s.faces())
      if (in[tri[0]] || in[tri[1]] || in[tri[2]]) ++fi;
    return std::numbers::pi * fi - lhs;  // slack
  };

  AdmissibilityReport best;
  bool haveBest = false;
  auto consider = [&](std::vector<char> in) {
    // steepest descent on slack until local minimum
    double slack = evaluate(in);
    bool improved = true;
    while (improved) {
      improved = false;
      int bestV = -1;
      double bestSlack = slack;
      for (int v = 0; v < n; ++v) {
        std::vector<char> trial = in;
        trial[v] = !trial[v];
        if (std::none_of(trial.begin(), trial.end(), [](char c) { return c; }))
          continue;
        double sl = evaluate(trial);
        if (sl < bestSlack - 1e-15) {
          bestSlack = sl;
          bestV = v;
        }
      }
      if (bestV >= 0) {
        in[bestV] = !in[bestV];
        slack = bestSlack;
        improved = true;
      }
    }
    VertexSubset subset;
    for (int v = 0; v < n; ++v)
      if (in[v]) subset.push_back(v);
    if (!haveBest || slack < best.slack ||
        (slack == best.slack && detail::lexBefore(subset, best.worstSubset))) {
      haveBest = true;
      best.slack = slack;
      best.worstSubset = subset;
      double lhs = 0.0;
      if (mode == AdmissibilityMode::Literal)
        lhs = Lhat.sum();
      else
        for (int v : subset) lhs += Lhat[v];
      best.subsetSum = lhs;
      best.bound = slack + lhs;
    }
  };

  for (int v = 0; v < n; ++v) {
    std::vector<char> in(n, 0);
    in[v] = 1;
    consider(std::move(in));
  }
  consider(std::vector<char>(n, 1));

  best.admissible = best.slack > 0.0;
  best.certified = false;
  return best;
}

inline AdmissibilityReport admissible(
    const TriangulatedSurface& s, const Eigen::VectorXd& Lhat,
    AdmissibilityMode mode = AdmissibilityMode::SubsetSum,
    AdmissibilityMethod method = AdmissibilityMethod::Exhaustive) {
  if (Lhat.size() != s.nVertices())
    throw std::invalid_argument("target length does not match vertex count");
  for (int i = 0; i < Lhat.size(); ++i)
    if (!(Lhat[i] > 0.0) || !std::isfinite(Lhat[i]))
      throw std::invalid_argument("target curvatures must be strictly positive");
  return method == AdmissibilityMethod::Exhaustive
             ? admissibleExhaustive(s, Lhat, mode)
             : admissibleHeuristic(s, Lhat, mode);
}

// Bundled surfaces.
inline SurfaceData tetrahedronSurface() {
  return {4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};
}

inline SurfaceData octahedronSurface() {
  return {6,
          {{0, 1, 2},
           {0, 2, 3},
           {0, 3, 4},
           {0, 4, 1},
           {5, 2, 1},
           {5, 3, 2},
           {5, 4, 3},
           {5, 1, 4}}};
}

inline SurfaceData icosahedronSurface() {
  return {12, {{0, 1, 2},  {0, 2, 3},  {0, 3, 4},  {0, 4, 5},  {0, 5, 1},
               {1, 6, 2},  {2, 6, 7},  {2, 7, 3},  {3, 7, 8},  {3, 8, 4},
               {4, 8, 9},  {4, 9, 5},  {5, 9, 10}, {5, 10, 1}, {1, 10, 6},
               {11, 7, 6}, {11, 8, 7}, {11, 9, 8}, {11, 10, 9}, {11, 6, 10}}};
}

}  // namespace hypack
