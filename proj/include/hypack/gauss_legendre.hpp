#pragma once

#include <cmath>
#include <map>
#include <numbers>
#include <vector>

namespace hypack {

struct QuadNode {
  double x;  // abscissa on [-1, 1]
  double w;
};

// Gauss-Legendre nodes by Newton iteration on P_n, cached per order.
inline const std::vector<QuadNode>& gaussLegendre(int n) {
  static std::map<int, std::vector<QuadNode>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<QuadNode> nodes(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = {-x, w};
    nodes[n - 1 - i] = {x, w};
  }
  return cache.emplace(n, std::move(nodes)).first->second;
}

template <typename F>
double integrateGL(F&& f, double a, double b, int order) {
  const auto& nodes = gaussLegendre(order);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (const auto& node : nodes) sum += node.w * f(mid + half * node.x);
  return half * sum;
}

// Composite rule over 1, 2, 4, ... equal segments until two successive
// estimates differ by less than tol. Returns the last estimate; sets
// *converged if requested.
template <typename F>
double integrateAdaptive(F&& f, double a, double b, int order, double tol,
                         bool* converged = nullptr) {
  double prev = integrateGL(f, a, b, order);
  for (int segments = 2; segments <= 256; segments *= 2) {
    double sum = 0.0;
    double step = (b - a) / segments;
    for (int s = 0; s < segments; ++s)
      sum += integrateGL(f, a + s * step, a + (s + 1) * step, order);
    if (std::abs(sum - prev) < tol) {
      if (converged) *converged = true;
      return sum;
    }
    prev = sum;
  }
  if (converged) *converged = false;
  return prev;
}

}  // namespace hypack
