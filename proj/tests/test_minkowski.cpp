#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hypack/minkowski.hpp"

using namespace hypack;

namespace {
Vec3 randomVec(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  return {u(rng), u(rng), u(rng)};
}

Vec3 randomPoint(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double x = u(rng), y = u(rng);
  return {x, y, std::sqrt(1.0 + x * x + y * y)};
}
}  // namespace

TEST_CASE("minkowski cross product is bilinear-form orthogonal to its factors") {
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    Vec3 a = randomVec(rng), b = randomVec(rng), c = randomVec(rng);
    Vec3 x = minkCross(a, b);
    CHECK(std::abs(minkDot(x, a)) < 1e-12);
    CHECK(std::abs(minkDot(x, b)) < 1e-12);
    Eigen::Matrix3d det;
    det.col(0) = a;
    det.col(1) = b;
    det.col(2) = c;
    CHECK(minkDot(x, c) == Catch::Approx(det.determinant()).margin(1e-10));
  }
}

TEST_CASE("point reflection is an isometry fixing its center") {
  std::mt19937 rng(11);
  Mat3 J = Mat3::Identity();
  J(2, 2) = -1.0;
  for (int i = 0; i < 20; ++i) {
    Vec3 m = randomPoint(rng);
    Mat3 S = pointReflection(m);
    CHECK((S.transpose() * J * S - J).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((S * m - m).cwiseAbs().maxCoeff() < 1e-12);
    // maps the forward sheet to itself
    Vec3 p = randomPoint(rng);
    Vec3 q = S * p;
    CHECK(q.z() > 0.0);
    CHECK(std::abs(minkDot(q, q) + 1.0) < 1e-12);
  }
}

TEST_CASE("translation carries a to b and preserves distances") {
  std::mt19937 rng(13);
  for (int i = 0; i < 20; ++i) {
    Vec3 a = randomPoint(rng), b = randomPoint(rng), p = randomPoint(rng);
    Mat3 T = translation(a, b);
    CHECK((T * a - b).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(coshDistance(T * p, T * a) ==
          Catch::Approx(coshDistance(p, a)).epsilon(1e-12));
  }
}
