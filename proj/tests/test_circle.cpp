#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "hypack/circle.hpp"

using namespace hypack;

TEST_CASE("classify splits at k = 1") {
  CHECK(classify(0.5) == CurvatureClass::Hypercycle);
  CHECK(classify(1.0) == CurvatureClass::Horocycle);
  CHECK(classify(2.0) == CurvatureClass::Circle);
  CHECK_THROWS_AS(classify(0.0), std::invalid_argument);
  CHECK_THROWS_AS(classify(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(classify(std::numeric_limits<double>::quiet_NaN()),
                  std::invalid_argument);
  CHECK_THROWS_AS(classify(std::numeric_limits<double>::infinity()),
                  std::invalid_argument);
}

TEST_CASE("edge lengths follow the four-case formula") {
  // two circles: 2 arccoth(2) = ln 3
  CHECK(edgeLength(2.0, 2.0) == Catch::Approx(std::log(3.0)).epsilon(1e-14));
  // any horocycle endpoint gives an infinite length
  CHECK(std::isinf(edgeLength(1.0, 2.0)));
  CHECK(std::isinf(edgeLength(0.3, 1.0)));
  // mixed hypercycle/circle: arctanh(1/2) + arccoth(2) = ln 3
  CHECK(edgeLength(0.5, 2.0) == Catch::Approx(std::log(3.0)).epsilon(1e-14));
  // two hypercycles
  CHECK(edgeLength(0.5, 0.25) ==
        Catch::Approx(std::atanh(0.5) + std::atanh(0.25)).epsilon(1e-14));
}

TEST_CASE("minkowski representative has squared norm 1/k^2 - 1") {
  CHECK(minkDot(minkowskiRep(GeneralizedCircle::fromCurvature(1.0)).w,
                minkowskiRep(GeneralizedCircle::fromCurvature(1.0)).w) == 0.0);
  CHECK(minkDot(minkowskiRep(GeneralizedCircle::fromCurvature(2.0)).w,
                minkowskiRep(GeneralizedCircle::fromCurvature(2.0)).w) ==
        Catch::Approx(-0.75).epsilon(1e-14));
  CHECK(minkDot(minkowskiRep(GeneralizedCircle::fromCurvature(0.5)).w,
                minkowskiRep(GeneralizedCircle::fromCurvature(0.5)).w) ==
        Catch::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("log coordinate round trip") {
  GeneralizedCircle c = GeneralizedCircle::fromLog(-0.3);
  CHECK(c.k == Catch::Approx(std::exp(-0.3)).epsilon(1e-15));
  CHECK(c.cls == CurvatureClass::Hypercycle);
  CHECK(GeneralizedCircle::fromCurvature(3.0).logK ==
        Catch::Approx(std::log(3.0)).epsilon(1e-15));
}
