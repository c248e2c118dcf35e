#pragma once

#include <stdexcept>

namespace hypack {

// Gram matrix not of signature (2,1), tangency points off the forward sheet,
// and similar construction faults. Unreachable for valid inputs; signals an
// implementation bug or wildly out-of-range data.
struct GeometricDegeneracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Eigenvalue of the curvature Jacobian at or below the positivity floor.
struct SpectralDegeneracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An identity that holds by construction failed beyond tolerance.
struct InternalConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A test-oracle computation (quadrature, independent construction) failed
// to converge or produced inconsistent geometry.
struct OracleFailureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Request exceeds a documented size limit (e.g. exhaustive subset search).
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Not enough data to carry out an estimate (e.g. rate fit on a short trace).
struct InsufficientDataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A production quadrature failed to reach its accuracy target.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hypack
