#pragma once

#include <stdexcept>
#include <string>

namespace curvcert {

// Base class for everything thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parsing / input document problems.
struct ParseError : Error {
  using Error::Error;
};

// Degree or dimension constraint violated (degree overflow, k > n, n < 3, ...).
struct DimensionError : Error {
  using Error::Error;
};

// Wrong metric signature for the requested operation.
struct SignatureError : Error {
  using Error::Error;
};

// Two component entries imply different values for the same slot.
struct SymmetryConflict : Error {
  using Error::Error;
};

// The first Bianchi identity fails on some 4-subset.
struct BianchiViolation : Error {
  using Error::Error;
};

// A reflection axis with g(u,u) = 0.
struct NullVectorError : Error {
  using Error::Error;
};

// Preconditions of a certified operation do not hold.
struct PreconditionFailed : Error {
  using Error::Error;
};

// Operand is not trace-free where a Weyl tensor is required.
struct NotWeylError : Error {
  using Error::Error;
};

// The curvature operator fails to commute with the Hodge star.
struct StarCommutationError : Error {
  using Error::Error;
};

// Float-mode eigenvalue gaps too small to classify reliably.
struct IndeterminateClassification : Error {
  using Error::Error;
};

// An exact nonzero appeared where a theorem demands zero.
struct CertificateViolation : Error {
  using Error::Error;
};

}  // namespace curvcert
