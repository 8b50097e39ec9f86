#pragma once

#include <stdexcept>
#include <string>

namespace simplex_interp {

/// Base class for all input-validation failures raised by this library.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ZeroPolynomial : InputError {
  ZeroPolynomial() : InputError("ZeroPolynomial: operation requires a nonzero polynomial") {}
};

struct InvalidDegree : InputError {
  explicit InvalidDegree(int k)
      : InputError("InvalidDegree: degree must be >= 1, got " + std::to_string(k)) {}
};

struct TooFewNodes : InputError {
  explicit TooFewNodes(std::size_t n)
      : InputError("TooFewNodes: need at least 2 nodes, got " + std::to_string(n)) {}
};

struct DuplicateNodes : InputError {
  explicit DuplicateNodes(const std::string& where)
      : InputError("DuplicateNodes: repeated node value " + where) {}
};

struct NodeOutOfRange : InputError {
  explicit NodeOutOfRange(const std::string& value)
      : InputError("NodeOutOfRange: node " + value + " lies outside [-1,1]") {}
};

struct InvalidRadius : InputError {
  explicit InvalidRadius(const std::string& value)
      : InputError("InvalidRadius: r must satisfy 0 < r <= 1, got " + value) {}
};

/// Numerical failure: the interpolation system is singular at the current
/// working precision (|det A| below the admissibility threshold).
struct SingularSystem : std::runtime_error {
  explicit SingularSystem(const std::string& detail)
      : std::runtime_error("SingularSystem: " + detail) {}
};

}  // namespace simplex_interp
