#pragma once

#include <stdexcept>

namespace xychain {

/// Invalid argument to a library operation (out-of-range size, sector sign, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Request exceeds an enumeration or dense-storage cap.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Iterative numerics failed to converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal invariant did not hold (e.g. a parity block leaked).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace xychain
