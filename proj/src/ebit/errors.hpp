#pragma once

#include <stdexcept>
#include <string>

// Error taxonomy.  Each class maps onto one extern-C status code, so the
// boundary translation in capi.cpp stays a table lookup.

namespace ebit {

// Bad parameter values (p outside [0,1], k = 0, ...).
class InvalidArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Dimension mismatch between operands.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Data violates a structural invariant (norm, Hermiticity, completeness...).
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested object exceeds a configured size budget.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed serialized input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Filesystem read/write failure.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical routine failed to converge; never silently zeroed.
class ComputeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Protocol definition references branches that cannot occur.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ebit
