#pragma once

#include <stdexcept>
#include <string>

namespace dsp {

/// Malformed or inconsistent input data (duplicate eigenvalues, size or mode
/// mismatch, bad rational literal, ...).
class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An exhaustive search would exceed its configured bound.
class BoundExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A precondition of an operation does not hold for the given input.
class PreconditionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace dsp
