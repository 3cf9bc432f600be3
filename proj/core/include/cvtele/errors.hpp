#pragma once

#include <stdexcept>
#include <string>

namespace cvtele {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A truncated representation (jet order, Fock cutoff) cannot hold the result.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative or adaptive procedure did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Post-selection succeeds with vanishing probability; the state cannot be normalized.
class UnpreparableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value that must be real carried an imaginary part above tolerance,
/// or a bounded quantity left its range.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cvtele
