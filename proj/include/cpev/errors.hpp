#pragma once

#include <stdexcept>
#include <string>

namespace cpev {

// Argument outside the mathematical domain of an operation (e.g. n < 3).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller-supplied data violates a stated precondition.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Metric degenerate or not positive definite at the requested point.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Data required by an operation is not provided (missing partials, no spectrum).
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite value produced while evaluating an integrand or field.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cpev
