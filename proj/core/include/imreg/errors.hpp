#pragma once

#include <stdexcept>
#include <string>

namespace imreg {

// Exception hierarchy shared by every module. The CLI maps these onto exit
// codes: ShapeError/PreconditionError -> 2, DegenerateError -> 3,
// BudgetError -> 4.

/// Sizes disagree, or a symbol/index lies outside its declared alphabet.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A distribution or permutation failed validation.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A caller-side precondition of an analytic bound does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The input is well-formed but the requested quantity is undefined for it
/// (zero marginal, zero dispersion, ...).
class DegenerateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// q is not absolutely continuous with respect to p.
class SupportError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A large-deviation threshold lies beyond the largest attainable
/// information density.
class InfeasibleThreshold : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exhaustive enumeration would exceed the configured budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Monte Carlo run produced too few events for the requested statistic.
class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace imreg
