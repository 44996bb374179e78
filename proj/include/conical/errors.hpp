#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace conical {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (shapes, non-finite entries, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A size cap of a brute-force routine was exceeded.
class DimensionTooLarge : public Error {
 public:
  using Error::Error;
};

/// Floating-point breakdown: a quantity that theory says is nonzero (or a
/// residual that theory says is zero) crossed its threshold.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class InconsistentSystem : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

class NotPointed : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

class ZeroBeta : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

class InconsistentRatios : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

class IterationCap : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

/// The problem is infeasible where the operation requires feasibility.
class InfeasibleProblem : public Error {
 public:
  using Error::Error;
};

/// R(M) meets the nonnegative orthant outside the origin. Carries a
/// nonnegative nonzero vector of R(M) as evidence.
class NotStrictlyTangent : public Error {
 public:
  NotStrictlyTangent(const std::string& what, Eigen::VectorXd witness)
      : Error(what), witness_(std::move(witness)) {}

  const Eigen::VectorXd& witness() const { return witness_; }

 private:
  Eigen::VectorXd witness_;
};

}  // namespace conical
