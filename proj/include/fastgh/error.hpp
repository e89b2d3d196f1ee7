#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fastgh {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Index (or derived right-hand side) outside the admissible range.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// An asymptotic formula produced a negative radicand.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

/// Operation asked for outside the size regime it supports.
class RegimeError : public Error {
 public:
  using Error::Error;
};

/// Scaled recurrence still overflowed.
class ScalingError : public Error {
 public:
  using Error::Error;
};

/// Discretized inner products did not converge under refinement.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// Equilibrium support Newton iteration failed.
class SupportSolveError : public Error {
 public:
  SupportSolveError(const std::string& what, double a, double b)
      : Error(what), a_(a), b_(b) {}
  double last_a() const noexcept { return a_; }
  double last_b() const noexcept { return b_; }

 private:
  double a_;
  double b_;
};

/// Equilibrium measure is not supported on a single interval.
class UnsupportedRegimeError : public Error {
 public:
  using Error::Error;
};

/// Barycentric weight requested at a node with vanishing derivative.
class DegenerateNodeError : public Error {
 public:
  using Error::Error;
};

/// Generic numerical failure (eigensolver, bracketing).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Newton iteration failed for one node.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::size_t index, double residual)
      : Error(what + " (index " + std::to_string(index) + ", last residual " +
              std::to_string(residual) + ")"),
        index_(index),
        residual_(residual) {}
  std::size_t index() const noexcept { return index_; }
  double residual() const noexcept { return residual_; }

 private:
  std::size_t index_;
  double residual_;
};

}  // namespace fastgh
