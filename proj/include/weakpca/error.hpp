#pragma once

#include <stdexcept>
#include <string>

namespace weakpca {

// Argument outside its mathematical domain (non-PD matrix, bad parameter, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iterative numeric routine hit its iteration cap (eigensolver, quantile).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Degenerate input detected during orthogonalization.
class RankError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fixed-point iteration ran out of iterations; carries the last residual.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// Too few observations for the requested estimator.
class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace weakpca
