#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace peerscore {

// Coarse error classes. The command-line tool maps each to an exit code.
enum class ErrorCategory {
  kConfig,   // inconsistent options or parameters
  kInput,    // malformed or out-of-range data
  kNumeric,  // precondition, domain or convergence failure
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

// Vector lengths or matrix shapes that do not line up.
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what)
      : Error(ErrorCategory::kInput, what) {}
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorCategory::kNumeric, what) {}
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error(ErrorCategory::kNumeric, what) {}
};

// The logarithmic rule evaluated at an outcome with zero forecast mass.
class UnboundedScoreError : public DomainError {
 public:
  explicit UnboundedScoreError(std::size_t outcome);

  std::size_t outcome() const noexcept { return outcome_; }

 private:
  std::size_t outcome_;
};

// An expected pairwise score that is not strictly positive, which would
// make the consensus weight matrix invalid.
class PositivityError : public PreconditionError {
 public:
  PositivityError(std::size_t row, std::size_t col, double value,
                  double lambda_shift);

  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }
  double value() const noexcept { return value_; }
  // Any increase of lambda strictly greater than this repairs positivity
  // for every pair.
  double lambda_shift() const noexcept { return lambda_shift_; }

 private:
  std::size_t row_;
  std::size_t col_;
  double value_;
  double lambda_shift_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(int iterations, double residual);

  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

class EnumerationLimitError : public PreconditionError {
 public:
  EnumerationLimitError(double requested, double limit);
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& what)
      : Error(ErrorCategory::kInput, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what)
      : Error(ErrorCategory::kConfig, what) {}
};

}  // namespace peerscore
