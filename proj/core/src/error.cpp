#include "peerscore/error.hpp"

#include <sstream>

namespace peerscore {

UnboundedScoreError::UnboundedScoreError(std::size_t outcome)
    : DomainError("logarithmic score is unbounded: forecast assigns zero "
                  "probability to observed outcome " +
                  std::to_string(outcome)),
      outcome_(outcome) {}

namespace {

std::string PositivityMessage(std::size_t row, std::size_t col, double value,
                              double lambda_shift) {
  std::ostringstream out;
  out << "expected score for pair (" << row << ", " << col << ") is " << value
      << " but must be strictly positive; increase lambda by more than "
      << lambda_shift;
  return out.str();
}

std::string ConvergenceMessage(int iterations, double residual) {
  std::ostringstream out;
  out << "no consensus after " << iterations
      << " squarings; last residual " << residual;
  return out.str();
}

}  // namespace

PositivityError::PositivityError(std::size_t row, std::size_t col,
                                 double value, double lambda_shift)
    : PreconditionError(PositivityMessage(row, col, value, lambda_shift)),
      row_(row),
      col_(col),
      value_(value),
      lambda_shift_(lambda_shift) {}

ConvergenceError::ConvergenceError(int iterations, double residual)
    : Error(ErrorCategory::kNumeric, ConvergenceMessage(iterations, residual)),
      iterations_(iterations),
      residual_(residual) {}

EnumerationLimitError::EnumerationLimitError(double requested, double limit)
    : PreconditionError("enumeration of " + std::to_string(requested) +
                        " reports exceeds the limit of " +
                        std::to_string(limit)) {}

}  // namespace peerscore
