#pragma once

#include <stdexcept>
#include <string>

namespace qes {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the inputs was violated (bad parameters, bad flags).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A computation broke down numerically.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Cholesky factorization met a non-positive pivot.
class CholeskyBreakdown : public NumericalError {
 public:
  explicit CholeskyBreakdown(int pivot)
      : NumericalError("Cholesky breakdown at pivot " + std::to_string(pivot)),
        pivot_(pivot) {}
  int pivot() const noexcept { return pivot_; }

 private:
  int pivot_;
};

/// Forward series evaluation left the finite range.
class SeriesOverflow : public NumericalError {
 public:
  explicit SeriesOverflow(int last_valid)
      : NumericalError("series coefficients overflow after index " +
                       std::to_string(last_valid)),
        last_valid_(last_valid) {}
  int last_valid_index() const noexcept { return last_valid_; }

 private:
  int last_valid_;
};

}  // namespace qes
