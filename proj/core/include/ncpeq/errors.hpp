#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ncpeq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of the function being evaluated
/// (negative supply, non-positive total supply, non-finite entries, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// LU factorization met a pivot below the relative singularity threshold.
class SingularMatrix : public Error {
 public:
  explicit SingularMatrix(std::size_t pivot)
      : Error("singular matrix: pivot " + std::to_string(pivot) +
              " below relative threshold"),
        pivot_(pivot) {}

  std::size_t pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_;
};

/// Too few usable iterates to form a convergence-order estimate.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

}  // namespace ncpeq
