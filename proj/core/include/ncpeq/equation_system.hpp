#pragma once

#include <cstddef>

#include "ncpeq/linalg.hpp"

namespace ncpeq {

/// A square nonlinear system g: R^n -> R^n with an analytic Jacobian.
/// Implementations are immutable and safe to evaluate concurrently.
class EquationSystem {
 public:
  virtual ~EquationSystem() = default;

  virtual std::size_t dimension() const = 0;
  virtual linalg::Vector residual(const linalg::Vector& z) const = 0;
  virtual linalg::Matrix jacobian(const linalg::Vector& z) const = 0;
};

/// The map f of a nonlinear complementarity problem: find z >= 0 with
/// f(z) >= 0 and z'f(z) = 0.
class NcpProblem {
 public:
  virtual ~NcpProblem() = default;

  virtual std::size_t dimension() const = 0;
  virtual linalg::Vector value(const linalg::Vector& z) const = 0;
  virtual linalg::Matrix jacobian(const linalg::Vector& z) const = 0;
};

}  // namespace ncpeq
