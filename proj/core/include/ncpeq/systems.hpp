#pragma once

#include "ncpeq/equation_system.hpp"

namespace ncpeq::systems {

/// g(z) = z^2 - 4 with root z = 2. Textbook case for quadratic Newton
/// convergence.
class QuadraticScalar final : public EquationSystem {
 public:
  std::size_t dimension() const override { return 1; }
  linalg::Vector residual(const linalg::Vector& z) const override;
  linalg::Matrix jacobian(const linalg::Vector& z) const override;
};

/// Smooth, well-conditioned planar system with root (1, 1):
///   g_1 = exp(u) - 1 + v/2
///   g_2 = u + sinh(v)/2 + v,     u = z_1 - 1, v = z_2 - 1.
class SmoothPlanar final : public EquationSystem {
 public:
  std::size_t dimension() const override { return 2; }
  linalg::Vector residual(const linalg::Vector& z) const override;
  linalg::Matrix jacobian(const linalg::Vector& z) const override;
};

}  // namespace ncpeq::systems
