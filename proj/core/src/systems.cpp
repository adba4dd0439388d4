#include "ncpeq/systems.hpp"

#include <cmath>

#include "ncpeq/errors.hpp"

namespace ncpeq::systems {
namespace {

void require_dim(const linalg::Vector& z, std::size_t n) {
  if (z.size() != n) throw DimensionMismatch("system dimension mismatch");
}

}  // namespace

linalg::Vector QuadraticScalar::residual(const linalg::Vector& z) const {
  require_dim(z, 1);
  return linalg::Vector{z[0] * z[0] - 4.0};
}

linalg::Matrix QuadraticScalar::jacobian(const linalg::Vector& z) const {
  require_dim(z, 1);
  return linalg::Matrix(1, {2.0 * z[0]});
}

linalg::Vector SmoothPlanar::residual(const linalg::Vector& z) const {
  require_dim(z, 2);
  const double u = z[0] - 1.0;
  const double v = z[1] - 1.0;
  return linalg::Vector{std::expm1(u) + 0.5 * v, u + 0.5 * std::sinh(v) + v};
}

linalg::Matrix SmoothPlanar::jacobian(const linalg::Vector& z) const {
  require_dim(z, 2);
  const double u = z[0] - 1.0;
  const double v = z[1] - 1.0;
  return linalg::Matrix::from_rows({{std::exp(u), 0.5}, {1.0, 0.5 * std::cosh(v) + 1.0}});
}

}  // namespace ncpeq::systems
