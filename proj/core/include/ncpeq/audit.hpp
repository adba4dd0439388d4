#pragma once

#include <cstddef>
#include <functional>
#include <random>

#include "ncpeq/linalg.hpp"
#include "ncpeq/market.hpp"

namespace ncpeq::audit {

using VectorFn = std::function<linalg::Vector(const linalg::Vector&)>;

/// Central-difference Jacobian with step rel_step * max(1, |z_j|) per column.
linalg::Matrix finite_difference_jacobian(const VectorFn& fn, const linalg::Vector& z,
                                          double rel_step = 1e-5);

/// max_i max_j |a_ij - b_ij| / max_j |b_ij|. Rows of a psi Jacobian differ by
/// many orders of magnitude, so each row is normalised separately.
double row_relative_error(const linalg::Matrix& a, const linalg::Matrix& b);

/// A randomly drawn market together with a point that solves its NCP exactly
/// up to rounding. Components are zero with probability 1/3 (f_i >= 0 there,
/// sometimes exactly 0); the others are positive with f_i = 0 by choice of n_i.
struct ComplementaryInstance {
  market::MarketModel market;
  linalg::Vector z;
};

ComplementaryInstance make_complementary_instance(std::mt19937_64& rng, std::size_t n_firms,
                                                  market::CostVariant variant);

}  // namespace ncpeq::audit
