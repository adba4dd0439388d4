#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "ncpeq/errors.hpp"
#include "ncpeq/linalg.hpp"
#include "oracles.hpp"

using namespace ncpeq;
using linalg::Matrix;
using linalg::Vector;

TEST(Linalg, SolvesSmallSystem) {
  const Matrix a = Matrix::from_rows({{2, 1}, {1, 3}});
  const Vector x = linalg::solve_linear(a, Vector{3, 5});
  EXPECT_NEAR(x[0], 0.8, 1e-15);
  EXPECT_NEAR(x[1], 1.4, 1e-15);
}

TEST(Linalg, PartialPivotingHandlesZeroLeadingEntry) {
  const Matrix a = Matrix::from_rows({{0, 1}, {1, 0}});
  const Vector x = linalg::solve_linear(a, Vector{2, 3});
  EXPECT_DOUBLE_EQ(x[0], 3.0);
  EXPECT_DOUBLE_EQ(x[1], 2.0);
}

TEST(Linalg, SingularMatrixReportsPivot) {
  const Matrix a = Matrix::from_rows({{1, 2}, {2, 4}});
  try {
    linalg::solve_linear(a, Vector{1, 1});
    FAIL() << "expected SingularMatrix";
  } catch (const SingularMatrix& e) {
    EXPECT_EQ(e.pivot(), 1u);
  }
}

TEST(Linalg, ZeroMatrixIsSingularAtFirstPivot) {
  try {
    linalg::solve_linear(Matrix::zeros(3), Vector{1, 1, 1});
    FAIL() << "expected SingularMatrix";
  } catch (const SingularMatrix& e) {
    EXPECT_EQ(e.pivot(), 0u);
  }
}

TEST(Linalg, DimensionMismatchIsRejected) {
  EXPECT_THROW(linalg::solve_linear(Matrix::identity(2), Vector{1, 2, 3}), DimensionMismatch);
  EXPECT_THROW((Vector{1} + Vector{1, 2}), DimensionMismatch);
  EXPECT_THROW(linalg::dot(Vector{1}, Vector{1, 2}), DimensionMismatch);
  EXPECT_THROW(linalg::mat_mul(Matrix::identity(2), Matrix::identity(3)), DimensionMismatch);
  EXPECT_THROW(linalg::mat_vec(Matrix::identity(2), Vector{1}), DimensionMismatch);
  EXPECT_THROW(Matrix(2, {1, 2, 3}), DimensionMismatch);
}

TEST(Linalg, NonFiniteEntriesAreRejected) {
  EXPECT_THROW(Vector({1.0, std::numeric_limits<double>::quiet_NaN()}), DomainError);
  EXPECT_THROW(Vector({std::numeric_limits<double>::infinity()}), DomainError);
  EXPECT_THROW(Matrix(1, {std::numeric_limits<double>::quiet_NaN()}), DomainError);
  EXPECT_THROW(Vector(std::vector<double>{}), DimensionMismatch);
}

TEST(Linalg, Norms) {
  const Vector v{3, -4};
  EXPECT_DOUBLE_EQ(linalg::norm2(v), 5.0);
  EXPECT_DOUBLE_EQ(linalg::norm_inf(v), 4.0);
  // scaled accumulation must not overflow
  const Vector big{1e200, 1e200};
  EXPECT_NEAR(linalg::norm2(big) / 1e200, std::sqrt(2.0), 1e-15);
}

TEST(Linalg, DiagonalAndIdentity) {
  const Matrix d = Matrix::diagonal(Vector{1, 2, 3});
  EXPECT_EQ(d.diag(), (Vector{1, 2, 3}));
  EXPECT_EQ(d(0, 1), 0.0);
  EXPECT_EQ(linalg::mat_mul(d, Matrix::identity(3)), d);
}

TEST(LinalgProperty, DiagonallyDominantSolveHasSmallResidual) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 8;
    std::vector<double> a(n * n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        a[i * n + j] = fx::uniform(rng, -1, 1);
        row += std::abs(a[i * n + j]);
      }
      a[i * n + i] = row + 1.0;
      b[i] = fx::uniform(rng, -10, 10);
    }
    const Matrix m(n, a);
    const Vector rhs(b);
    const Vector x = linalg::solve_linear(m, rhs);
    EXPECT_LE(linalg::norm_inf(linalg::mat_vec(m, x) - rhs), 1e-12 * (1 + linalg::norm_inf(rhs)));
  }
}

TEST(LinalgProperty, MatMulIsAssociative) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 5;
    auto random = [&] {
      std::vector<double> e(n * n);
      for (auto& v : e) v = fx::uniform(rng, -2, 2);
      return Matrix(n, e);
    };
    const Matrix a = random(), b = random(), c = random();
    const Matrix lhs = linalg::mat_mul(linalg::mat_mul(a, b), c);
    const Matrix rhs = linalg::mat_mul(a, linalg::mat_mul(b, c));
    for (std::size_t i = 0; i < n * n; ++i) EXPECT_NEAR(lhs.values()[i], rhs.values()[i], 1e-12);
  }
}

TEST(LinalgProperty, Norm2SquaredIsDot) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> e(1 + trial % 9);
    for (auto& v : e) v = fx::uniform(rng, -100, 100);
    const Vector v(e);
    const double n = linalg::norm2(v);
    EXPECT_NEAR(n * n, linalg::dot(v, v), 1e-12 * linalg::dot(v, v));
  }
}
