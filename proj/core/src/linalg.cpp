#include "ncpeq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "ncpeq/errors.hpp"

namespace ncpeq::linalg {
namespace {

void require_finite(std::span<const double> xs, const char* what) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i])) {
      throw DomainError(std::string(what) + ": non-finite entry at index " +
                        std::to_string(i));
    }
  }
}

void require_same(std::size_t a, std::size_t b, const char* op) {
  if (a != b) {
    throw DimensionMismatch(std::string(op) + ": dimension " + std::to_string(a) +
                            " vs " + std::to_string(b));
  }
}

}  // namespace

Vector::Vector(std::vector<double> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw DimensionMismatch("Vector: dimension must be >= 1");
  require_finite(entries_, "Vector");
}

Vector::Vector(std::initializer_list<double> entries)
    : Vector(std::vector<double>(entries)) {}

Vector Vector::zeros(std::size_t n) { return Vector(std::vector<double>(n, 0.0)); }

Matrix::Matrix(std::size_t n, std::vector<double> entries)
    : n_(n), entries_(std::move(entries)) {
  if (n_ == 0) throw DimensionMismatch("Matrix: dimension must be >= 1");
  require_same(entries_.size(), n_ * n_, "Matrix");
  require_finite(entries_, "Matrix");
}

Matrix Matrix::zeros(std::size_t n) { return Matrix(n, std::vector<double>(n * n, 0.0)); }

Matrix Matrix::identity(std::size_t n) {
  std::vector<double> e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return Matrix(n, std::move(e));
}

Matrix Matrix::diagonal(const Vector& d) {
  const std::size_t n = d.size();
  std::vector<double> e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = d[i];
  return Matrix(n, std::move(e));
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t n = rows.size();
  std::vector<double> e;
  e.reserve(n * n);
  for (const auto& row : rows) {
    require_same(row.size(), n, "Matrix::from_rows");
    e.insert(e.end(), row.begin(), row.end());
  }
  return Matrix(n, std::move(e));
}

Vector Matrix::diag() const {
  std::vector<double> d(n_);
  for (std::size_t i = 0; i < n_; ++i) d[i] = (*this)(i, i);
  return Vector(std::move(d));
}

Vector operator+(const Vector& a, const Vector& b) {
  require_same(a.size(), b.size(), "vector +");
  std::vector<double> r(a.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
  return Vector(std::move(r));
}

Vector operator-(const Vector& a, const Vector& b) {
  require_same(a.size(), b.size(), "vector -");
  std::vector<double> r(a.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] - b[i];
  return Vector(std::move(r));
}

Vector operator*(double s, const Vector& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = s * v[i];
  return Vector(std::move(r));
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same(a.dim(), b.dim(), "matrix +");
  std::vector<double> r(a.values().begin(), a.values().end());
  for (std::size_t k = 0; k < r.size(); ++k) r[k] += b.values()[k];
  return Matrix(a.dim(), std::move(r));
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same(a.dim(), b.dim(), "matrix -");
  std::vector<double> r(a.values().begin(), a.values().end());
  for (std::size_t k = 0; k < r.size(); ++k) r[k] -= b.values()[k];
  return Matrix(a.dim(), std::move(r));
}

Matrix operator*(double s, const Matrix& a) {
  std::vector<double> r(a.values().begin(), a.values().end());
  for (double& x : r) x *= s;
  return Matrix(a.dim(), std::move(r));
}

double dot(const Vector& a, const Vector& b) {
  require_same(a.size(), b.size(), "dot");
  return std::inner_product(a.values().begin(), a.values().end(), b.values().begin(), 0.0);
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  require_same(a.dim(), b.dim(), "mat_mul");
  const std::size_t n = a.dim();
  std::vector<double> r(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < n; ++j) r[i * n + j] += aik * b(k, j);
    }
  }
  return Matrix(n, std::move(r));
}

Vector mat_vec(const Matrix& a, const Vector& x) {
  require_same(a.dim(), x.size(), "mat_vec");
  const std::size_t n = a.dim();
  std::vector<double> r(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += a(i, j) * x[j];
    r[i] = s;
  }
  return Vector(std::move(r));
}

Vector solve_linear(const Matrix& a, const Vector& b) {
  require_same(a.dim(), b.size(), "solve_linear");
  const std::size_t n = a.dim();
  std::vector<double> lu(a.values().begin(), a.values().end());
  std::vector<double> x(b.values().begin(), b.values().end());

  std::vector<double> col_scale(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      col_scale[j] = std::max(col_scale[j], std::abs(lu[i * n + j]));

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu[i * n + k]) > std::abs(lu[p * n + k])) p = i;

    const double pivot = lu[p * n + k];
    if (!(std::abs(pivot) >= kSingularPivotTolerance * col_scale[k]) || pivot == 0.0)
      throw SingularMatrix(k);

    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu[k * n + j], lu[p * n + j]);
      std::swap(x[k], x[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = lu[i * n + k] / pivot;
      if (m == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu[i * n + j] -= m * lu[k * n + j];
      x[i] -= m * x[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    double s = x[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= lu[k * n + j] * x[j];
    x[k] = s / lu[k * n + k];
  }
  return Vector(std::move(x));
}

double norm2(const Vector& v) {
  // Scaled accumulation keeps huge residuals (|psi| ~ 1e17 and beyond) finite.
  const double scale = norm_inf(v);
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double x : v.values()) {
    const double r = x / scale;
    s += r * r;
  }
  return scale * std::sqrt(s);
}

double norm_inf(const Vector& v) {
  double m = 0.0;
  for (double x : v.values()) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace ncpeq::linalg
