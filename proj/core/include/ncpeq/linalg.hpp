#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ncpeq::linalg {

/// Dense real vector. Entries are finite; the dimension is at least one.
class Vector {
 public:
  explicit Vector(std::vector<double> entries);
  Vector(std::initializer_list<double> entries);

  /// n zeros.
  static Vector zeros(std::size_t n);

  std::size_t size() const noexcept { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  std::span<const double> values() const noexcept { return entries_; }
  const std::vector<double>& to_std() const noexcept { return entries_; }

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::vector<double> entries_;
};

/// Dense square matrix, row-major. Entries are finite.
class Matrix {
 public:
  /// `entries` holds n*n values in row-major order.
  Matrix(std::size_t n, std::vector<double> entries);

  static Matrix zeros(std::size_t n);
  static Matrix identity(std::size_t n);
  static Matrix diagonal(const Vector& d);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t dim() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  std::span<const double> values() const noexcept { return entries_; }
  Vector diag() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t n_;
  std::vector<double> entries_;
};

Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(double s, const Vector& v);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);

double dot(const Vector& a, const Vector& b);
Matrix mat_mul(const Matrix& a, const Matrix& b);
Vector mat_vec(const Matrix& a, const Vector& x);

/// Solves a*x = b by LU factorization with partial pivoting. Throws
/// SingularMatrix when a pivot falls below 1e-12 times the largest initial
/// magnitude in its column.
Vector solve_linear(const Matrix& a, const Vector& b);

double norm2(const Vector& v);
double norm_inf(const Vector& v);

/// Relative pivot threshold used by solve_linear.
inline constexpr double kSingularPivotTolerance = 1e-12;

}  // namespace ncpeq::linalg
