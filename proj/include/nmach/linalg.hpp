#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace nmach {

inline constexpr double kStructTol = 1e-10;  // row sums, symmetry
inline constexpr double kEigenTol = 1e-8;    // eigen-residuals

using Vector = std::vector<double>;

struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;  // row-major

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> init);
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);
  static Matrix identity(std::size_t n);

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  const double* row(std::size_t i) const { return data.data() + i * cols; }
  double* row(std::size_t i) { return data.data() + i * cols; }
  bool square() const { return rows == cols; }
  bool finite() const;
  std::vector<std::vector<double>> to_rows() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);
Matrix transpose(const Matrix& a);

Vector vec_mat(const Vector& v, const Matrix& m);  // row vector times matrix
Vector mat_vec(const Matrix& m, const Vector& v);
Vector row_sums(const Matrix& m);
double sum(const Vector& v);
double max_abs_diff(const Vector& a, const Vector& b);
double max_abs_diff(const Matrix& a, const Matrix& b);
double trace(const Matrix& m);
double frobenius_sq(const Matrix& m);
bool all_finite(const Vector& v);

// v with v*m = v, sum(v) = 1. Rejects degenerate or missing unit eigenspaces.
Vector left_fixed_vector(const Matrix& m, double tol = kStructTol);

Vector solve_linear(const Matrix& a, const Vector& b, double tol = 1e-12);
Matrix inverse(const Matrix& a, double tol = 1e-12);

struct SymmetricEigen {
  Vector values;   // descending
  Matrix vectors;  // column i pairs with values[i]
};

Vector symmetric_eigenvalues(const Matrix& m, double tol = kStructTol);
SymmetricEigen symmetric_eigen(const Matrix& m, double tol = kStructTol);

}  // namespace nmach
