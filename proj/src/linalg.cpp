#include "nmach/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "nmach/error.hpp"

namespace nmach {

namespace {

using EMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using EVec = Eigen::VectorXd;

Eigen::Map<const EMat> view(const Matrix& m) {
  return Eigen::Map<const EMat>(m.data.data(), Eigen::Index(m.rows), Eigen::Index(m.cols));
}

Matrix from_eigen(const EMat& e) {
  Matrix m(std::size_t(e.rows()), std::size_t(e.cols()));
  Eigen::Map<EMat>(m.data.data(), e.rows(), e.cols()) = e;
  return m;
}

void require_finite(const Matrix& m, const char* what) {
  if (!m.finite()) throw Error(Errc::NonFiniteEntries, what);
}

void require_square(const Matrix& m, const char* what) {
  if (!m.square()) throw Error(Errc::DimensionMismatch, std::string(what) + ": matrix not square");
}

double max_abs_entry(const Matrix& m) {
  double s = 0.0;
  for (double x : m.data) s = std::max(s, std::fabs(x));
  return s;
}

}  // namespace

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> init) {
  rows = init.size();
  cols = rows ? init.begin()->size() : 0;
  data.reserve(rows * cols);
  for (const auto& r : init) {
    if (r.size() != cols) throw Error(Errc::DimensionMismatch, "ragged matrix literal");
    data.insert(data.end(), r.begin(), r.end());
  }
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rs) {
  Matrix m;
  m.rows = rs.size();
  m.cols = m.rows ? rs.front().size() : 0;
  m.data.reserve(m.rows * m.cols);
  for (const auto& r : rs) {
    if (r.size() != m.cols) throw Error(Errc::DimensionMismatch, "ragged matrix rows");
    m.data.insert(m.data.end(), r.begin(), r.end());
  }
  return m;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

bool Matrix::finite() const {
  return std::all_of(data.begin(), data.end(), [](double x) { return std::isfinite(x); });
}

std::vector<std::vector<double>> Matrix::to_rows() const {
  std::vector<std::vector<double>> out(rows);
  for (std::size_t i = 0; i < rows; ++i) out[i].assign(row(i), row(i) + cols);
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) throw Error(Errc::DimensionMismatch, "matrix product");
  Matrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      double x = a(i, k);
      if (x == 0.0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw Error(Errc::DimensionMismatch, "matrix sum");
  Matrix c = a;
  for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] += b.data[i];
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw Error(Errc::DimensionMismatch, "matrix difference");
  Matrix c = a;
  for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] -= b.data[i];
  return c;
}

Matrix operator*(double s, const Matrix& a) {
  Matrix c = a;
  for (double& x : c.data) x *= s;
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
  return t;
}

Vector vec_mat(const Vector& v, const Matrix& m) {
  if (v.size() != m.rows) throw Error(Errc::DimensionMismatch, "vector-matrix product");
  Vector out(m.cols, 0.0);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) out[j] += v[i] * m(i, j);
  return out;
}

Vector mat_vec(const Matrix& m, const Vector& v) {
  if (v.size() != m.cols) throw Error(Errc::DimensionMismatch, "matrix-vector product");
  Vector out(m.rows, 0.0);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) out[i] += m(i, j) * v[j];
  return out;
}

Vector row_sums(const Matrix& m) {
  Vector s(m.rows, 0.0);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) s[i] += m(i, j);
  return s;
}

double sum(const Vector& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

double max_abs_diff(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "vector compare");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
  return d;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw Error(Errc::DimensionMismatch, "matrix compare");
  return max_abs_diff(a.data, b.data);
}

double trace(const Matrix& m) {
  double t = 0.0;
  for (std::size_t i = 0; i < std::min(m.rows, m.cols); ++i) t += m(i, i);
  return t;
}

double frobenius_sq(const Matrix& m) {
  double s = 0.0;
  for (double x : m.data) s += x * x;
  return s;
}

bool all_finite(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

Vector left_fixed_vector(const Matrix& m, double tol) {
  require_square(m, "left_fixed_vector");
  require_finite(m, "left_fixed_vector");
  const std::size_t n = m.rows;
  if (n == 0) throw Error(Errc::DimensionMismatch, "left_fixed_vector: empty matrix");

  Vector rs = row_sums(m);
  bool quasi_stochastic = std::all_of(rs.begin(), rs.end(), [&](double s) { return std::fabs(s - 1.0) <= tol; });
  const double scale = std::max(1.0, max_abs_entry(m));

  Vector v(n);
  if (quasi_stochastic) {
    // pi (I - T + 11^T) = 1^T. The system is singular exactly when the unit
    // eigenvalue is not simple, which also catches Jordan blocks.
    EMat k = EMat::Identity(Eigen::Index(n), Eigen::Index(n)) - view(m);
    k.array() += 1.0;
    Eigen::FullPivLU<EMat> lu(k.transpose());
    lu.setThreshold(tol);
    if (lu.rank() < Eigen::Index(n))
      throw Error(Errc::DegenerateFixedSpace, "unit eigenvalue is not simple");
    EVec x = lu.solve(EVec::Ones(Eigen::Index(n)));
    for (std::size_t i = 0; i < n; ++i) v[i] = x[Eigen::Index(i)];
  } else {
    EMat a = view(m).transpose() - EMat::Identity(Eigen::Index(n), Eigen::Index(n));
    Eigen::FullPivLU<EMat> lu(a);
    lu.setThreshold(tol);
    EMat ker = lu.kernel();
    if (lu.rank() == Eigen::Index(n)) throw Error(Errc::NoUnitEigenvalue, "no eigenvalue at 1");
    if (ker.cols() > 1) throw Error(Errc::DegenerateFixedSpace, "fixed space has dimension > 1");
    double s = ker.col(0).sum();
    if (std::fabs(s) <= tol * ker.col(0).cwiseAbs().sum())
      throw Error(Errc::NoUnitEigenvalue, "fixed vector cannot be normalised to sum 1");
    for (std::size_t i = 0; i < n; ++i) v[i] = ker(Eigen::Index(i), 0) / s;
  }

  if (!all_finite(v)) throw Error(Errc::NonFiniteEntries, "fixed vector not finite");
  double total = sum(v);
  for (double& x : v) x /= total;
  double vmax = 1.0;
  for (double x : v) vmax = std::max(vmax, std::fabs(x));
  if (max_abs_diff(vec_mat(v, m), v) > kEigenTol * scale * vmax)
    throw Error(Errc::NoUnitEigenvalue, "fixed vector residual too large");
  return v;
}

Vector solve_linear(const Matrix& a, const Vector& b, double tol) {
  require_square(a, "solve_linear");
  require_finite(a, "solve_linear");
  if (b.size() != a.rows) throw Error(Errc::DimensionMismatch, "solve_linear: rhs size");
  Eigen::FullPivLU<EMat> lu(view(a));
  lu.setThreshold(tol);
  if (!lu.isInvertible()) throw Error(Errc::SingularMatrix, "solve_linear");
  EVec x = lu.solve(Eigen::Map<const EVec>(b.data(), Eigen::Index(b.size())));
  return Vector(x.data(), x.data() + x.size());
}

Matrix inverse(const Matrix& a, double tol) {
  require_square(a, "inverse");
  require_finite(a, "inverse");
  Eigen::FullPivLU<EMat> lu(view(a));
  lu.setThreshold(tol);
  if (!lu.isInvertible()) throw Error(Errc::SingularMatrix, "inverse");
  return from_eigen(lu.inverse());
}

SymmetricEigen symmetric_eigen(const Matrix& m, double tol) {
  require_square(m, "symmetric_eigen");
  require_finite(m, "symmetric_eigen");
  const double scale = std::max(1.0, max_abs_entry(m));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = i + 1; j < m.cols; ++j)
      if (std::fabs(m(i, j) - m(j, i)) > tol * scale) {
        std::ostringstream os;
        os << "entry (" << i << "," << j << ") asymmetric by " << std::fabs(m(i, j) - m(j, i));
        throw Error(Errc::NotSymmetric, os.str());
      }
  EMat sym = 0.5 * (view(m) + view(m).transpose());
  Eigen::SelfAdjointEigenSolver<EMat> es(sym);
  if (es.info() != Eigen::Success) throw Error(Errc::NotConverged, "symmetric eigensolver");
  const std::size_t n = m.rows;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  const EVec& ev = es.eigenvalues();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return ev[Eigen::Index(a)] > ev[Eigen::Index(b)]; });
  SymmetricEigen out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = ev[Eigen::Index(order[c])];
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = es.eigenvectors()(Eigen::Index(r), Eigen::Index(order[c]));
  }
  return out;
}

Vector symmetric_eigenvalues(const Matrix& m, double tol) { return symmetric_eigen(m, tol).values; }

}  // namespace nmach
