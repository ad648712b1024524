#include <cmath>

#include "kernels_impl.hpp"

namespace nmach::kernels::detail {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_squares_scalar(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * a[i];
  return s;
}

double abs_sum_scalar(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::fabs(a[i]);
  return s;
}

double sqrt_product_sum_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double x = a[i] > 0.0 ? a[i] : 0.0;
    double y = b[i] > 0.0 ? b[i] : 0.0;
    s += std::sqrt(x * y);
  }
  return s;
}

double weighted_sqrt_sum_scalar(const double* w, const double* c, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * std::sqrt(c[i] > 0.0 ? c[i] : 0.0);
  return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void vec_mat_scalar(const double* v, const double* m, std::size_t rows, std::size_t cols,
                    double* out) {
  for (std::size_t j = 0; j < cols; ++j) out[j] = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (v[i] == 0.0) continue;
    axpy_scalar(v[i], m + i * cols, out, cols);
  }
}

}  // namespace nmach::kernels::detail
