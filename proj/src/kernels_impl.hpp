#pragma once

#include <cstddef>

namespace nmach::kernels::detail {

double dot_scalar(const double* a, const double* b, std::size_t n);
double sum_squares_scalar(const double* a, std::size_t n);
double abs_sum_scalar(const double* a, std::size_t n);
double sqrt_product_sum_scalar(const double* a, const double* b, std::size_t n);
double weighted_sqrt_sum_scalar(const double* w, const double* c, std::size_t n);
void axpy_scalar(double alpha, const double* x, double* y, std::size_t n);
void vec_mat_scalar(const double* v, const double* m, std::size_t rows, std::size_t cols,
                    double* out);

#ifdef NMACH_HAVE_AVX2
double dot_avx2(const double* a, const double* b, std::size_t n);
double sum_squares_avx2(const double* a, std::size_t n);
double abs_sum_avx2(const double* a, std::size_t n);
double sqrt_product_sum_avx2(const double* a, const double* b, std::size_t n);
double weighted_sqrt_sum_avx2(const double* w, const double* c, std::size_t n);
void axpy_avx2(double alpha, const double* x, double* y, std::size_t n);
void vec_mat_avx2(const double* v, const double* m, std::size_t rows, std::size_t cols,
                  double* out);
#endif

}  // namespace nmach::kernels::detail
