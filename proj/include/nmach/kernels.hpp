#pragma once

#include <cstddef>

// Hot loops used by word enumeration, Gram construction and entropy sums.
// Every variant must agree with the scalar reference to rounding.
namespace nmach::kernels {

struct KernelSet {
  const char* name;
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum_squares)(const double* a, std::size_t n);
  double (*abs_sum)(const double* a, std::size_t n);
  // sum_i sqrt(max(a_i,0) * max(b_i,0))
  double (*sqrt_product_sum)(const double* a, const double* b, std::size_t n);
  // sum_i w_i * sqrt(max(c_i,0))
  double (*weighted_sqrt_sum)(const double* w, const double* c, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // out = v * M for row-major M (rows x cols); out must not alias v
  void (*vec_mat)(const double* v, const double* m, std::size_t rows, std::size_t cols,
                  double* out);
};

const KernelSet& scalar();
// nullptr when not compiled in or the CPU lacks AVX2+FMA.
const KernelSet* avx2();

// Chosen once from NMACH_SIMD (scalar|avx2|auto, default auto).
const KernelSet& active();

}  // namespace nmach::kernels
