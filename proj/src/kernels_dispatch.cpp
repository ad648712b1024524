#include <cstdlib>
#include <string>

#include "kernels_impl.hpp"
#include "nmach/kernels.hpp"

namespace nmach::kernels {

using namespace detail;

const KernelSet& scalar() {
  static const KernelSet k{"scalar",
                           dot_scalar,
                           sum_squares_scalar,
                           abs_sum_scalar,
                           sqrt_product_sum_scalar,
                           weighted_sqrt_sum_scalar,
                           axpy_scalar,
                           vec_mat_scalar};
  return k;
}

const KernelSet* avx2() {
#ifdef NMACH_HAVE_AVX2
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  static const KernelSet k{"avx2",
                           dot_avx2,
                           sum_squares_avx2,
                           abs_sum_avx2,
                           sqrt_product_sum_avx2,
                           weighted_sqrt_sum_avx2,
                           axpy_avx2,
                           vec_mat_avx2};
  return ok ? &k : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const KernelSet& choose() {
  const char* env = std::getenv("NMACH_SIMD");
  std::string want = env ? env : "auto";
  if (want == "scalar") return scalar();
  if (const KernelSet* k = avx2()) return *k;
  return scalar();
}

}  // namespace

const KernelSet& active() {
  static const KernelSet& k = choose();
  return k;
}

}  // namespace nmach::kernels
