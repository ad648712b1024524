#include "nmach/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nmach/error.hpp"

namespace nmach {

SimilarityMap SimilarityMap::from(const Matrix& z, double tol) {
  if (!z.square()) throw Error(Errc::DimensionMismatch, "Z must be square");
  Vector rs = row_sums(z);
  for (double s : rs)
    if (std::fabs(s - 1.0) > tol) throw Error(Errc::InvalidInput, "Z rows must sum to 1");
  return {z, inverse(z)};
}

SimilarityMap SimilarityMap::two_state(double a, double b) {
  if (a == b) throw Error(Errc::SingularMatrix, "Z is singular when a = b");
  return from(Matrix{{a, 1.0 - a}, {b, 1.0 - b}});
}

Machine apply_map(const Machine& m, const SimilarityMap& z) {
  if (z.z.rows != m.num_states()) throw Error(Errc::DimensionMismatch, "Z does not match the state count");
  std::vector<Matrix> mats;
  for (const auto& t : m.matrices()) mats.push_back(z.z * t * z.z_inverse);
  Vector pi = vec_mat(m.stationary(), z.z_inverse);
  return Machine::unchecked(m.alphabet(), plain_labels(m.num_states()), std::move(mats), std::move(pi));
}

SimilarityMap compose(const SimilarityMap& first, const SimilarityMap& second) {
  // T'' = Z2 (Z1 T Z1^{-1}) Z2^{-1}
  return {second.z * first.z, first.z_inverse * second.z_inverse};
}

bool rjmc_domain_check(double p, double a, double b, double tol) {
  if (!(p > 0.0 && p < 1.0) || p == 0.5) throw Error(Errc::InvalidInput, "p must lie in (0,1) and differ from 1/2");
  if (a == b) throw Error(Errc::SingularMatrix, "a = b");
  auto in = [&](double v, double lo, double hi) { return v >= lo - tol && v <= hi + tol; };
  double lo, hi;
  if (p < 0.5) {
    lo = p / (-1.0 + 2.0 * p);
    hi = (-1.0 + p) / (-1.0 + 2.0 * p);
  } else {
    lo = (-1.0 + p) / (-1.0 + 2.0 * p);
    hi = p / (-1.0 + 2.0 * p);
  }
  return (in(a, lo, 0.0) && in(b, 1.0, hi)) || (in(a, 1.0, hi) && in(b, lo, 0.0));
}

SimilarityMap rjmc_map(double p) {
  if (!(p > 0.0 && p < 1.0) || p == 0.5) throw Error(Errc::DegenerateParameter, "p must lie in (0,1) and differ from 1/2");
  double a = p < 0.5 ? p / (-1.0 + 2.0 * p) : (-1.0 + p) / (-1.0 + 2.0 * p);
  return SimilarityMap::two_state(a, 1.0);
}

Machine positive_stationary_family(double p, double a) {
  if (!(p > 0.0 && p < 1.0)) throw Error(Errc::InvalidInput, "p must lie in (0,1)");
  if (!(a > 0.5)) throw Error(Errc::InvalidInput, "a must exceed 1/2");
  Matrix t0{{1.0 + (-2.0 + 1.0 / a) * p, -1.0 + a + 3.0 * p - p / a - 2.0 * a * p},
            {p / a, (-1.0 + a) * p / a}};
  Matrix t1{{0.0, 1.0 - p + a * (-1.0 + 2.0 * p)}, {0.0, 1.0 - p}};
  Vector pi{1.0 / (2.0 * a), (-1.0 + 2.0 * a) / (2.0 * a)};
  return Machine::unchecked({"0", "1"}, plain_labels(2), {t0, t1}, pi);
}

std::optional<std::vector<std::size_t>> match_state_permutation(const Machine& a, const Machine& b, double tol) {
  const std::size_t n = a.num_states();
  if (b.num_states() != n || a.num_symbols() != b.num_symbols()) return std::nullopt;
  if (n > 8) throw Error(Errc::InvalidInput, "permutation search limited to 8 states");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = std::fabs(a.stationary()[i] - b.stationary()[perm[i]]) <= tol;
    for (std::size_t x = 0; x < a.num_symbols() && ok; ++x) {
      const Matrix& tb = b.matrix(b.symbol_index(a.alphabet()[x]));
      for (std::size_t i = 0; i < n && ok; ++i)
        for (std::size_t j = 0; j < n && ok; ++j) ok = std::fabs(a.matrix(x)(i, j) - tb(perm[i], perm[j])) <= tol;
    }
    if (ok) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

}  // namespace nmach
