#pragma once

#include <optional>
#include <vector>

#include "nmach/machine.hpp"

namespace nmach {

struct SimilarityMap {
  Matrix z;
  Matrix z_inverse;

  // Requires Z 1 = 1 and Z invertible.
  static SimilarityMap from(const Matrix& z, double tol = kStructTol);
  // Z = [[a, 1-a], [b, 1-b]]
  static SimilarityMap two_state(double a, double b);
};

// pi' = pi Z^{-1}, T'^(x) = Z T^(x) Z^{-1}
Machine apply_map(const Machine& m, const SimilarityMap& z);
SimilarityMap compose(const SimilarityMap& first, const SimilarityMap& second);

// Nonnegativity domain of Z T^(x) Z^{-1} for the Perturbed Coin epsilon-machine.
bool rjmc_domain_check(double p, double a, double b, double tol = 1e-12);
// a = p/(2p-1) (p < 1/2) or (p-1)/(2p-1) (p > 1/2), b = 1.
SimilarityMap rjmc_map(double p);

// Closed forms for a > 1/2, b = 0.
Machine positive_stationary_family(double p, double a);

// perm[i] = state of b that plays state i of a, when matrices and stationary agree.
std::optional<std::vector<std::size_t>> match_state_permutation(const Machine& a, const Machine& b,
                                                                double tol = 1e-12);

}  // namespace nmach
