#pragma once

#include <cstddef>

#include "nmach/machine.hpp"

namespace nmach {

inline constexpr double kTruncEps = 1e-12;

Machine iid_coin(double p = 0.5);
Machine perturbed_coin_epsilon(double p);
// Fig. 5a form for p < 1/2, Fig. 5b form for p > 1/2.
Machine perturbed_coin_rjmc(double p);
Machine golden_mean_epsilon(double p);
Machine sns_g_machine(double p);
// Pinned to the standard p = 1/2 parameterisation.
Machine even_process_epsilon();

// phi(n) = n p^(n-1) (1-p)^2, Phi(n) = sum_{k>=n} phi(k).
double sns_phi(double p, std::size_t n);
double sns_Phi(double p, std::size_t n);
// Smallest N >= 2 with Phi(N+1) < eps.
std::size_t sns_default_truncation(double p, double eps = kTruncEps);
// States sigma_0..sigma_N; sigma_N keeps the residual survival mass on a 0 self-loop.
// Throws TruncationTooCoarse when Phi(N+1) > tail_tol.
Machine sns_epsilon_truncated(double p, std::size_t N, double tail_tol = kTruncEps);

struct SnsRenewalData {
  double p = 0.0;
  std::size_t N = 0;
  Vector phi;   // phi(0..N)
  Vector Phi;   // Phi(0..N+1)
  double mu = 0.0;  // 1 / sum_{n<=N} Phi(n)
  double tail_mass = 0.0;  // Phi(N+1)
};

SnsRenewalData sns_renewal_data(double p, std::size_t N);

}  // namespace nmach
