#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nmach/machine.hpp"

namespace nmach {

enum class Branch { Plus, Minus };

// constant + sum_i coeffs[i] * params[i]
struct AffinePart {
  double constant = 0.0;
  std::vector<double> coeffs;
  double eval(const std::vector<double>& params) const;
};

// Source transition sigma_j --x--> sigma_k, seen from copy l_j of sigma_j.
struct SplitKey {
  std::size_t j = 0, lj = 0, x = 0, k = 0;
  auto operator<=>(const SplitKey&) const = default;
};

// parts[key] gives the first copies[k]-1 parts; the last copy takes the remainder, so the
// parts always sum to T^(x)[j][k]. Keys left out split the source entry evenly.
struct SplitSpec {
  std::vector<std::size_t> copies;
  std::vector<std::string> param_names;
  std::map<SplitKey, std::vector<AffinePart>> parts;

  std::size_t num_states() const;
  // index of (k, l) in the extended state order
  std::size_t state_index(std::size_t k, std::size_t l) const;
};

SplitSpec trivial_split(const Machine& source);
SplitSpec perturbed_coin_split(double p);   // params q1, q2
SplitSpec sns_split(double p);              // params gamma, eta
SplitSpec golden_mean_bad_split(double p);  // param q

Machine build_split_machine(const Machine& source, const SplitSpec& spec,
                            const std::vector<double>& params, double tol = kStructTol);

struct NMachineProperties {
  double construct_split = 0.0;       // |sum_l part - T^(x)[j][k]|
  double coarse_graining = 0.0;       // |sum_l pi~_{k,l} - pi_k|
  double symbol_conditional = 0.0;    // |P(x|sigma~_{k,l}) - P(x|sigma_k)|
  double word_conditional = 0.0;      // |P(w|sigma~_{k,l}) - P(w|sigma_k)|, |w| <= word_horizon
  double process = 0.0;               // word distributions, |w| <= process_horizon
  double half_information = 0.0;      // |I_1/2[S~;F^L] - I_1/2[S;F^L]|
  double tol = 1e-9;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

NMachineProperties check_nmachine_properties(const Machine& source, const Machine& built,
                                             const SplitSpec& spec, std::size_t word_horizon = 6,
                                             std::size_t process_horizon = 8, double tol = 1e-9);
// As above but throws PropertyViolated listing every failed check.
NMachineProperties verify_nmachine_properties(const Machine& source, const Machine& built,
                                              const SplitSpec& spec, std::size_t word_horizon = 6,
                                              std::size_t process_horizon = 8, double tol = 1e-9);

struct NMachineResult {
  Machine machine;
  std::vector<std::string> names;
  std::vector<double> params;
  double c_n2 = 0.0;
  double e_half = 0.0;
  double negativity = 0.0;
  double mana = 0.0;
  double advantage = 0.0;
  double baseline = 0.0;  // C^(2) of the reference classical model
  bool saturated = false;
  bool violates_bound = false;  // C_n^(2) < E_1/2 beyond tolerance
  double sat_tol = 0.0;         // absolute tolerance actually applied
};

// sat_tol is relative to E_1/2; extra_tol widens it (e.g. truncation residuals).
NMachineResult evaluate_nmachine(const Machine& source, const SplitSpec& spec,
                                 const std::vector<double>& params, double e_half, double baseline,
                                 double sat_tol = 1e-6, double extra_tol = 0.0);

// q1 = 0, q2 = p/2 +- p^2 sqrt(1/(4p^2) + 2 sqrt(1-p)/p^{3/2}).
std::pair<double, double> perturbed_coin_ideal_params(double p, Branch branch);
// gamma = 0, eta = (1/2)[1-p +- (p-1) sqrt(8M-3)], M truncated at N.
std::pair<double, double> sns_ideal_params(double p, std::size_t N, Branch branch);

NMachineResult golden_mean_bad_nmachine(double p, double q, std::size_t horizon = 12);

struct OptimizeOptions {
  std::size_t random_starts = 8;
  std::uint64_t seed = 0;
  double start_radius = 1.0;
  double initial_step = 0.25;
  double min_step = 1e-12;
  std::size_t max_evaluations = 200000;
  std::size_t max_params = 8;
  double sat_tol = 1e-6;
  double extra_tol = 0.0;
  double baseline = -1.0;  // < 0: use H2 of the source stationary vector
};

NMachineResult optimize_ideal(const Machine& source, const SplitSpec& spec, double e_half,
                              const OptimizeOptions& opts = {});

}  // namespace nmach
