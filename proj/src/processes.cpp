#include "nmach/processes.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "nmach/error.hpp"

namespace nmach {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void require_open_unit(double p, const char* who) {
  if (!(p > 0.0 && p < 1.0)) throw Error(Errc::InvalidInput, std::string(who) + ": p must lie in (0,1)");
}

void require_not_half(double p, const char* who) {
  require_open_unit(p, who);
  if (p == 0.5)
    throw Error(Errc::DegenerateParameter,
                std::string(who) + ": p = 1/2 collapses to the unbiased coin (use iid_coin)");
}

const std::vector<std::string> kBinary{"0", "1"};

}  // namespace

Machine iid_coin(double p) {
  require_open_unit(p, "iid_coin");
  return Machine::build(kBinary, plain_labels(1), {Matrix{{1.0 - p}}, Matrix{{p}}});
}

Machine perturbed_coin_epsilon(double p) {
  require_not_half(p, "perturbed_coin_epsilon");
  Matrix t0{{1.0 - p, 0.0}, {p, 0.0}};
  Matrix t1{{0.0, p}, {0.0, 1.0 - p}};
  return Machine::build(kBinary, plain_labels(2), {t0, t1});
}

Machine perturbed_coin_rjmc(double p) {
  require_not_half(p, "perturbed_coin_rjmc");
  std::vector<StateLabel> labels{{"A", 0, 0}, {"B", 1, 0}};
  if (p < 0.5) {
    Matrix t0{{0.0, 0.0}, {0.0, 1.0 - p}};
    Matrix t1{{(1.0 - 2.0 * p) / (1.0 - p), p / (1.0 - p)},
              {p * (1.0 - 2.0 * p) / (1.0 - p), p * p / (1.0 - p)}};
    return Machine::build(kBinary, labels, {t0, t1});
  }
  Matrix t0{{1.0 - p, 0.0}, {1.0, 0.0}};
  Matrix t1{{1.0 - p, 2.0 * p - 1.0}, {0.0, 0.0}};
  return Machine::build(kBinary, labels, {t0, t1});
}

Machine golden_mean_epsilon(double p) {
  require_open_unit(p, "golden_mean_epsilon");
  Matrix t0{{p, 0.0}, {1.0, 0.0}};
  Matrix t1{{0.0, 1.0 - p}, {0.0, 0.0}};
  return Machine::build(kBinary, plain_labels(2), {t0, t1});
}

Machine sns_g_machine(double p) {
  require_open_unit(p, "sns_g_machine");
  std::vector<StateLabel> labels{{"A", 0, 0}, {"B", 1, 0}};
  Matrix t0{{p, 1.0 - p}, {0.0, p}};
  Matrix t1{{0.0, 0.0}, {1.0 - p, 0.0}};
  return Machine::build(kBinary, labels, {t0, t1});
}

Machine even_process_epsilon() {
  Matrix t0{{0.5, 0.0}, {0.0, 0.0}};
  Matrix t1{{0.0, 0.5}, {1.0, 0.0}};
  return Machine::build(kBinary, plain_labels(2), {t0, t1});
}

double sns_phi(double p, std::size_t n) {
  if (n == 0) return 0.0;
  return double(n) * std::pow(p, double(n - 1)) * (1.0 - p) * (1.0 - p);
}

double sns_Phi(double p, std::size_t n) {
  if (n == 0) return 1.0;
  return std::pow(p, double(n - 1)) * (double(n) * (1.0 - p) + p);
}

std::size_t sns_default_truncation(double p, double eps) {
  require_open_unit(p, "sns_default_truncation");
  std::size_t N = 2;
  while (sns_Phi(p, N + 1) >= eps) ++N;
  return N;
}

Machine sns_epsilon_truncated(double p, std::size_t N, double tail_tol) {
  require_open_unit(p, "sns_epsilon_truncated");
  if (N < 2) throw Error(Errc::InvalidInput, "sns_epsilon_truncated: N must be >= 2");
  double tail = sns_Phi(p, N + 1);
  if (tail > tail_tol)
    throw Error(Errc::TruncationTooCoarse, "Phi(N+1) = " + sci(tail) + " exceeds " + sci(tail_tol));
  const std::size_t n = N + 1;
  Matrix t0(n, n), t1(n, n);
  for (std::size_t s = 0; s < N; ++s) {
    double surv = sns_Phi(p, s);
    t0(s, s + 1) = sns_Phi(p, s + 1) / surv;
    t1(s, 0) = sns_phi(p, s) / surv;
  }
  double last = sns_Phi(p, N);
  t0(N, N) = sns_Phi(p, N + 1) / last;
  t1(N, 0) = sns_phi(p, N) / last;
  return Machine::build(kBinary, plain_labels(n), {t0, t1});
}

SnsRenewalData sns_renewal_data(double p, std::size_t N) {
  require_open_unit(p, "sns_renewal_data");
  SnsRenewalData d;
  d.p = p;
  d.N = N;
  d.phi.resize(N + 1);
  d.Phi.resize(N + 2);
  double total = 0.0;
  for (std::size_t n = 0; n <= N; ++n) {
    d.phi[n] = sns_phi(p, n);
    d.Phi[n] = sns_Phi(p, n);
    total += d.Phi[n];
  }
  d.Phi[N + 1] = sns_Phi(p, N + 1);
  d.mu = 1.0 / total;
  d.tail_mass = d.Phi[N + 1];
  return d;
}

}  // namespace nmach
