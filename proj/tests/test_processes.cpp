#include <cmath>

#include "catch_amalgamated.hpp"
#include "nmach/error.hpp"
#include "nmach/measures.hpp"
#include "nmach/processes.hpp"
#include "support.hpp"

using namespace nmach;
using Catch::Matchers::WithinAbs;

namespace {

const double kGrid[] = {0.1, 0.2, 0.3, 0.4, 0.6, 0.7, 0.8, 0.9};

double max_word_gap(const Machine& a, const Machine& b, std::size_t L) {
  double gap = 0.0;
  for (std::size_t l = 1; l <= L; ++l)
    for (const auto& w : testing::all_words(2, l))
      gap = std::max(gap, std::fabs(word_probability(a, w) - word_probability(b, w)));
  return gap;
}

}  // namespace

TEST_CASE("perturbed coin") {
  Machine m = perturbed_coin_epsilon(0.3);
  CHECK_THAT(m.stationary()[0], WithinAbs(0.5, 1e-15));
  CHECK(testing::h2(m.stationary()) == 1.0);
  try {
    perturbed_coin_epsilon(0.5);
    FAIL("expected DegenerateParameter");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DegenerateParameter);
  }
  CHECK_THROWS_AS(perturbed_coin_rjmc(0.5), Error);
  CHECK_THROWS_AS(perturbed_coin_epsilon(1.2), Error);
}

TEST_CASE("perturbed coin RJMC stationary") {
  Vector hi = perturbed_coin_rjmc(0.75).stationary();
  CHECK_THAT(hi[0], WithinAbs(2.0 / 3, 1e-14));
  CHECK_THAT(hi[1], WithinAbs(1.0 / 3, 1e-14));
  Vector lo = perturbed_coin_rjmc(0.25).stationary();
  CHECK_THAT(lo[0], WithinAbs(1.0 / 3, 1e-14));
  CHECK_THAT(lo[1], WithinAbs(2.0 / 3, 1e-14));
  for (double p : kGrid) {
    INFO("p=" << p);
    CHECK(max_word_gap(perturbed_coin_epsilon(p), perturbed_coin_rjmc(p), 8) < 1e-9);
  }
}

TEST_CASE("golden mean") {
  Machine m = golden_mean_epsilon(0.5);
  CHECK_THAT(m.stationary()[0], WithinAbs(2.0 / 3, 1e-15));
  CHECK_THAT(m.stationary()[1], WithinAbs(1.0 / 3, 1e-15));
  CHECK_THAT(statistical_complexity(m).value, WithinAbs(-std::log2(5.0 / 9.0), 1e-14));
  for (double p : kGrid) {
    Machine g = golden_mean_epsilon(p);
    CHECK(word_probability(g, "11") == 0.0);
    double closed = -std::log2((2 - 2 * p + p * p) / ((p - 2) * (p - 2)));
    CHECK_THAT(statistical_complexity(g).value, WithinAbs(closed, 1e-13));
  }
}

TEST_CASE("SNS g-machine") {
  Machine g = sns_g_machine(0.5);
  CHECK_THAT(word_probability(g, "0"), WithinAbs(0.75, 1e-15));
  CHECK_THAT(word_probability(g, "1"), WithinAbs(0.25, 1e-15));
  for (double p : kGrid) {
    Vector pi = sns_g_machine(p).stationary();
    CHECK_THAT(pi[0], WithinAbs(0.5, 1e-14));
    CHECK_THAT(pi[1], WithinAbs(0.5, 1e-14));
  }
}

TEST_CASE("SNS renewal functions") {
  CHECK(sns_phi(0.5, 0) == 0.0);
  CHECK(sns_Phi(0.5, 0) == 1.0);
  CHECK_THAT(sns_Phi(0.5, 1), WithinAbs(1.0, 1e-15));
  CHECK_THAT(sns_Phi(0.5, 2), WithinAbs(0.75, 1e-15));
  CHECK_THAT(sns_phi(1e-9, 1), WithinAbs(1.0, 1e-8));
  for (double p : {0.05, 0.3, 0.5, 0.77, 0.95}) {
    // Phi as a direct tail sum of phi
    for (std::size_t n = 1; n < 30; ++n) {
      double tail = 0.0;
      for (std::size_t k = n; k < 4000; ++k) tail += sns_phi(p, k);
      CHECK_THAT(sns_Phi(p, n), WithinAbs(tail, 1e-13));
      CHECK(sns_Phi(p, n + 1) <= sns_Phi(p, n));
    }
    std::size_t N = sns_default_truncation(p);
    CHECK(sns_Phi(p, N + 1) < 1e-12);
    SnsRenewalData d = sns_renewal_data(p, N);
    double s = 0.0;
    for (double x : d.phi) s += x;
    CHECK_THAT(s + d.tail_mass, WithinAbs(1.0, 1e-12));
    CHECK_THAT(d.mu, WithinAbs((1 - p) / 2, 1e-10));
  }
  SnsRenewalData h = sns_renewal_data(0.5, 40);
  double s = 0.0;
  for (std::size_t n = 1; n <= 40; ++n) s += h.phi[n];
  CHECK(s >= 1 - 1e-9);
  CHECK_THAT(sns_renewal_data(0.5, sns_default_truncation(0.5)).mu, WithinAbs(0.25, 1e-12));
}

TEST_CASE("SNS truncated epsilon-machine") {
  Machine e = sns_epsilon_truncated(0.5, 40, 1e-9);
  CHECK(max_word_gap(e, sns_g_machine(0.5), 6) < 1e-6);
  CHECK_THROWS_AS(sns_epsilon_truncated(0.5, 10), Error);
  for (double p : {0.2, 0.5, 0.8}) {
    std::size_t N = sns_default_truncation(p);
    Machine t = sns_epsilon_truncated(p, N);
    CHECK(validate(t).empty());
    CHECK(max_word_gap(t, sns_g_machine(p), 6) <= 10 * sns_Phi(p, N + 1) + 1e-15);
    // a coarser truncation obeys the same bound
    std::size_t n2 = 12;
    Machine c = sns_epsilon_truncated(p, n2, 1.0);
    CHECK(max_word_gap(c, sns_g_machine(p), 6) <= 10 * sns_Phi(p, n2 + 1));
    CHECK(classify(t).unifilar);
  }
}

TEST_CASE("even process") {
  Machine m = even_process_epsilon();
  CHECK_THAT(m.stationary()[0], WithinAbs(2.0 / 3, 1e-15));
  CHECK_THAT(word_probability(m, "1"), WithinAbs(testing::brute_word_probability(m, {1}), 1e-15));
  CHECK_THAT(word_probability(m, "1"), WithinAbs(2.0 / 3, 1e-15));
  CHECK(word_probability(m, "0110") > 0.0);
  CHECK(word_probability(m, "0110") == Catch::Approx(testing::brute_word_probability(m, {0, 1, 1, 0})));
  // blocks of an odd number of 1s bounded by 0s never occur
  CHECK(word_probability(m, "010") == 0.0);
  CHECK(word_probability(m, "01110") == 0.0);
}

TEST_CASE("every factory validates") {
  for (double p : kGrid) {
    CHECK(validate(perturbed_coin_epsilon(p)).empty());
    CHECK(validate(perturbed_coin_rjmc(p)).empty());
    CHECK(validate(golden_mean_epsilon(p)).empty());
    CHECK(validate(sns_g_machine(p)).empty());
    CHECK(validate(iid_coin(p)).empty());
  }
  CHECK(validate(even_process_epsilon()).empty());
}
