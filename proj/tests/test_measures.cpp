#include <cmath>
#include <random>

#include "catch_amalgamated.hpp"
#include "nmach/error.hpp"
#include "nmach/measures.hpp"
#include "nmach/nmachine.hpp"
#include "nmach/processes.hpp"
#include "nmach/quantum.hpp"
#include "support.hpp"

using namespace nmach;
using Catch::Matchers::WithinAbs;

namespace {

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected nmach::Error");
  return Errc::InvalidInput;
}

double pc_half_closed(double p) { return 1.0 - 2.0 * std::log2(std::sqrt(p) + std::sqrt(1.0 - p)); }

Vector random_distribution(std::mt19937_64& rng, std::size_t n) {
  Vector v = testing::random_vector(rng, n, 0.01, 1.0);
  double s = sum(v);
  for (auto& x : v) x /= s;
  return v;
}

Matrix random_channel(std::mt19937_64& rng, std::size_t nx, std::size_t ny) {
  Matrix m(nx, ny);
  for (std::size_t i = 0; i < nx; ++i) {
    Vector r = random_distribution(rng, ny);
    for (std::size_t j = 0; j < ny; ++j) m(i, j) = r[j];
  }
  return m;
}

double direct_shannon_mi(const Vector& px, const Matrix& pyx) {
  Vector py(pyx.cols, 0.0);
  for (std::size_t i = 0; i < px.size(); ++i)
    for (std::size_t j = 0; j < pyx.cols; ++j) py[j] += px[i] * pyx(i, j);
  double mi = 0.0;
  for (std::size_t i = 0; i < px.size(); ++i)
    for (std::size_t j = 0; j < pyx.cols; ++j) {
      double pj = px[i] * pyx(i, j);
      if (pj > 0) mi += pj * std::log2(pyx(i, j) / py[j]);
    }
  return mi;
}

}  // namespace

TEST_CASE("Renyi entropies") {
  CHECK(renyi_entropy({0.5, 0.5}, 2.0) == 1.0);
  CHECK_THAT(renyi_entropy({1.5, -0.5}, 2.0), WithinAbs(-std::log2(2.5), 1e-15));
  CHECK_THAT(renyi_entropy({2.0 / 3, 1.0 / 3}, 2.0), WithinAbs(-std::log2(5.0 / 9), 1e-15));
  CHECK_THAT(renyi_entropy({0.25, 0.25, 0.5}, 1.0), WithinAbs(1.5, 1e-15));
  CHECK_THAT(renyi_entropy({0.25, 0.0, 0.75}, 0.0), WithinAbs(1.0, 1e-15));
  CHECK_THAT(renyi_entropy({0.2, 0.8}, 0.5), WithinAbs(2 * std::log2(std::sqrt(0.2) + std::sqrt(0.8)), 1e-14));
  CHECK(code_of([] { renyi_entropy({1.5, -0.5}, 1.0); }) == Errc::NegativeEntriesUnsupportedOrder);
  CHECK(code_of([] { renyi_entropy({0.5, 0.5}, -1.0); }) == Errc::InvalidAlpha);
  CHECK(code_of([] { renyi_entropy({0.5, 0.6}, 2.0); }) == Errc::InvalidInput);
}

TEST_CASE("property: Renyi entropy is nonincreasing in alpha") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 200; ++t) {
    Vector q = random_distribution(rng, 2 + t % 7);
    double prev = INFINITY;
    for (double a : {0.0, 0.5, 1.0, 2.0, 3.5}) {
      double h = renyi_entropy(q, a);
      CHECK(h <= prev + 1e-12);
      prev = h;
    }
    // the alpha = 1 limit is approached from both sides
    CHECK_THAT(renyi_entropy(q, 1.0 + 1e-7), WithinAbs(renyi_entropy(q, 1.0), 1e-6));
  }
}

TEST_CASE("Sibson mutual information") {
  Vector px{0.5, 0.5};
  Matrix indep{{0.3, 0.7}, {0.3, 0.7}};
  Matrix ident{{1, 0}, {0, 1}};
  for (double a : {0.0, 0.5, 1.0, 2.0}) {
    CHECK_THAT(alpha_mutual_information(px, indep, a), WithinAbs(0.0, 1e-14));
    CHECK_THAT(alpha_mutual_information(px, ident, a), WithinAbs(1.0, 1e-14));
  }
  CHECK(code_of([] { alpha_mutual_information({0.5, 0.5}, Matrix{{1, 0}, {0, 1}}, -0.5); }) == Errc::InvalidAlpha);
}

TEST_CASE("property: Sibson MI at alpha = 1 is Shannon MI, and H2[X] >= I_1/2") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 200; ++t) {
    std::size_t nx = 2 + t % 4, ny = 2 + (t / 4) % 4;
    Vector px = random_distribution(rng, nx);
    Matrix pyx = random_channel(rng, nx, ny);
    CHECK_THAT(alpha_mutual_information(px, pyx, 1.0), WithinAbs(direct_shannon_mi(px, pyx), 1e-9));
    Matrix joint(nx, ny);
    for (std::size_t i = 0; i < nx; ++i)
      for (std::size_t j = 0; j < ny; ++j) joint(i, j) = px[i] * pyx(i, j);
    CHECK_THAT(shannon_mutual_information(joint), WithinAbs(direct_shannon_mi(px, pyx), 1e-12));
    CHECK(renyi_entropy(px, 2.0) >= alpha_mutual_information(px, pyx, 0.5) - 1e-12);
    // the alpha -> 0 limit
    CHECK_THAT(alpha_mutual_information(px, pyx, 1e-6), WithinAbs(alpha_mutual_information(px, pyx, 0.0), 1e-4));
  }
}

TEST_CASE("half excess entropy: horizon estimate") {
  CHECK(excess_entropy_half(iid_coin(0.3), 12).value == Catch::Approx(0.0).margin(1e-15));
  for (double p : {0.2, 0.3, 0.4, 0.6, 0.7, 0.8}) {
    INFO("p=" << p);
    MeasureReport r = excess_entropy_half(perturbed_coin_epsilon(p), 12);
    CHECK_THAT(r.value, WithinAbs(pc_half_closed(p), 1e-3));
    CHECK(r.residual >= 0.0);
  }
  // frozen from the closed form
  CHECK_THAT(pc_half_closed(0.3), WithinAbs(0.0615146056, 1e-9));
}

TEST_CASE("half excess entropy: both routes agree") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 10; ++t) {
    Machine m = testing::random_unifilar_machine(rng, 2 + t % 4, 2);
    double a = excess_entropy_half(m, 8, EntropyRoute::Enumerate).value;
    double b = excess_entropy_half(m, 8, EntropyRoute::UnifilarRecursion).value;
    CHECK_THAT(a, WithinAbs(b, 1e-12));
  }
  Machine g = golden_mean_epsilon(0.4);
  CHECK_THAT(excess_entropy_half(g, 10, EntropyRoute::Enumerate).value,
             WithinAbs(excess_entropy_half(g, 10, EntropyRoute::UnifilarRecursion).value, 1e-12));
}

TEST_CASE("half excess entropy equals I_1/2 of the state-future channel") {
  Machine m = golden_mean_epsilon(0.3);
  const std::size_t L = 6;
  auto words = testing::all_words(2, L);
  Matrix channel(m.num_states(), words.size());
  for (std::size_t s = 0; s < m.num_states(); ++s) {
    Vector e(m.num_states(), 0.0);
    e[s] = 1.0;
    Machine ms = m.with_stationary(e);
    for (std::size_t w = 0; w < words.size(); ++w) channel(s, w) = testing::brute_word_probability(ms, words[w]);
  }
  CHECK_THAT(excess_entropy_half(m, L).value,
             WithinAbs(alpha_mutual_information(m.stationary(), channel, 0.5), 1e-12));
}

TEST_CASE("half excess entropy closed forms") {
  CHECK_THAT(excess_entropy_half_closed_form({ClosedFormProcess::PerturbedCoin, 0.5, 0}).value, WithinAbs(0.0, 1e-15));
  CHECK_THAT(excess_entropy_half_closed_form({ClosedFormProcess::PerturbedCoin, 0.25, 0}).value,
             WithinAbs(1.0 - 2.0 * std::log2(0.5 + std::sqrt(0.75)), 1e-15));
  CHECK(code_of([] { excess_entropy_half_closed_form({ClosedFormProcess::Other, 0.3, 0}); }) == Errc::UnsupportedProcess);

  // SNS: -log M against the causal-state horizon estimate
  std::size_t N = sns_default_truncation(0.5);
  ClosedFormValue sns = excess_entropy_half_closed_form({ClosedFormProcess::SNS, 0.5, N});
  // 40-digit evaluation of the double sum
  CHECK_THAT(sns.value, WithinAbs(0.11516206441024768, 1e-10));
  CHECK(sns.residual < 1e-9);
  CHECK_THAT(excess_entropy_half(sns_epsilon_truncated(0.5, N), 12).value, WithinAbs(sns.value, 1e-3));
}

TEST_CASE("SNS M as an explicit double sum") {
  for (double p : {0.2, 0.5, 0.8}) {
    std::size_t N = sns_default_truncation(p);
    double mu = (1 - p) / 2, M = 0.0;
    for (std::size_t m = 0; m <= 3 * N; ++m) {
      double inner = 0.0;
      for (std::size_t n = 0; n <= 3 * N; ++n) inner += mu * std::sqrt(sns_phi(p, m + n) * sns_Phi(p, n));
      M += inner * inner;
    }
    ClosedFormValue lib = sns_M(p, N);
    CHECK_THAT(lib.value, WithinAbs(M, lib.residual + 1e-12));
  }
}

TEST_CASE("Shannon excess entropy") {
  CHECK(excess_entropy_shannon(iid_coin(0.3), 8).value == Catch::Approx(0.0).margin(1e-14));
  double e = excess_entropy_shannon(perturbed_coin_epsilon(0.3), 12).value;
  CHECK(e > 0.0);
  CHECK(e <= 1.0);

  // brute-force joint of (state, length-10 word)
  Machine g = golden_mean_epsilon(0.5);
  auto words = testing::all_words(2, 10);
  Matrix joint(2, words.size());
  for (std::size_t s = 0; s < 2; ++s) {
    Vector e1(2, 0.0);
    e1[s] = 1.0;
    Machine gs = g.with_stationary(e1);
    for (std::size_t w = 0; w < words.size(); ++w)
      joint(s, w) = g.stationary()[s] * testing::brute_word_probability(gs, words[w]);
  }
  CHECK_THAT(excess_entropy_shannon(g, 10).value, WithinAbs(shannon_mutual_information(joint), 1e-9));
}

TEST_CASE("quasi machines are rejected where the measures need probabilities") {
  Machine n = build_split_machine(perturbed_coin_epsilon(0.3), perturbed_coin_split(0.3),
                                  {0.0, perturbed_coin_ideal_params(0.3, Branch::Plus).second});
  CHECK(code_of([&] { excess_entropy_half(n, 6); }) == Errc::QuasiMachineUnsupported);
  CHECK(code_of([&] { excess_entropy_shannon(n, 6); }) == Errc::QuasiMachineUnsupported);
  MeasureReport c = statistical_complexity(n);
  CHECK(c.name == MeasureName::Cn2);
  CHECK(negativity(n.stationary()) > 1.0);
}

TEST_CASE("negativity, mana, advantage") {
  CHECK(negativity({0.5, 0.5}) == 1.0);
  CHECK(negativity({1.5, -0.5}) == 2.0);
  CHECK(mana({0.2, 0.8}) == 0.0);
  CHECK_THAT(mana({1.5, -0.5}), WithinAbs(2.0, 1e-15));
  CHECK(memory_advantage(0.7, 0.7) == 0.0);
  CHECK_THAT(memory_advantage(0.0572, 1.0), WithinAbs(0.9428, 1e-12));
  CHECK(code_of([] { memory_advantage(0.3, 0.0); }) == Errc::ZeroBaseline);

  std::mt19937_64 rng(17);
  for (int t = 0; t < 300; ++t) {
    Vector q = testing::random_vector(rng, 2 + t % 6, -1.0, 1.0);
    double s = sum(q);
    if (std::fabs(s) < 0.1) continue;
    for (auto& x : q) x /= s;
    double l1 = negativity(q);
    Vector a(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) a[i] = std::fabs(q[i]) / l1;
    CHECK_THAT(collision_entropy(a) - collision_entropy(q), WithinAbs(mana(q), 1e-10));
  }
}

TEST_CASE("inequality chain on the perturbed coin and SNS grids") {
  for (int i = 1; i < 20; ++i) {
    double p = 0.05 * i;
    if (i == 10) continue;
    INFO("p=" << p);
    Machine pc = perturbed_coin_epsilon(p);
    double cmu = collision_entropy(pc.stationary());
    double cq = quantum_complexity(gram_from_machine(pc, 12), QuantumOrder::Renyi2);
    double e = pc_half_closed(p);
    CHECK(cmu >= cq);
    CHECK(cq >= e - 1e-6);

    std::size_t N = sns_default_truncation(p);
    double smu = collision_entropy(sns_epsilon_truncated(p, N).stationary());
    double sq = quantum_complexity(sns_quantum_gram(p, N), QuantumOrder::Renyi2);
    double se = excess_entropy_half_closed_form({ClosedFormProcess::SNS, p, N}).value;
    CHECK(smu >= sq);
    CHECK(sq >= se - 1e-6);
  }
}

TEST_CASE("even process: all three measures coincide") {
  Machine m = even_process_epsilon();
  double cmu = collision_entropy(m.stationary());
  double cq = quantum_complexity(gram_from_machine(m, 64), QuantumOrder::Renyi2);
  double e = excess_entropy_half(m, 64).value;
  CHECK_THAT(cmu, WithinAbs(cq, 1e-6));
  CHECK_THAT(cq, WithinAbs(e, 1e-6));
}
