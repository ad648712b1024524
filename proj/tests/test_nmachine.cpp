#include <cmath>
#include <random>

#include "catch_amalgamated.hpp"
#include "nmach/error.hpp"
#include "nmach/measures.hpp"
#include "nmach/nmachine.hpp"
#include "nmach/processes.hpp"
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

const double kGrid[] = {0.1, 0.2, 0.3, 0.4, 0.6, 0.7, 0.8, 0.9};

double pc_half(double p) { return 1.0 - 2.0 * std::log2(std::sqrt(p) + std::sqrt(1.0 - p)); }

}  // namespace

TEST_CASE("perturbed coin split stationary vector") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 50; ++t) {
    double p = testing::uniform(rng, 0.05, 0.95);
    double q1 = testing::uniform(rng, -0.5, 0.5), q2 = testing::uniform(rng, -1.0, 1.0);
    if (std::fabs(p - 2 * q1) < 0.05) continue;
    Machine m = build_split_machine(perturbed_coin_epsilon(p), perturbed_coin_split(p), {q1, q2});
    double d = 2 * (p - 2 * q1);
    Vector expected{(q2 - q1) / d, (p - q2 - q1) / d, 0.5};
    CHECK(max_abs_diff(m.stationary(), expected) < 1e-10);
  }
  // p - 2 q1 = 0 leaves the fixed space degenerate
  CHECK(code_of([] { build_split_machine(perturbed_coin_epsilon(0.3), perturbed_coin_split(0.3), {0.15, 0.1}); }) ==
        Errc::DegenerateFixedSpace);
}

TEST_CASE("SNS split stationary vector") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 50; ++t) {
    double p = testing::uniform(rng, 0.05, 0.95);
    double g = testing::uniform(rng, -0.5, 0.5), eta = testing::uniform(rng, -1.0, 1.0);
    double d = 2 * g + p - 1;
    if (std::fabs(d) < 0.05) continue;
    Machine m = build_split_machine(sns_g_machine(p), sns_split(p), {g, eta});
    Vector expected{0.5 * (g - eta) / d, 0.5 * (p + g + eta - 1) / d, 0.5};
    CHECK(max_abs_diff(m.stationary(), expected) < 1e-10);
  }
}

TEST_CASE("trivial split reproduces the source") {
  for (Machine src : {perturbed_coin_epsilon(0.3), golden_mean_epsilon(0.6), even_process_epsilon()}) {
    SplitSpec s = trivial_split(src);
    Machine m = build_split_machine(src, s, {});
    CHECK(m.matrices() == src.matrices());
    CHECK(max_abs_diff(m.stationary(), src.stationary()) < 1e-14);
    CHECK(verify_nmachine_properties(src, m, s).ok());
  }
}

TEST_CASE("spec mismatches") {
  SplitSpec s = perturbed_coin_split(0.3);
  CHECK(code_of([&] { build_split_machine(perturbed_coin_epsilon(0.3), s, {0.1}); }) == Errc::SpecMismatch);
  s.copies = {2, 1, 1};
  CHECK(code_of([&] { build_split_machine(perturbed_coin_epsilon(0.3), s, {0.0, 0.1}); }) == Errc::SpecMismatch);
}

TEST_CASE("perturbed coin ideal parameters saturate the bound") {
  for (double p : kGrid)
    for (Branch b : {Branch::Plus, Branch::Minus}) {
      INFO("p=" << p << " branch=" << int(b));
      auto [q1, q2] = perturbed_coin_ideal_params(p, b);
      CHECK(q1 == 0.0);
      Machine src = perturbed_coin_epsilon(p);
      NMachineResult r = evaluate_nmachine(src, perturbed_coin_split(p), {q1, q2}, pc_half(p), 1.0);
      CHECK_THAT(r.c_n2, WithinAbs(pc_half(p), 1e-8));
      CHECK(r.saturated);
      CHECK_FALSE(r.violates_bound);
      CHECK(r.negativity > 1.0);
      CHECK_THAT(r.advantage, WithinAbs(1.0 - pc_half(p), 1e-8));
      CHECK(verify_nmachine_properties(src, r.machine, perturbed_coin_split(p)).ok());
    }
  CHECK(code_of([] { perturbed_coin_ideal_params(0.5, Branch::Plus); }) == Errc::DegenerateParameter);
}

TEST_CASE("SNS ideal parameters") {
  NMachineResult plus, minus;
  for (Branch b : {Branch::Plus, Branch::Minus}) {
    auto [g, eta] = sns_ideal_params(0.5, 60, b);
    CHECK(g == 0.0);
    ClosedFormValue e = excess_entropy_half_closed_form({ClosedFormProcess::SNS, 0.5, 60});
    NMachineResult r = evaluate_nmachine(sns_g_machine(0.5), sns_split(0.5), {g, eta}, e.value, 2.0, 1e-6, e.residual);
    CHECK_THAT(r.c_n2, WithinAbs(e.value, 1e-6));
    CHECK_THAT(r.machine.stationary()[0] + r.machine.stationary()[1], WithinAbs(0.5, 1e-12));
    (b == Branch::Plus ? plus : minus) = r;
  }
  CHECK_THAT(plus.c_n2, WithinAbs(minus.c_n2, 1e-12));
  CHECK(code_of([] { sns_ideal_params(0.5, 10, Branch::Plus); }) == Errc::TruncationTooCoarse);
}

TEST_CASE("Appendix-B properties hold for built n-machines") {
  for (double p : kGrid) {
    auto [q1, q2] = perturbed_coin_ideal_params(p, Branch::Minus);
    Machine src = perturbed_coin_epsilon(p);
    Machine n = build_split_machine(src, perturbed_coin_split(p), {q1, q2});
    NMachineProperties r = check_nmachine_properties(src, n, perturbed_coin_split(p), 6, 8, 1e-9);
    CHECK(r.ok());
    CHECK(r.process < 1e-9);

    std::size_t N = sns_default_truncation(p);
    auto [g, eta] = sns_ideal_params(p, N, Branch::Plus);
    Machine gsrc = sns_g_machine(p);
    Machine sn = build_split_machine(gsrc, sns_split(p), {g, eta});
    CHECK(check_nmachine_properties(gsrc, sn, sns_split(p)).ok());
  }
  std::mt19937_64 rng(99);
  for (int t = 0; t < 20; ++t) {
    double p = testing::uniform(rng, 0.1, 0.9);
    double q = testing::uniform(rng, -1.0, 1.0);
    Machine src = golden_mean_epsilon(p);
    Machine n = build_split_machine(src, golden_mean_bad_split(p), {q});
    CHECK(check_nmachine_properties(src, n, golden_mean_bad_split(p)).ok());
  }
}

TEST_CASE("property checks catch a broken split") {
  Machine src = perturbed_coin_epsilon(0.3);
  SplitSpec s = perturbed_coin_split(0.3);
  Machine n = build_split_machine(src, s, {0.0, 0.1});
  auto ms = n.matrices();
  ms[0](2, 0) += 0.05;  // row of sigma_1 no longer sums to the source entry
  ms[0](2, 1) -= 0.0;
  Machine broken = Machine::unchecked(n.alphabet(), n.states(), ms, n.stationary());
  CHECK_FALSE(check_nmachine_properties(src, broken, s).ok());
  CHECK(code_of([&] { verify_nmachine_properties(src, broken, s); }) == Errc::PropertyViolated);
}

TEST_CASE("golden mean split cannot help") {
  Machine src = golden_mean_epsilon(0.5);
  NMachineResult a = golden_mean_bad_nmachine(0.5, -0.2);
  NMachineResult b = golden_mean_bad_nmachine(0.5, 0.2);
  CHECK(max_abs_diff(a.machine.stationary(), b.machine.stationary()) < 1e-12);
  CHECK(a.c_n2 > collision_entropy(src.stationary()));
  CHECK_FALSE(a.saturated);
  CHECK(process_distance(a.machine, src, 8) < 1e-9);
  CHECK(process_distance(b.machine, src, 8) < 1e-9);
}

TEST_CASE("unsaturation guard") {
  for (double p : kGrid) {
    auto [q1, q2] = perturbed_coin_ideal_params(p, Branch::Plus);
    double out = q2 + 0.1;
    NMachineResult r = evaluate_nmachine(perturbed_coin_epsilon(p), perturbed_coin_split(p), {q1, out}, pc_half(p), 1.0);
    CHECK(r.c_n2 < pc_half(p));
    CHECK(r.violates_bound);
    CHECK_FALSE(r.saturated);
  }
}

TEST_CASE("optimizer") {
  Machine src = perturbed_coin_epsilon(0.3);
  OptimizeOptions o;
  o.seed = 7;
  NMachineResult r = optimize_ideal(src, perturbed_coin_split(0.3), pc_half(0.3), o);
  CHECK_THAT(r.c_n2, WithinAbs(pc_half(0.3), 1e-6));
  CHECK(r.saturated);
  NMachineResult again = optimize_ideal(src, perturbed_coin_split(0.3), pc_half(0.3), o);
  CHECK(again.params == r.params);

  NMachineResult triv = optimize_ideal(src, trivial_split(src), pc_half(0.3));
  CHECK_THAT(triv.c_n2, WithinAbs(1.0, 1e-14));
  CHECK_FALSE(triv.saturated);

  Machine gm = golden_mean_epsilon(0.5);
  double e = excess_entropy_half(gm, 12).value;
  NMachineResult bad = optimize_ideal(gm, golden_mean_bad_split(0.5), e);
  CHECK_FALSE(bad.saturated);
  CHECK_THAT(bad.c_n2, WithinAbs(golden_mean_bad_nmachine(0.5, 0.0).c_n2, 1e-12));

  SplitSpec many = perturbed_coin_split(0.3);
  many.param_names.assign(9, "q");
  o.max_params = 8;
  CHECK(code_of([&] { optimize_ideal(src, many, 0.1, o); }) == Errc::InvalidInput);
}
