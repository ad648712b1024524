#include <cmath>
#include <random>

#include "catch_amalgamated.hpp"
#include "nmach/error.hpp"
#include "nmach/linalg.hpp"
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

}  // namespace

TEST_CASE("matrix arithmetic") {
  Matrix a{{1, 2}, {3, 4}};
  Matrix b{{0, 1}, {1, 0}};
  CHECK(a * b == Matrix{{2, 1}, {4, 3}});
  CHECK(a + b == Matrix{{1, 3}, {4, 4}});
  CHECK(a - a == Matrix(2, 2));
  CHECK(transpose(a) == Matrix{{1, 3}, {2, 4}});
  CHECK(trace(a) == 5.0);
  CHECK(frobenius_sq(a) == 30.0);
  CHECK(vec_mat({1, 1}, a) == Vector{4, 6});
  CHECK(mat_vec(a, {1, 1}) == Vector{3, 7});
  CHECK(row_sums(a) == Vector{3, 7});
  CHECK(2.0 * Matrix::identity(2) == Matrix{{2, 0}, {0, 2}});
}

TEST_CASE("two-state fixed vector matches b/(a+b), a/(a+b)") {
  for (double a : {0.1, 0.37, 0.9})
    for (double b : {0.05, 0.5, 0.99}) {
      Matrix t{{1 - a, a}, {b, 1 - b}};
      Vector pi = left_fixed_vector(t);
      CHECK_THAT(pi[0], WithinAbs(b / (a + b), 1e-14));
      CHECK_THAT(pi[1], WithinAbs(a / (a + b), 1e-14));
    }
}

TEST_CASE("fixed vector agrees with power iteration on random chains") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 2 + trial % 6;
    Matrix t(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0;
      for (std::size_t j = 0; j < n; ++j) s += (t(i, j) = testing::uniform(rng, 0.0, 1.0));
      for (std::size_t j = 0; j < n; ++j) t(i, j) /= s;
    }
    Vector pi = left_fixed_vector(t);
    CHECK(max_abs_diff(pi, testing::power_stationary(t, 4000)) < 1e-10);
    CHECK(max_abs_diff(vec_mat(pi, t), pi) < 1e-12);
  }
}

TEST_CASE("fixed vector of a quasi-stochastic matrix") {
  // rows sum to one; one negative entry
  Matrix t{{1.2, -0.2}, {0.5, 0.5}};
  Vector pi = left_fixed_vector(t);
  CHECK_THAT(pi[0] + pi[1], WithinAbs(1.0, 1e-14));
  CHECK(max_abs_diff(vec_mat(pi, t), pi) < 1e-14);
  // 0.2 pi0 + 0.5 pi1 = 0 with pi0 + pi1 = 1
  CHECK_THAT(pi[0], WithinAbs(5.0 / 3.0, 1e-14));
  CHECK_THAT(pi[1], WithinAbs(-2.0 / 3.0, 1e-14));
}

TEST_CASE("degenerate and missing fixed spaces") {
  CHECK(code_of([] { left_fixed_vector(Matrix::identity(2)); }) == Errc::DegenerateFixedSpace);
  CHECK(code_of([] { left_fixed_vector(Matrix{{0.5, 0.2}, {0.1, 0.3}}); }) == Errc::NoUnitEigenvalue);
  CHECK(code_of([] { left_fixed_vector(Matrix(2, 3)); }) == Errc::DimensionMismatch);
}

TEST_CASE("linear solve and inverse") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 1 + trial % 5;
    Matrix a(n, n);
    for (auto& x : a.data) x = testing::uniform(rng, -1, 1);
    for (std::size_t i = 0; i < n; ++i) a(i, i) += 3.0;
    Vector x = testing::random_vector(rng, n);
    Vector b = mat_vec(a, x);
    CHECK(max_abs_diff(solve_linear(a, b), x) < 1e-12);
    CHECK(max_abs_diff(a * inverse(a), Matrix::identity(n)) < 1e-12);
  }
  CHECK(code_of([] { inverse(Matrix{{1, 2}, {2, 4}}); }) == Errc::SingularMatrix);
}

TEST_CASE("symmetric eigen decomposition") {
  SymmetricEigen e = symmetric_eigen(Matrix{{2, 1}, {1, 2}});
  CHECK_THAT(e.values[0], WithinAbs(3.0, 1e-14));
  CHECK_THAT(e.values[1], WithinAbs(1.0, 1e-14));
  CHECK(code_of([] { symmetric_eigen(Matrix{{1, 2}, {0, 1}}); }) == Errc::NotSymmetric);

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    std::size_t n = 2 + trial % 5;
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) a(i, j) = a(j, i) = testing::uniform(rng, -1, 1);
    SymmetricEigen d = symmetric_eigen(a);
    Matrix lam(n, n);
    for (std::size_t i = 0; i < n; ++i) lam(i, i) = d.values[i];
    CHECK(max_abs_diff(d.vectors * lam * transpose(d.vectors), a) < 1e-12);
    for (std::size_t i = 1; i < n; ++i) CHECK(d.values[i - 1] >= d.values[i]);
    CHECK_THAT(sum(d.values), WithinAbs(trace(a), 1e-12));
  }
}

TEST_CASE("non-finite entries are detected") {
  Matrix a{{1, NAN}, {0, 1}};
  CHECK_FALSE(a.finite());
  CHECK_FALSE(all_finite({1.0, INFINITY}));
}
