#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "nmach/linalg.hpp"
#include "nmach/machine.hpp"

namespace testing {

using nmach::Machine;
using nmach::Matrix;
using nmach::Vector;

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Vector random_vector(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
  Vector v(n);
  for (auto& x : v) x = uniform(rng, lo, hi);
  return v;
}

// Dense, strictly positive labeled transitions: irreducible and aperiodic.
inline Machine random_machine(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  std::vector<Matrix> ms(k, Matrix(n, n));
  for (std::size_t j = 0; j < n; ++j) {
    double total = 0.0;
    for (auto& m : ms)
      for (std::size_t i = 0; i < n; ++i) total += (m(j, i) = uniform(rng, 0.05, 1.0));
    for (auto& m : ms)
      for (std::size_t i = 0; i < n; ++i) m(j, i) /= total;
  }
  std::vector<std::string> alphabet;
  for (std::size_t x = 0; x < k; ++x) alphabet.push_back(std::string(1, char('a' + x)));
  return Machine::build(alphabet, nmach::plain_labels(n), ms);
}

// Each (state, symbol) has one successor; successors chosen so the machine stays irreducible.
inline Machine random_unifilar_machine(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  std::vector<Matrix> ms(k, Matrix(n, n));
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t j = 0; j < n; ++j) {
    Vector w(k);
    double total = 0.0;
    for (auto& x : w) total += (x = uniform(rng, 0.1, 1.0));
    for (std::size_t x = 0; x < k; ++x) {
      std::size_t to = x == 0 ? (j + 1) % n : pick(rng);
      ms[x](j, to) = w[x] / total;
    }
  }
  std::vector<std::string> alphabet;
  for (std::size_t x = 0; x < k; ++x) alphabet.push_back(std::string(1, char('a' + x)));
  return Machine::build(alphabet, nmach::plain_labels(n), ms);
}

// pi T^(w) 1 with explicit loops, independent of the library's enumeration.
inline double brute_word_probability(const Machine& m, const std::vector<std::size_t>& w) {
  Vector v = m.stationary();
  for (std::size_t x : w) {
    const Matrix& t = m.matrix(x);
    Vector next(v.size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) next[j] += v[i] * t(i, j);
    v = next;
  }
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

// All words of a given length over k symbols, lexicographic.
inline std::vector<std::vector<std::size_t>> all_words(std::size_t k, std::size_t length) {
  std::vector<std::vector<std::size_t>> out{{}};
  for (std::size_t d = 0; d < length; ++d) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& w : out)
      for (std::size_t x = 0; x < k; ++x) {
        auto e = w;
        e.push_back(x);
        next.push_back(e);
      }
    out = std::move(next);
  }
  return out;
}

inline Vector power_stationary(const Matrix& t, std::size_t iters = 20000) {
  std::size_t n = t.rows;
  Vector v(n, 1.0 / double(n));
  for (std::size_t it = 0; it < iters; ++it) {
    Vector next(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) next[j] += v[i] * t(i, j);
    // lazy step so periodic chains still converge
    for (std::size_t i = 0; i < n; ++i) v[i] = 0.5 * (v[i] + next[i]);
  }
  return v;
}

inline double h2(const Vector& q) {
  double s = 0.0;
  for (double x : q) s += x * x;
  return -std::log2(s);
}

}  // namespace testing
