#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "nmach/linalg.hpp"

namespace nmach {

inline constexpr std::size_t kDefaultEnumerationCap = std::size_t(1) << 20;

// group = index of the source state, copy = l_k within that group.
struct StateLabel {
  std::string name;
  std::size_t group = 0;
  std::size_t copy = 0;
  friend bool operator==(const StateLabel&, const StateLabel&) = default;
};

std::vector<StateLabel> plain_labels(std::size_t n, const std::string& prefix = "s");

using Word = std::vector<std::size_t>;                 // symbol indices
using WordDistribution = std::map<std::string, double>;  // word key -> probability

class Machine {
 public:
  Machine() = default;

  // Recomputes the stationary vector from sum_x T^(x).
  static Machine build(std::vector<std::string> alphabet, std::vector<StateLabel> states,
                       std::vector<Matrix> matrices, double tol = kStructTol);
  // Keeps the supplied stationary vector; its residual is recorded, not checked.
  static Machine unchecked(std::vector<std::string> alphabet, std::vector<StateLabel> states,
                           std::vector<Matrix> matrices, Vector stationary);

  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::vector<StateLabel>& states() const { return states_; }
  const std::vector<Matrix>& matrices() const { return matrices_; }
  const Matrix& matrix(std::size_t x) const { return matrices_.at(x); }
  const Vector& stationary() const { return stationary_; }
  // max |pi T - pi| plus |sum pi - 1|
  double stationary_residual() const { return residual_; }
  std::size_t num_states() const { return states_.size(); }
  std::size_t num_symbols() const { return alphabet_.size(); }

  Matrix transition() const;
  std::size_t symbol_index(std::string_view symbol) const;
  Word parse_word(std::string_view text) const;
  std::string word_key(const Word& w) const;

  // Same stationary cache, new matrices (used to model stale caches).
  Machine with_matrices(std::vector<Matrix> matrices) const;
  Machine with_stationary(Vector stationary) const;

 private:
  void check_shapes() const;
  void refresh_residual();

  std::vector<std::string> alphabet_;
  std::vector<StateLabel> states_;
  std::vector<Matrix> matrices_;
  Vector stationary_;
  double residual_ = 0.0;
};

struct MachineClass {
  enum class Kind { Classical, QuasiNegative };
  Kind kind = Kind::Classical;
  bool unifilar = false;
};

enum class ViolationKind { RowSumViolation, StationaryMismatch, NonFinite, DimensionMismatch };

struct Violation {
  ViolationKind kind;
  std::size_t index;
  double residual;
  std::string to_string() const;
};

const char* violation_name(ViolationKind k);

double word_probability(const Machine& m, const Word& w);
double word_probability(const Machine& m, std::string_view w);
WordDistribution word_distribution(const Machine& m, std::size_t length,
                                   std::size_t cap = kDefaultEnumerationCap);
WordDistribution conditional_future_given_state(const Machine& m, std::size_t state,
                                                std::size_t length,
                                                std::size_t cap = kDefaultEnumerationCap);
MachineClass classify(const Machine& m, double tol = kStructTol);
std::vector<Violation> validate(const Machine& m, double tol = kStructTol);

// Max absolute word-probability gap over all lengths 1..horizon.
double process_distance(const Machine& a, const Machine& b, std::size_t horizon);
bool process_equal(const Machine& a, const Machine& b, std::size_t horizon = 8, double tol = 1e-9);

void check_enumeration_cap(const Machine& m, std::size_t length, std::size_t cap);

// Forward depth-first walk: visit(w, pi T^(w)) for every word of exactly `length`.
void enumerate_forward(const Machine& m, const Vector& start, std::size_t length,
                       const std::function<void(const Word&, const Vector&)>& visit,
                       std::size_t cap = kDefaultEnumerationCap);

// Backward walk over futures: visit(w, c) for every word of length 1..max_length with
// c[k] = P(w | state k) = (T^(w) 1)_k. Subtrees with c == 0 are skipped when prune is set.
void enumerate_futures(const Machine& m, std::size_t max_length,
                       const std::function<void(const Word&, const Vector&)>& visit,
                       bool prune = true, std::size_t cap = kDefaultEnumerationCap);

}  // namespace nmach
