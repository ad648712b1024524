#include "nmach/machine.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "nmach/error.hpp"
#include "nmach/kernels.hpp"

namespace nmach {

std::vector<StateLabel> plain_labels(std::size_t n, const std::string& prefix) {
  std::vector<StateLabel> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = {prefix + std::to_string(i), i, 0};
  return out;
}

void Machine::check_shapes() const {
  if (alphabet_.empty()) throw Error(Errc::InvalidInput, "empty alphabet");
  std::set<std::string> seen;
  for (const auto& s : alphabet_) {
    if (s.empty()) throw Error(Errc::InvalidInput, "empty symbol");
    if (!seen.insert(s).second) throw Error(Errc::InvalidInput, "duplicate symbol '" + s + "'");
  }
  if (states_.empty()) throw Error(Errc::InvalidInput, "no states");
  if (matrices_.size() != alphabet_.size())
    throw Error(Errc::DimensionMismatch, "one matrix per symbol required");
  const std::size_t n = states_.size();
  for (std::size_t x = 0; x < matrices_.size(); ++x)
    if (matrices_[x].rows != n || matrices_[x].cols != n)
      throw Error(Errc::DimensionMismatch, "matrix for symbol '" + alphabet_[x] + "' is not " +
                                               std::to_string(n) + "x" + std::to_string(n));
}

void Machine::refresh_residual() {
  if (stationary_.size() != states_.size()) {
    residual_ = INFINITY;
    return;
  }
  Vector moved = vec_mat(stationary_, transition());
  residual_ = max_abs_diff(moved, stationary_) + std::fabs(sum(stationary_) - 1.0);
  if (!std::isfinite(residual_)) residual_ = INFINITY;
}

Machine Machine::build(std::vector<std::string> alphabet, std::vector<StateLabel> states,
                       std::vector<Matrix> matrices, double tol) {
  Machine m;
  m.alphabet_ = std::move(alphabet);
  m.states_ = std::move(states);
  m.matrices_ = std::move(matrices);
  m.check_shapes();
  for (const auto& t : m.matrices_)
    if (!t.finite()) throw Error(Errc::NonFiniteEntries, "transition matrix");
  m.stationary_ = left_fixed_vector(m.transition(), tol);
  m.refresh_residual();
  return m;
}

Machine Machine::unchecked(std::vector<std::string> alphabet, std::vector<StateLabel> states,
                           std::vector<Matrix> matrices, Vector stationary) {
  Machine m;
  m.alphabet_ = std::move(alphabet);
  m.states_ = std::move(states);
  m.matrices_ = std::move(matrices);
  m.stationary_ = std::move(stationary);
  m.check_shapes();
  m.refresh_residual();
  return m;
}

Machine Machine::with_matrices(std::vector<Matrix> matrices) const {
  return unchecked(alphabet_, states_, std::move(matrices), stationary_);
}

Machine Machine::with_stationary(Vector stationary) const {
  return unchecked(alphabet_, states_, matrices_, std::move(stationary));
}

Matrix Machine::transition() const {
  Matrix t(states_.size(), states_.size());
  for (const auto& m : matrices_) t = t + m;
  return t;
}

std::size_t Machine::symbol_index(std::string_view symbol) const {
  for (std::size_t i = 0; i < alphabet_.size(); ++i)
    if (alphabet_[i] == symbol) return i;
  throw Error(Errc::UnknownSymbol, "symbol '" + std::string(symbol) + "' not in alphabet");
}

namespace {

bool single_char_alphabet(const std::vector<std::string>& a) {
  return std::all_of(a.begin(), a.end(), [](const std::string& s) { return s.size() == 1; });
}

}  // namespace

// Single-character alphabets use plain concatenation; otherwise symbols are comma separated.
Word Machine::parse_word(std::string_view text) const {
  Word w;
  if (text.empty()) return w;
  if (single_char_alphabet(alphabet_)) {
    for (char c : text) w.push_back(symbol_index(std::string_view(&c, 1)));
    return w;
  }
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    w.push_back(symbol_index(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return w;
}

std::string Machine::word_key(const Word& w) const {
  const bool plain = single_char_alphabet(alphabet_);
  std::string key;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!plain && i) key += ',';
    key += alphabet_.at(w[i]);
  }
  return key;
}

const char* violation_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::RowSumViolation: return "RowSumViolation";
    case ViolationKind::StationaryMismatch: return "StationaryMismatch";
    case ViolationKind::NonFinite: return "NonFinite";
    case ViolationKind::DimensionMismatch: return "DimensionMismatch";
  }
  return "Unknown";
}

std::string Violation::to_string() const {
  std::ostringstream os;
  os << violation_name(kind) << "(" << index << ", " << residual << ")";
  return os.str();
}

double word_probability(const Machine& m, const Word& w) {
  const auto& k = kernels::active();
  const std::size_t n = m.num_states();
  Vector row = m.stationary(), next(n);
  for (std::size_t x : w) {
    if (x >= m.num_symbols()) throw Error(Errc::UnknownSymbol, "symbol index out of range");
    const Matrix& t = m.matrix(x);
    k.vec_mat(row.data(), t.data.data(), n, n, next.data());
    row.swap(next);
  }
  return sum(row);
}

double word_probability(const Machine& m, std::string_view w) {
  return word_probability(m, m.parse_word(w));
}

void check_enumeration_cap(const Machine& m, std::size_t length, std::size_t cap) {
  double count = std::pow(double(m.num_symbols()), double(length));
  if (count > double(cap))
    throw Error(Errc::EnumerationCapExceeded, std::to_string(m.num_symbols()) + "^" +
                                                  std::to_string(length) + " words exceeds cap " +
                                                  std::to_string(cap));
}

namespace {

void forward_rec(const Machine& m, std::size_t remaining, Word& word, std::vector<Vector>& rows,
                 const std::function<void(const Word&, const Vector&)>& visit) {
  const std::size_t depth = word.size();
  if (remaining == 0) {
    visit(word, rows[depth]);
    return;
  }
  const auto& k = kernels::active();
  const std::size_t n = m.num_states();
  for (std::size_t x = 0; x < m.num_symbols(); ++x) {
    k.vec_mat(rows[depth].data(), m.matrix(x).data.data(), n, n, rows[depth + 1].data());
    word.push_back(x);
    forward_rec(m, remaining - 1, word, rows, visit);
    word.pop_back();
  }
}

void futures_rec(const Machine& m, std::size_t max_length, std::vector<std::size_t>& stack,
                 std::vector<Vector>& cols, bool prune,
                 const std::function<void(const Word&, const Vector&)>& visit) {
  const auto& k = kernels::active();
  const std::size_t n = m.num_states();
  const std::size_t depth = stack.size();
  for (std::size_t x = 0; x < m.num_symbols(); ++x) {
    const Matrix& t = m.matrix(x);
    Vector& c = cols[depth + 1];
    bool any = false;
    for (std::size_t j = 0; j < n; ++j) {
      c[j] = k.dot(t.row(j), cols[depth].data(), n);
      any = any || c[j] != 0.0;
    }
    if (prune && !any) continue;
    stack.push_back(x);
    Word w(stack.rbegin(), stack.rend());
    visit(w, c);
    if (depth + 1 < max_length) futures_rec(m, max_length, stack, cols, prune, visit);
    stack.pop_back();
  }
}

}  // namespace

void enumerate_forward(const Machine& m, const Vector& start, std::size_t length,
                       const std::function<void(const Word&, const Vector&)>& visit,
                       std::size_t cap) {
  check_enumeration_cap(m, length, cap);
  if (start.size() != m.num_states()) throw Error(Errc::DimensionMismatch, "start vector");
  std::vector<Vector> rows(length + 1, Vector(m.num_states(), 0.0));
  rows[0] = start;
  Word word;
  forward_rec(m, length, word, rows, visit);
}

void enumerate_futures(const Machine& m, std::size_t max_length,
                       const std::function<void(const Word&, const Vector&)>& visit, bool prune,
                       std::size_t cap) {
  check_enumeration_cap(m, max_length, cap);
  if (max_length == 0) return;
  std::vector<Vector> cols(max_length + 1, Vector(m.num_states(), 0.0));
  cols[0].assign(m.num_states(), 1.0);
  std::vector<std::size_t> stack;
  futures_rec(m, max_length, stack, cols, prune, visit);
}

WordDistribution word_distribution(const Machine& m, std::size_t length, std::size_t cap) {
  WordDistribution out;
  enumerate_forward(
      m, m.stationary(), length,
      [&](const Word& w, const Vector& row) { out[m.word_key(w)] = sum(row); }, cap);
  return out;
}

WordDistribution conditional_future_given_state(const Machine& m, std::size_t state,
                                                std::size_t length, std::size_t cap) {
  if (state >= m.num_states()) throw Error(Errc::InvalidInput, "state index out of range");
  Vector e(m.num_states(), 0.0);
  e[state] = 1.0;
  WordDistribution out;
  enumerate_forward(
      m, e, length, [&](const Word& w, const Vector& row) { out[m.word_key(w)] = sum(row); }, cap);
  return out;
}

MachineClass classify(const Machine& m, double tol) {
  MachineClass c;
  bool negative = false;
  for (const auto& t : m.matrices())
    for (double v : t.data) negative = negative || v < -tol;
  for (double v : m.stationary()) negative = negative || v < -tol;
  c.kind = negative ? MachineClass::Kind::QuasiNegative : MachineClass::Kind::Classical;

  c.unifilar = true;
  const std::size_t n = m.num_states();
  for (const auto& t : m.matrices())
    for (std::size_t j = 0; j < n && c.unifilar; ++j) {
      std::size_t successors = 0;
      for (std::size_t k = 0; k < n; ++k)
        if (std::fabs(t(j, k)) > tol) ++successors;
      c.unifilar = successors <= 1;
    }
  return c;
}

std::vector<Violation> validate(const Machine& m, double tol) {
  std::vector<Violation> out;
  const std::size_t n = m.num_states();
  if (m.matrices().size() != m.num_symbols()) {
    out.push_back({ViolationKind::DimensionMismatch, m.matrices().size(), 0.0});
    return out;
  }
  for (std::size_t x = 0; x < m.matrices().size(); ++x) {
    const Matrix& t = m.matrix(x);
    if (t.rows != n || t.cols != n) out.push_back({ViolationKind::DimensionMismatch, x, 0.0});
  }
  if (m.stationary().size() != n) out.push_back({ViolationKind::DimensionMismatch, n, 0.0});
  if (!out.empty()) return out;

  bool finite = all_finite(m.stationary());
  for (std::size_t x = 0; x < m.num_symbols(); ++x)
    if (!m.matrix(x).finite()) {
      out.push_back({ViolationKind::NonFinite, x, INFINITY});
      finite = false;
    }
  if (!all_finite(m.stationary())) out.push_back({ViolationKind::NonFinite, m.num_symbols(), INFINITY});
  if (!finite) return out;

  Matrix t = m.transition();
  Vector rs = row_sums(t);
  for (std::size_t j = 0; j < n; ++j)
    if (std::fabs(rs[j] - 1.0) > tol) out.push_back({ViolationKind::RowSumViolation, j, std::fabs(rs[j] - 1.0)});

  Vector moved = vec_mat(m.stationary(), t);
  std::size_t worst = 0;
  double worst_res = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double r = std::fabs(moved[k] - m.stationary()[k]);
    if (r > worst_res) {
      worst_res = r;
      worst = k;
    }
  }
  double norm_res = std::fabs(sum(m.stationary()) - 1.0);
  double scale = 1.0;
  for (double v : m.stationary()) scale = std::max(scale, std::fabs(v));
  if (worst_res > kEigenTol * scale || norm_res > tol)
    out.push_back({ViolationKind::StationaryMismatch, worst, worst_res + norm_res});
  return out;
}

double process_distance(const Machine& a, const Machine& b, std::size_t horizon) {
  if (a.num_symbols() != b.num_symbols()) throw Error(Errc::DimensionMismatch, "alphabets differ");
  std::vector<std::size_t> remap(a.num_symbols());
  for (std::size_t x = 0; x < a.num_symbols(); ++x) remap[x] = b.symbol_index(a.alphabet()[x]);
  double worst = 0.0;
  for (std::size_t L = 1; L <= horizon; ++L) {
    enumerate_forward(a, a.stationary(), L, [&](const Word& w, const Vector& row) {
      Word wb(w.size());
      for (std::size_t i = 0; i < w.size(); ++i) wb[i] = remap[w[i]];
      worst = std::max(worst, std::fabs(sum(row) - word_probability(b, wb)));
    });
  }
  return worst;
}

bool process_equal(const Machine& a, const Machine& b, std::size_t horizon, double tol) {
  return process_distance(a, b, horizon) <= tol;
}

}  // namespace nmach
