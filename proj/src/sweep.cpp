#include "nmach/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "nmach/error.hpp"
#include "nmach/measures.hpp"
#include "nmach/nmachine.hpp"
#include "nmach/processes.hpp"
#include "nmach/quantum.hpp"

namespace nmach {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return char(std::tolower(c)); });
  return s;
}

bool degenerate_at_half(SweepProcess p) { return p == SweepProcess::PerturbedCoin; }

std::map<std::string, double> perturbed_coin_row(double p, const SweepConfig& c) {
  Machine eps = perturbed_coin_epsilon(p);
  double cmu = collision_entropy(eps.stationary());
  double e = excess_entropy_half_closed_form({ClosedFormProcess::PerturbedCoin, p, 0}).value;
  auto [q1, q2] = perturbed_coin_ideal_params(p, Branch::Plus);
  NMachineResult n = evaluate_nmachine(eps, perturbed_coin_split(p), {q1, q2}, e, cmu);
  return {{"C_mu2", cmu},
          {"C_g2", collision_entropy(perturbed_coin_rjmc(p).stationary())},
          {"C_q2", quantum_complexity(gram_from_machine(eps, c.horizon), QuantumOrder::Renyi2)},
          {"C_n2", n.c_n2},
          {"E_half", e},
          {"negativity", n.negativity},
          {"negativity_minus_1", n.negativity - 1.0},
          {"mana", n.mana},
          {"advantage", n.advantage}};
}

std::map<std::string, double> sns_row(double p, const SweepConfig& c) {
  std::size_t N = c.truncation ? c.truncation : sns_default_truncation(p);
  Machine eps = sns_epsilon_truncated(p, N);
  Machine g = sns_g_machine(p);
  double cmu = collision_entropy(eps.stationary());
  ClosedFormValue e = excess_entropy_half_closed_form({ClosedFormProcess::SNS, p, N});
  auto [gamma, eta] = sns_ideal_params(p, N, Branch::Plus);
  NMachineResult n = evaluate_nmachine(g, sns_split(p), {gamma, eta}, e.value, cmu, 1e-6, e.residual);
  return {{"C_mu2", cmu},
          {"C_g2", collision_entropy(g.stationary())},
          {"C_q2", quantum_complexity(sns_quantum_gram(p, N), QuantumOrder::Renyi2)},
          {"C_n2", n.c_n2},
          {"E_half", e.value},
          {"negativity", n.negativity},
          {"negativity_minus_1", n.negativity - 1.0},
          {"mana", n.mana},
          {"advantage", n.advantage}};
}

std::map<std::string, double> golden_mean_row(double p, const SweepConfig& c) {
  Machine eps = golden_mean_epsilon(p);
  NMachineResult n = golden_mean_bad_nmachine(p, c.golden_mean_q, c.horizon);
  return {{"C_mu2", collision_entropy(eps.stationary())},
          {"C_q2", quantum_complexity(gram_from_machine(eps, c.horizon), QuantumOrder::Renyi2)},
          {"C_n2", n.c_n2},
          {"E_half", n.e_half},
          {"negativity", n.negativity},
          {"negativity_minus_1", n.negativity - 1.0},
          {"mana", n.mana},
          {"advantage", n.advantage}};
}

}  // namespace

SweepProcess parse_sweep_process(const std::string& name) {
  std::string n = lower(name);
  if (n == "perturbed-coin" || n == "perturbedcoin" || n == "pc") return SweepProcess::PerturbedCoin;
  if (n == "sns") return SweepProcess::SNS;
  if (n == "golden-mean" || n == "goldenmean" || n == "gm") return SweepProcess::GoldenMean;
  throw Error(Errc::InvalidInput, "unknown sweep process '" + name + "'");
}

const char* sweep_process_name(SweepProcess p) {
  switch (p) {
    case SweepProcess::PerturbedCoin: return "perturbed-coin";
    case SweepProcess::SNS: return "sns";
    case SweepProcess::GoldenMean: return "golden-mean";
  }
  return "unknown";
}

Figure parse_figure(const std::string& name) {
  std::string n = lower(name);
  if (n == "fig5" || n == "5") return Figure::Fig5;
  if (n == "fig7" || n == "7") return Figure::Fig7;
  if (n == "fig9" || n == "9") return Figure::Fig9;
  if (n == "fig10" || n == "10") return Figure::Fig10;
  throw Error(Errc::InvalidInput, "unknown figure '" + name + "'");
}

std::vector<std::string> available_columns(SweepProcess p) {
  if (p == SweepProcess::GoldenMean)
    return {"C_mu2", "C_q2", "C_n2", "E_half", "negativity", "mana", "advantage", "negativity_minus_1"};
  return {"C_mu2", "C_g2", "C_q2", "C_n2", "E_half", "negativity", "mana", "advantage", "negativity_minus_1"};
}

void validate_config(const SweepConfig& c) {
  for (std::size_t i = 0; i < c.p_grid.size(); ++i) {
    double p = c.p_grid[i];
    if (!(p > 0.0 && p < 1.0)) throw Error(Errc::InvalidInput, "grid value outside (0,1)");
    if (i && !(p > c.p_grid[i - 1])) throw Error(Errc::InvalidInput, "grid must be strictly increasing");
    if (degenerate_at_half(c.process) && p == 0.5)
      throw Error(Errc::InvalidInput, std::string(sweep_process_name(c.process)) + " grid must exclude 1/2");
  }
  auto avail = available_columns(c.process);
  for (const auto& o : c.outputs)
    if (std::find(avail.begin(), avail.end(), o) == avail.end())
      throw Error(Errc::InvalidInput, "column '" + o + "' not available for " + sweep_process_name(c.process));
  if (c.horizon == 0) throw Error(Errc::InvalidInput, "horizon must be positive");
}

std::vector<double> make_grid(double lo, double hi, double step, bool exclude_half) {
  if (!(step > 0.0)) throw Error(Errc::InvalidInput, "grid step must be positive");
  std::vector<double> g;
  for (long i = 0;; ++i) {
    double p = std::round((lo + double(i) * step) * 1e12) / 1e12;
    if (p > hi + 1e-12) break;
    if (exclude_half && std::fabs(p - 0.5) < 1e-12) continue;
    g.push_back(p);
  }
  return g;
}

SweepResult run_sweep(const SweepConfig& c) {
  validate_config(c);
  SweepResult r;
  r.columns = {"p"};
  auto cols = c.outputs.empty() ? available_columns(c.process) : c.outputs;
  if (c.outputs.empty()) cols.pop_back();  // negativity_minus_1 only on request
  r.columns.insert(r.columns.end(), cols.begin(), cols.end());
  for (double p : c.p_grid) {
    SweepRow row;
    row.p = p;
    try {
      std::map<std::string, double> all;
      switch (c.process) {
        case SweepProcess::PerturbedCoin: all = perturbed_coin_row(p, c); break;
        case SweepProcess::SNS: all = sns_row(p, c); break;
        case SweepProcess::GoldenMean: all = golden_mean_row(p, c); break;
      }
      for (const auto& col : cols) row.values[col] = all.at(col);
    } catch (const std::exception& e) {
      row.error = e.what();
      for (const auto& col : cols) row.values[col] = NAN;
    }
    r.rows.push_back(std::move(row));
  }
  return r;
}

SweepConfig reproduce_config(Figure f) {
  SweepConfig c;
  switch (f) {
    case Figure::Fig5:
      c.process = SweepProcess::PerturbedCoin;
      c.p_grid = make_grid(0.01, 0.99, 0.01, true);
      c.outputs = {"C_mu2", "C_g2", "C_q2", "E_half"};
      break;
    case Figure::Fig7:
      c.process = SweepProcess::PerturbedCoin;
      c.p_grid = make_grid(0.01, 0.99, 0.01, true);
      c.outputs = {"negativity_minus_1", "advantage"};
      break;
    case Figure::Fig9:
      c.process = SweepProcess::SNS;
      c.p_grid = make_grid(0.05, 0.95, 0.05, false);
      c.outputs = {"C_mu2", "C_g2", "C_q2", "E_half"};
      break;
    case Figure::Fig10:
      c.process = SweepProcess::SNS;
      c.p_grid = make_grid(0.05, 0.95, 0.05, false);
      c.outputs = {"negativity_minus_1", "advantage"};
      break;
  }
  return c;
}

SweepConfig sweep_config_from_json(const nlohmann::json& j) {
  try {
    SweepConfig c;
    c.process = parse_sweep_process(j.at("process").get<std::string>());
    if (j.contains("p_grid")) c.p_grid = j.at("p_grid").get<std::vector<double>>();
    c.horizon = j.value("horizon", c.horizon);
    c.truncation = j.value("truncation", c.truncation);
    if (j.contains("outputs")) c.outputs = j.at("outputs").get<std::vector<std::string>>();
    c.seed = j.value("seed", c.seed);
    c.output_path = j.value("output_path", c.output_path);
    c.golden_mean_q = j.value("golden_mean_q", c.golden_mean_q);
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

std::string format_number(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::string format_csv(const SweepResult& r) {
  std::ostringstream os;
  for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << r.columns[i];
  os << "\n";
  for (const auto& row : r.rows) {
    os << format_number(row.p);
    for (std::size_t i = 1; i < r.columns.size(); ++i) os << "," << format_number(row.values.at(r.columns[i]));
    os << "\n";
  }
  return os.str();
}

std::string format_error_log(const SweepResult& r) {
  std::ostringstream os;
  for (const auto& row : r.rows)
    if (!row.error.empty()) os << "p=" << format_number(row.p) << ": " << row.error << "\n";
  return os.str();
}

namespace {

Vector ranks(const Vector& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  Vector r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    double avg = 0.5 * double(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}

}  // namespace

double spearman(const Vector& a, const Vector& b) {
  if (a.size() != b.size() || a.size() < 2) throw Error(Errc::InvalidInput, "spearman needs two equal-length samples");
  Vector ra = ranks(a), rb = ranks(b);
  double ma = sum(ra) / double(ra.size()), mb = sum(rb) / double(rb.size());
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace nmach
