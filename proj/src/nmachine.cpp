#include "nmach/nmachine.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "nmach/error.hpp"
#include "nmach/measures.hpp"
#include "nmach/processes.hpp"

namespace nmach {

double AffinePart::eval(const std::vector<double>& params) const {
  double v = constant;
  for (std::size_t i = 0; i < coeffs.size(); ++i) v += coeffs[i] * params.at(i);
  return v;
}

std::size_t SplitSpec::num_states() const {
  std::size_t n = 0;
  for (std::size_t c : copies) n += c;
  return n;
}

std::size_t SplitSpec::state_index(std::size_t k, std::size_t l) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < k; ++i) idx += copies.at(i);
  return idx + l;
}

SplitSpec trivial_split(const Machine& source) {
  SplitSpec s;
  s.copies.assign(source.num_states(), 1);
  return s;
}

// Fig. 6: sigma_0 -> {(0,0),(0,1)}, sigma_1 -> {(1,0)}.
SplitSpec perturbed_coin_split(double p) {
  SplitSpec s;
  s.copies = {2, 1};
  s.param_names = {"q1", "q2"};
  s.parts[{0, 0, 0, 0}] = {{1.0 - p, {1.0, 0.0}}};
  s.parts[{0, 1, 0, 0}] = {{0.0, {-1.0, 0.0}}};
  s.parts[{1, 0, 0, 0}] = {{0.0, {0.0, 1.0}}};
  return s;
}

// Fig. 10, built on the SNS g-machine (A = 0, B = 1).
SplitSpec sns_split(double p) {
  SplitSpec s;
  s.copies = {2, 1};
  s.param_names = {"gamma", "eta"};
  s.parts[{0, 0, 0, 0}] = {{p, {1.0, 0.0}}};
  s.parts[{0, 1, 0, 0}] = {{0.0, {-1.0, 0.0}}};
  s.parts[{1, 0, 1, 0}] = {{0.0, {0.0, 1.0}}};
  return s;
}

// Fig. 11b: sigma_1 returns to both copies with 1/2 each.
SplitSpec golden_mean_bad_split(double p) {
  SplitSpec s;
  s.copies = {2, 1};
  s.param_names = {"q"};
  s.parts[{0, 0, 0, 0}] = {{p, {1.0}}};
  s.parts[{0, 1, 0, 0}] = {{0.0, {-1.0}}};
  return s;
}

namespace {

void check_spec(const Machine& source, const SplitSpec& spec, std::size_t nparams) {
  const std::size_t n = source.num_states();
  if (spec.copies.size() != n)
    throw Error(Errc::SpecMismatch, "copy counts given for " + std::to_string(spec.copies.size()) +
                                        " states, source has " + std::to_string(n));
  for (std::size_t c : spec.copies)
    if (c == 0) throw Error(Errc::SpecMismatch, "every state needs at least one copy");
  if (nparams != spec.param_names.size())
    throw Error(Errc::SpecMismatch, "expected " + std::to_string(spec.param_names.size()) + " parameters");
  for (const auto& [key, parts] : spec.parts) {
    if (key.j >= n || key.k >= n || key.x >= source.num_symbols() || key.lj >= spec.copies[key.j])
      throw Error(Errc::SpecMismatch, "split key out of range");
    if (parts.size() + 1 != spec.copies[key.k])
      throw Error(Errc::SpecMismatch, "split needs copies[k]-1 explicit parts");
    for (const auto& part : parts)
      if (part.coeffs.size() > nparams) throw Error(Errc::SpecMismatch, "too many coefficients in a part");
  }
}

}  // namespace

Machine build_split_machine(const Machine& source, const SplitSpec& spec,
                            const std::vector<double>& params, double tol) {
  check_spec(source, spec, params.size());
  const std::size_t n = source.num_states(), N = spec.num_states();
  std::vector<Matrix> mats(source.num_symbols(), Matrix(N, N));
  for (std::size_t x = 0; x < source.num_symbols(); ++x)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t lj = 0; lj < spec.copies[j]; ++lj) {
        const std::size_t row = spec.state_index(j, lj);
        for (std::size_t k = 0; k < n; ++k) {
          const double t = source.matrix(x)(j, k);
          const std::size_t Lk = spec.copies[k];
          auto it = spec.parts.find({j, lj, x, k});
          double used = 0.0;
          for (std::size_t l = 0; l + 1 < Lk; ++l) {
            double v = it != spec.parts.end() ? it->second[l].eval(params) : t / double(Lk);
            mats[x](row, spec.state_index(k, l)) = v;
            used += v;
          }
          mats[x](row, spec.state_index(k, Lk - 1)) = t - used;
        }
      }
  std::vector<StateLabel> labels;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < spec.copies[k]; ++l)
      labels.push_back({source.states()[k].name + "," + std::to_string(l), k, l});
  return Machine::build(source.alphabet(), labels, mats, tol);
}

namespace {

std::vector<Vector> collect_futures(const Machine& m, std::size_t horizon) {
  std::vector<Vector> out;
  enumerate_futures(m, horizon, [&](const Word&, const Vector& c) { out.push_back(c); }, false);
  return out;
}

}  // namespace

NMachineProperties check_nmachine_properties(const Machine& source, const Machine& built,
                                             const SplitSpec& spec, std::size_t word_horizon,
                                             std::size_t process_horizon, double tol) {
  const std::size_t n = source.num_states();
  if (spec.copies.size() != n || built.num_states() != spec.num_states() ||
      built.num_symbols() != source.num_symbols())
    throw Error(Errc::SpecMismatch, "built machine does not match the split spec");
  NMachineProperties r;
  r.tol = tol;
  const Vector& pt = built.stationary();
  const double scale = std::max(1.0, negativity(pt));

  for (std::size_t x = 0; x < source.num_symbols(); ++x)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t lj = 0; lj < spec.copies[j]; ++lj) {
        const std::size_t row = spec.state_index(j, lj);
        double emit_src = 0.0, emit_built = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          double s = 0.0;
          for (std::size_t l = 0; l < spec.copies[k]; ++l) s += built.matrix(x)(row, spec.state_index(k, l));
          r.construct_split = std::max(r.construct_split, std::fabs(s - source.matrix(x)(j, k)));
          emit_src += source.matrix(x)(j, k);
          emit_built += s;
        }
        r.symbol_conditional = std::max(r.symbol_conditional, std::fabs(emit_built - emit_src));
      }

  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (std::size_t l = 0; l < spec.copies[k]; ++l) s += pt[spec.state_index(k, l)];
    r.coarse_graining = std::max(r.coarse_graining, std::fabs(s - source.stationary()[k]));
  }

  auto fb = collect_futures(built, word_horizon);
  auto fs = collect_futures(source, word_horizon);
  for (std::size_t w = 0; w < fb.size(); ++w)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t lj = 0; lj < spec.copies[j]; ++lj)
        r.word_conditional = std::max(r.word_conditional, std::fabs(fb[w][spec.state_index(j, lj)] - fs[w][j]));

  r.process = process_distance(built, source, process_horizon);

  try {
    double ib = state_half_information(built, pt, word_horizon);
    double is = state_half_information(source, source.stationary(), word_horizon);
    r.half_information = std::fabs(ib - is);
    if (!std::isfinite(r.half_information)) r.half_information = INFINITY;
  } catch (const Error&) {
    r.half_information = INFINITY;
  }

  auto flag = [&](const char* what, double v, double limit) {
    if (!(v <= limit)) {
      std::ostringstream os;
      os << what << " residual " << v;
      r.violations.push_back(os.str());
    }
  };
  flag("split-sum", r.construct_split, tol);
  flag("coarse-graining", r.coarse_graining, tol * scale);
  flag("symbol-conditional", r.symbol_conditional, tol);
  flag("word-conditional", r.word_conditional, tol);
  flag("process", r.process, tol);
  flag("half-information", r.half_information, tol * scale);
  return r;
}

NMachineProperties verify_nmachine_properties(const Machine& source, const Machine& built,
                                              const SplitSpec& spec, std::size_t word_horizon,
                                              std::size_t process_horizon, double tol) {
  NMachineProperties r = check_nmachine_properties(source, built, spec, word_horizon, process_horizon, tol);
  if (!r.ok()) {
    std::string msg;
    for (const auto& v : r.violations) msg += (msg.empty() ? "" : "; ") + v;
    throw Error(Errc::PropertyViolated, msg);
  }
  return r;
}

NMachineResult evaluate_nmachine(const Machine& source, const SplitSpec& spec,
                                 const std::vector<double>& params, double e_half, double baseline,
                                 double sat_tol, double extra_tol) {
  NMachineResult r;
  r.machine = build_split_machine(source, spec, params);
  r.names = spec.param_names;
  r.params = params;
  r.c_n2 = collision_entropy(r.machine.stationary());
  r.e_half = e_half;
  r.negativity = negativity(r.machine.stationary());
  r.mana = mana(r.machine.stationary());
  r.baseline = baseline;
  r.advantage = memory_advantage(r.c_n2, baseline);
  r.sat_tol = sat_tol * std::fabs(e_half) + extra_tol;
  r.saturated = std::fabs(r.c_n2 - e_half) <= r.sat_tol;
  r.violates_bound = r.c_n2 < e_half - r.sat_tol;
  return r;
}

std::pair<double, double> perturbed_coin_ideal_params(double p, Branch branch) {
  if (!(p > 0.0 && p < 1.0)) throw Error(Errc::InvalidInput, "p must lie in (0,1)");
  if (p == 0.5) throw Error(Errc::DegenerateParameter, "p = 1/2 has no n-machine advantage to find");
  double width = p * p * std::sqrt(1.0 / (4.0 * p * p) + 2.0 * std::sqrt(1.0 - p) / std::pow(p, 1.5));
  double q2 = branch == Branch::Plus ? p / 2.0 + width : p / 2.0 - width;
  return {0.0, q2};
}

std::pair<double, double> sns_ideal_params(double p, std::size_t N, Branch branch) {
  if (!(p > 0.0 && p < 1.0)) throw Error(Errc::InvalidInput, "p must lie in (0,1)");
  if (sns_Phi(p, N + 1) > kTruncEps)
    throw Error(Errc::TruncationTooCoarse, "Phi(N+1) above 1e-12");
  double M = sns_M(p, N).value;
  double rad = -3.0 + 8.0 * M;
  if (rad < 0.0) throw Error(Errc::NegativeRadicand, "-3 + 8M = " + std::to_string(rad) + " is negative");
  double root = (p - 1.0) * std::sqrt(rad);
  double eta = 0.5 * (1.0 - p + (branch == Branch::Plus ? root : -root));
  return {0.0, eta};
}

NMachineResult golden_mean_bad_nmachine(double p, double q, std::size_t horizon) {
  Machine src = golden_mean_epsilon(p);
  double e = excess_entropy_half(src, horizon).value;
  NMachineResult r = evaluate_nmachine(src, golden_mean_bad_split(p), {q}, e,
                                       collision_entropy(src.stationary()));
  const double c = (1.0 - p) / (2.0 - p);
  Vector expected{c / (2.0 - 2.0 * p), c / (2.0 - 2.0 * p), c};
  if (max_abs_diff(expected, r.machine.stationary()) > 1e-9)
    throw Error(Errc::PropertyViolated, "stationary vector depends on q");
  return r;
}

NMachineResult optimize_ideal(const Machine& source, const SplitSpec& spec, double e_half,
                              const OptimizeOptions& opts) {
  const std::size_t d = spec.param_names.size();
  if (d > opts.max_params)
    throw Error(Errc::InvalidInput, std::to_string(d) + " parameters exceed the cap of " +
                                        std::to_string(opts.max_params));
  const double baseline = opts.baseline >= 0.0 ? opts.baseline : collision_entropy(source.stationary());
  const double tol_abs = opts.sat_tol * std::fabs(e_half) + opts.extra_tol;
  std::size_t evals = 0;

  auto eval = [&](const std::vector<double>& x, double& f) {
    ++evals;
    try {
      f = collision_entropy(build_split_machine(source, spec, x).stationary());
    } catch (const Error&) {
      return false;
    }
    return std::isfinite(f) && f >= e_half - tol_abs;
  };

  struct Best {
    std::vector<double> x;
    double f;
  };
  std::vector<Best> finished;

  auto search = [&](std::vector<double> x) {
    double f;
    if (!eval(x, f)) return;
    double step = opts.initial_step;
    while (step >= opts.min_step && evals < opts.max_evaluations) {
      bool moved = false;
      for (std::size_t i = 0; i < d && !moved; ++i)
        for (double sgn : {1.0, -1.0}) {
          std::vector<double> y = x;
          y[i] += sgn * step;
          double fy;
          if (eval(y, fy) && fy < f) {
            x = std::move(y);
            f = fy;
            moved = true;
            break;
          }
        }
      if (!moved) step *= 0.5;
    }
    finished.push_back({x, f});
  };

  search(std::vector<double>(d, 0.0));
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unif(-opts.start_radius, opts.start_radius);
  for (std::size_t s = 0; s < opts.random_starts && d > 0; ++s) {
    std::vector<double> x(d);
    for (double& v : x) v = unif(rng);
    search(x);
  }
  if (finished.empty()) throw Error(Errc::NoFeasiblePoint, "no start satisfies C_n^(2) >= E_1/2");

  auto best = std::min_element(finished.begin(), finished.end(), [](const Best& a, const Best& b) {
    if (a.f != b.f) return a.f < b.f;
    return a.x < b.x;
  });
  return evaluate_nmachine(source, spec, best->x, e_half, baseline, opts.sat_tol, opts.extra_tol);
}

}  // namespace nmach
