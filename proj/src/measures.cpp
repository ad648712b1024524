#include "nmach/measures.hpp"

#include <algorithm>
#include <cmath>

#include "nmach/error.hpp"
#include "nmach/kernels.hpp"
#include "nmach/processes.hpp"

namespace nmach {

const char* measure_name(MeasureName n) {
  switch (n) {
    case MeasureName::Cmu_alpha: return "C_mu_alpha";
    case MeasureName::Cq2: return "C_q2";
    case MeasureName::Cq_vN: return "C_q_vN";
    case MeasureName::Cn2: return "C_n2";
    case MeasureName::Cg2: return "C_g2";
    case MeasureName::ExcessHalf: return "E_half";
    case MeasureName::ExcessShannon: return "E";
    case MeasureName::Negativity: return "negativity";
    case MeasureName::Mana: return "mana";
    case MeasureName::Advantage: return "advantage";
  }
  return "unknown";
}

double collision_entropy(const Vector& q) {
  return -std::log2(kernels::active().sum_squares(q.data(), q.size()));
}

double renyi_entropy(const Vector& q, double alpha, double tol) {
  if (q.empty()) throw Error(Errc::InvalidInput, "renyi_entropy: empty distribution");
  if (!all_finite(q)) throw Error(Errc::NonFiniteEntries, "renyi_entropy");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw Error(Errc::InvalidAlpha, "alpha must be finite and >= 0");
  const double l1 = negativity(q);
  if (std::fabs(sum(q) - 1.0) > tol * std::max(1.0, l1))
    throw Error(Errc::InvalidInput, "renyi_entropy: entries do not sum to 1");

  const bool quasi = std::any_of(q.begin(), q.end(), [&](double x) { return x < -tol; });
  if (quasi) {
    if (alpha != 2.0)
      throw Error(Errc::NegativeEntriesUnsupportedOrder, "signed entries need alpha = 2");
    if (std::any_of(q.begin(), q.end(), [&](double x) { return std::fabs(x) < tol; }))
      throw Error(Errc::ZeroEntryWithQuasiOrder, "quasiprobability with a zero entry");
    return collision_entropy(q);
  }
  if (alpha == 2.0) return collision_entropy(q);
  if (alpha == 0.0) {
    auto support = std::count_if(q.begin(), q.end(), [&](double x) { return x > tol; });
    return std::log2(double(support));
  }
  if (alpha == 1.0) {
    double h = 0.0;
    for (double x : q)
      if (x > 0.0) h -= x * std::log2(x);
    return h;
  }
  double s = 0.0;
  for (double x : q)
    if (x > 0.0) s += std::pow(x, alpha);
  return std::log2(s) / (1.0 - alpha);
}

double shannon_mutual_information(const Matrix& joint) {
  Vector px(joint.rows, 0.0), py(joint.cols, 0.0);
  for (std::size_t i = 0; i < joint.rows; ++i)
    for (std::size_t j = 0; j < joint.cols; ++j) {
      px[i] += joint(i, j);
      py[j] += joint(i, j);
    }
  double mi = 0.0;
  for (std::size_t i = 0; i < joint.rows; ++i)
    for (std::size_t j = 0; j < joint.cols; ++j) {
      double v = joint(i, j);
      if (v > 0.0) mi += v * std::log2(v / (px[i] * py[j]));
    }
  return mi;
}

double alpha_mutual_information(const Vector& px, const Matrix& pyx, double alpha, double tol) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw Error(Errc::InvalidAlpha, "alpha must be finite and >= 0");
  if (px.size() != pyx.rows) throw Error(Errc::DimensionMismatch, "P(x) and P(y|x) disagree on |X|");
  if (!all_finite(px) || !pyx.finite()) throw Error(Errc::NonFiniteEntries, "alpha_mutual_information");
  for (double v : px)
    if (v < -tol) throw Error(Errc::InvalidInput, "P(x) has negative entries");
  if (std::fabs(sum(px) - 1.0) > tol) throw Error(Errc::InvalidInput, "P(x) does not sum to 1");
  for (double v : pyx.data)
    if (v < -tol) throw Error(Errc::NegativeConditional, "P(y|x) has negative entries");
  Vector rs = row_sums(pyx);
  for (std::size_t i = 0; i < rs.size(); ++i)
    if (std::fabs(rs[i] - 1.0) > tol) throw Error(Errc::InvalidInput, "P(y|x) row does not sum to 1");

  if (alpha == 1.0) {
    Matrix joint(pyx.rows, pyx.cols);
    for (std::size_t i = 0; i < pyx.rows; ++i)
      for (std::size_t j = 0; j < pyx.cols; ++j) joint(i, j) = std::max(px[i], 0.0) * std::max(pyx(i, j), 0.0);
    return shannon_mutual_information(joint);
  }
  if (alpha == 0.0) {
    double best = 0.0;
    for (std::size_t j = 0; j < pyx.cols; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < pyx.rows; ++i)
        if (pyx(i, j) > 0.0) s += std::max(px[i], 0.0);
      best = std::max(best, s);
    }
    return -std::log2(best);
  }
  double total = 0.0;
  for (std::size_t j = 0; j < pyx.cols; ++j) {
    double inner = 0.0;
    for (std::size_t i = 0; i < pyx.rows; ++i) {
      double c = std::max(pyx(i, j), 0.0);
      if (c > 0.0) inner += std::max(px[i], 0.0) * std::pow(c, alpha);
    }
    if (inner > 0.0) total += std::pow(inner, 1.0 / alpha);
  }
  return alpha / (alpha - 1.0) * std::log2(total);
}

namespace {

void require_classical(const Machine& m, const char* who) {
  if (classify(m).kind != MachineClass::Kind::Classical)
    throw Error(Errc::QuasiMachineUnsupported,
                std::string(who) + " is evaluated on a classical presentation of the process");
}

void check_conditional(const Vector& c) {
  for (double v : c)
    if (v < -1e-12) throw Error(Errc::NegativeConditional, "conditional future probability is negative");
}

// S[d] = sum over words of length d of (weights . sqrt(c_w))^2, for d = 0..L.
Vector half_sums_by_depth(const Machine& m, const Vector& weights, std::size_t L, std::size_t cap) {
  const auto& k = kernels::active();
  Vector s(L + 1, 0.0);
  double w0 = sum(weights);
  s[0] = w0 * w0;
  enumerate_futures(
      m, L,
      [&](const Word& w, const Vector& c) {
        check_conditional(c);
        double a = k.weighted_sqrt_sum(weights.data(), c.data(), c.size());
        s[w.size()] += a * a;
      },
      true, cap);
  return s;
}

double quadratic_form(const Vector& v, const Matrix& g) {
  double s = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) s += v[j] * kernels::active().dot(g.row(j), v.data(), v.size());
  return s;
}

}  // namespace

double state_half_information(const Machine& m, const Vector& weights, std::size_t length,
                              std::size_t cap) {
  if (weights.size() != m.num_states()) throw Error(Errc::DimensionMismatch, "weights");
  return -std::log2(half_sums_by_depth(m, weights, length, cap)[length]);
}

MeasureReport excess_entropy_half(const Machine& m, std::size_t horizon, EntropyRoute route,
                                  std::size_t cap) {
  require_classical(m, "E_half");
  MeasureReport r{MeasureName::ExcessHalf, 0.0, {{"horizon", double(horizon)}}, 0.0};
  if (horizon == 0) return r;
  if (route == EntropyRoute::Auto)
    route = classify(m).unifilar ? EntropyRoute::UnifilarRecursion : EntropyRoute::Enumerate;
  double now, before;
  if (route == EntropyRoute::UnifilarRecursion) {
    OverlapPair g = future_overlaps(m, horizon, GramRoute::UnifilarRecursion, cap);
    now = -std::log2(quadratic_form(m.stationary(), g.at_horizon));
    before = -std::log2(quadratic_form(m.stationary(), g.previous));
  } else {
    Vector s = half_sums_by_depth(m, m.stationary(), horizon, cap);
    now = -std::log2(s[horizon]);
    before = -std::log2(s[horizon - 1]);
  }
  r.value = now;
  r.residual = std::fabs(now - before);
  return r;
}

MeasureReport excess_entropy_shannon(const Machine& m, std::size_t horizon, std::size_t cap) {
  require_classical(m, "E");
  MeasureReport r{MeasureName::ExcessShannon, 0.0, {{"horizon", double(horizon)}}, 0.0};
  if (horizon == 0) return r;
  const Vector& pi = m.stationary();
  Vector by_depth(horizon + 1, 0.0);
  enumerate_futures(
      m, horizon,
      [&](const Word& w, const Vector& c) {
        check_conditional(c);
        double pw = kernels::active().dot(pi.data(), c.data(), c.size());
        if (pw <= 0.0) return;
        double acc = 0.0;
        for (std::size_t k = 0; k < c.size(); ++k)
          if (pi[k] > 0.0 && c[k] > 0.0) acc += pi[k] * c[k] * std::log2(c[k] / pw);
        by_depth[w.size()] += acc;
      },
      true, cap);
  r.value = by_depth[horizon];
  r.residual = std::fabs(by_depth[horizon] - by_depth[horizon - 1]);
  return r;
}

namespace {

// sum_{n>=k} Phi(n) for k >= 1
double sns_Phi_tail_sum(double p, std::size_t k) {
  return std::pow(p, double(k - 1)) * (double(k) * (1.0 - p) + 2.0 * p) / (1.0 - p);
}

}  // namespace

ClosedFormValue sns_M(double p, std::size_t N) {
  if (!(p > 0.0 && p < 1.0)) throw Error(Errc::InvalidInput, "sns_M: p must lie in (0,1)");
  if (N < 2) throw Error(Errc::InvalidInput, "sns_M: N must be >= 2");
  const double mu = (1.0 - p) / 2.0;
  Vector phi(2 * N + 1), Phi(N + 1);
  for (std::size_t n = 0; n <= 2 * N; ++n) phi[n] = sns_phi(p, n);
  for (std::size_t n = 0; n <= N; ++n) Phi[n] = sns_Phi(p, n);
  const double tail = sns_Phi_tail_sum(p, N + 1);
  double M = 0.0, resid = mu * tail;
  for (std::size_t m = 0; m <= N; ++m) {
    double a = 0.0;
    for (std::size_t n = 0; n <= N; ++n) a += std::sqrt(phi[m + n] * Phi[n]);
    a *= mu;
    M += a * a;
    double delta = mu * std::sqrt(sns_Phi(p, N + 1 + m) * tail);
    resid += 2.0 * a * delta + delta * delta;
  }
  return {M, resid};
}

ClosedFormValue excess_entropy_half_closed_form(const ProcessRef& process) {
  const double p = process.p;
  switch (process.kind) {
    case ClosedFormProcess::PerturbedCoin: {
      if (!(p > 0.0 && p < 1.0)) throw Error(Errc::InvalidInput, "p must lie in (0,1)");
      double r = std::sqrt(p) + std::sqrt(1.0 - p);
      return {1.0 - 2.0 * std::log2(r), 0.0};
    }
    case ClosedFormProcess::SNS: {
      std::size_t N = process.truncation ? process.truncation : sns_default_truncation(p);
      ClosedFormValue M = sns_M(p, N);
      return {-std::log2(M.value), M.residual / (M.value * std::log(2.0))};
    }
    case ClosedFormProcess::Other: break;
  }
  throw Error(Errc::UnsupportedProcess, "no closed form for this process");
}

MeasureReport statistical_complexity(const Machine& m, double alpha) {
  MeasureReport r{MeasureName::Cmu_alpha, renyi_entropy(m.stationary(), alpha), {{"alpha", alpha}}, 0.0};
  if (classify(m).kind == MachineClass::Kind::QuasiNegative) r.name = MeasureName::Cn2;
  r.residual = m.stationary_residual();
  return r;
}

double negativity(const Vector& q) { return kernels::active().abs_sum(q.data(), q.size()); }

double mana(const Vector& q) { return 2.0 * std::log2(negativity(q)); }

double memory_advantage(double c_n2, double c_mu2) {
  if (std::fabs(c_mu2) < 1e-15) throw Error(Errc::ZeroBaseline, "C_mu^(2) = 0");
  return std::fabs(c_n2 - c_mu2) / c_mu2;
}

}  // namespace nmach
