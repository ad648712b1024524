#include "nmach/quantum.hpp"

#include <algorithm>
#include <complex>
#include <limits>

#include "nmach/error.hpp"
#include "nmach/kernels.hpp"
#include "nmach/processes.hpp"

namespace nmach {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

void require_classical(const Machine& m, const char* who) {
  if (classify(m).kind != MachineClass::Kind::Classical)
    throw Error(Errc::QuasiMachineUnsupported, std::string(who) + " needs a classical machine");
}

OverlapPair overlaps_by_recursion(const Machine& m, std::size_t L) {
  const std::size_t n = m.num_states(), A = m.num_symbols();
  std::vector<std::size_t> succ(A * n, kNone);
  Vector amp(A * n, 0.0);
  for (std::size_t x = 0; x < A; ++x)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        double t = m.matrix(x)(j, k);
        if (t == 0.0) continue;
        if (succ[x * n + j] != kNone)
          throw Error(Errc::InvalidInput, "overlap recursion needs a unifilar machine");
        succ[x * n + j] = k;
        amp[x * n + j] = std::sqrt(std::max(t, 0.0));
      }
  Matrix g(n, n, 1.0), prev = g;
  for (std::size_t l = 0; l < L; ++l) {
    prev = g;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j; k < n; ++k) {
        double s = 0.0;
        for (std::size_t x = 0; x < A; ++x) {
          std::size_t sj = succ[x * n + j], sk = succ[x * n + k];
          if (sj == kNone || sk == kNone) continue;
          s += amp[x * n + j] * amp[x * n + k] * prev(sj, sk);
        }
        g(j, k) = s;
        g(k, j) = s;
      }
  }
  return {g, prev};
}

OverlapPair overlaps_by_enumeration(const Machine& m, std::size_t L, std::size_t cap) {
  const std::size_t n = m.num_states();
  OverlapPair out{Matrix(n, n, L == 0 ? 1.0 : 0.0), Matrix(n, n, L <= 1 ? 1.0 : 0.0)};
  if (L == 0) return out;
  Vector r(n);
  enumerate_futures(
      m, L,
      [&](const Word& w, const Vector& c) {
        if (w.size() + 1 < L) return;
        Matrix& g = w.size() == L ? out.at_horizon : out.previous;
        for (std::size_t k = 0; k < n; ++k) r[k] = std::sqrt(std::max(c[k], 0.0));
        for (std::size_t j = 0; j < n; ++j) kernels::active().axpy(r[j], r.data(), g.row(j), n);
      },
      true, cap);
  return out;
}

}  // namespace

OverlapPair future_overlaps(const Machine& m, std::size_t horizon, GramRoute route, std::size_t cap) {
  if (route == GramRoute::Auto)
    route = classify(m).unifilar ? GramRoute::UnifilarRecursion : GramRoute::Enumerate;
  if (route == GramRoute::UnifilarRecursion) return overlaps_by_recursion(m, horizon);
  return overlaps_by_enumeration(m, horizon, cap);
}

GramEnsemble gram_from_machine(const Machine& m, std::size_t horizon, const GramOptions& opts) {
  require_classical(m, "gram_from_machine");
  OverlapPair o = future_overlaps(m, horizon, opts.route, opts.cap);
  GramEnsemble g{m.stationary(), o.at_horizon, max_abs_diff(o.at_horizon, o.previous), horizon};
  if (g.residual > opts.converge_tol)
    throw Error(Errc::NotConverged, "Gram residual " + std::to_string(g.residual) + " at horizon " +
                                        std::to_string(horizon));
  return g;
}

Vector ensemble_spectrum(const GramEnsemble& g, double tol) {
  const std::size_t n = g.weights.size();
  if (g.overlaps.rows != n || g.overlaps.cols != n) throw Error(Errc::DimensionMismatch, "Gram ensemble");
  Vector root(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (g.weights[k] < -tol) throw Error(Errc::NonPSD, "negative ensemble weight");
    root[k] = std::sqrt(std::max(g.weights[k], 0.0));
  }
  Matrix m(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) m(j, k) = root[j] * g.overlaps(j, k) * root[k];
  Vector ev = symmetric_eigenvalues(m, 1e-9);
  if (!ev.empty() && ev.back() < -tol)
    throw Error(Errc::NonPSD, "ensemble eigenvalue " + std::to_string(ev.back()));
  for (double& v : ev) v = std::max(v, 0.0);
  return ev;
}

double quantum_complexity(const GramEnsemble& g, QuantumOrder order, double tol) {
  Vector ev = ensemble_spectrum(g, tol);
  switch (order) {
    case QuantumOrder::Renyi2:
      return -std::log2(kernels::active().sum_squares(ev.data(), ev.size()));
    case QuantumOrder::VonNeumann: {
      double h = 0.0;
      for (double v : ev)
        if (v > 0.0) h -= v * std::log2(v);
      return h;
    }
    case QuantumOrder::Topological: {
      auto rank = std::count_if(ev.begin(), ev.end(), [&](double v) { return v > tol; });
      return std::log2(double(rank));
    }
  }
  return 0.0;
}

UnitaryReport validate_unitary_relation(const Machine& m, std::size_t horizon, double tol) {
  require_classical(m, "validate_unitary_relation");
  if (!classify(m).unifilar) throw Error(Errc::InvalidInput, "validate_unitary_relation needs a unifilar machine");
  const std::size_t n = m.num_states(), A = m.num_symbols();
  Matrix g = future_overlaps(m, horizon, GramRoute::UnifilarRecursion).at_horizon;
  for (std::size_t j = 0; j < n; ++j)
    if (!(g(j, j) > 0.0)) throw Error(Errc::IsometryViolated, "state with vanishing norm");
  Matrix gn(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) gn(j, k) = g(j, k) / std::sqrt(g(j, j) * g(k, k));

  // Embed |sigma_j> as columns of V = Lambda^{1/2} U^T.
  SymmetricEigen es = symmetric_eigen(gn, 1e-9);
  std::size_t r = 0;
  while (r < n && es.values[r] > 1e-13) ++r;
  Matrix v(r, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) v(i, j) = std::sqrt(es.values[i]) * es.vectors(j, i);

  UnitaryReport rep;
  rep.rank = r;
  rep.horizon = horizon;
  Matrix vtv = transpose(v) * v;
  rep.embedding_error = max_abs_diff(vtv, gn);

  // U|sigma_j>|0> = sum_{x,k} sqrt(T^(x)_{jk}) |sigma_k>|x>, images laid out as (x, i).
  Matrix u(n, A * r);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t x = 0; x < A; ++x)
      for (std::size_t k = 0; k < n; ++k) {
        double a = std::sqrt(std::max(m.matrix(x)(j, k), 0.0));
        if (a == 0.0) continue;
        for (std::size_t i = 0; i < r; ++i) u(j, x * r + i) += a * v(i, k);
      }
  Matrix uut = u * transpose(u);
  rep.max_residual = max_abs_diff(uut, vtv);
  if (rep.max_residual > tol)
    throw Error(Errc::IsometryViolated, "inner products not preserved, residual " + std::to_string(rep.max_residual));
  return rep;
}

GramEnsemble sns_quantum_gram(double p, std::size_t N) {
  if (!(p > 0.0 && p < 1.0)) throw Error(Errc::InvalidInput, "sns_quantum_gram: p must lie in (0,1)");
  if (N < 2) throw Error(Errc::InvalidInput, "sns_quantum_gram: N must be >= 2");
  const std::size_t K = 2 * N;
  Vector phi(K + 1), Phi(N + 1);
  for (std::size_t i = 0; i <= K; ++i) phi[i] = sns_phi(p, i);
  for (std::size_t i = 0; i <= N; ++i) Phi[i] = sns_Phi(p, i);

  GramEnsemble g;
  g.overlaps = Matrix(N + 1, N + 1);
  g.horizon = K;
  // S[m][m+d] = sum_k sqrt(phi(m+k) phi(m+d+k)), accumulated along each diagonal.
  for (std::size_t d = 0; d <= N; ++d) {
    double s = 0.0;
    for (std::size_t m = K - d + 1; m-- > 0;) {
      s += std::sqrt(phi[m] * phi[m + d]);
      if (m + d <= N) {
        double v = s / std::sqrt(Phi[m] * Phi[m + d]);
        g.overlaps(m, m + d) = v;
        g.overlaps(m + d, m) = v;
      }
    }
  }
  const double mu = (1.0 - p) / 2.0;
  g.weights.resize(N + 1);
  double total = 0.0;
  for (std::size_t i = 0; i <= N; ++i) total += Phi[i];
  for (std::size_t i = 0; i <= N; ++i) g.weights[i] = Phi[i] / total;
  double dropped = std::pow(p, double(N)) * (double(N + 1) * (1.0 - p) + 2.0 * p) / (1.0 - p);
  g.residual = mu * double(N + 1) * sns_Phi(p, N + 1) + mu * dropped;
  return g;
}

namespace {

using C = std::complex<double>;
using M2 = std::array<std::array<C, 2>, 2>;

M2 mul(const M2& a, const M2& b) {
  M2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return c;
}

M2 dagger(const M2& a) {
  return {{{std::conj(a[0][0]), std::conj(a[1][0])}, {std::conj(a[0][1]), std::conj(a[1][1])}}};
}

C tr(const M2& a) { return a[0][0] + a[1][1]; }

M2 phase_point(int l1, int l2) {
  const double sz = (l1 % 2) ? -1.0 : 1.0;
  const double sx = (l2 % 2) ? -1.0 : 1.0;
  const double sy = ((l1 + l2) % 2) ? -1.0 : 1.0;
  const C i(0.0, 1.0);
  // 1/2 [I + sz Z + sx X + sy Y]
  return {{{0.5 * (1.0 + sz), 0.5 * (sx - i * sy)}, {0.5 * (sx + i * sy), 0.5 * (1.0 - sz)}}};
}

constexpr std::array<std::array<int, 2>, 4> kPhasePoints{{{0, 0}, {0, 1}, {1, 0}, {1, 1}}};

}  // namespace

WignerRepresentation wigner_qubit_representation(double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error(Errc::InvalidInput, "wigner: p must lie in (0,1)");
  const double a = std::sqrt(1.0 - p), b = std::sqrt(p);
  // |sigma_0> = (a, b), |sigma_1> = (b, a); K_0 = |sigma_0><0|, K_1 = |sigma_1><1|
  const M2 k0{{{a, 0.0}, {b, 0.0}}};
  const M2 k1{{{0.0, b}, {0.0, a}}};
  const M2 rho{{{0.5 * (a * a + b * b), 0.5 * (2.0 * a * b)}, {0.5 * (2.0 * a * b), 0.5 * (a * a + b * b)}}};

  std::array<M2, 4> A;
  for (int l = 0; l < 4; ++l) A[l] = phase_point(kPhasePoints[l][0], kPhasePoints[l][1]);

  WignerRepresentation w;
  w.phase_points = kPhasePoints;
  w.state_quasi.resize(4);
  for (int l = 0; l < 4; ++l) w.state_quasi[l] = 0.5 * tr(mul(A[l], rho)).real();
  for (const M2* k : {&k0, &k1}) {
    Matrix tau(4, 4);
    for (int from = 0; from < 4; ++from) {
      M2 image = mul(mul(*k, A[from]), dagger(*k));
      for (int to = 0; to < 4; ++to) tau(from, to) = 0.5 * tr(mul(A[to], image)).real();
    }
    w.channel_matrices.push_back(tau);
  }
  return w;
}

WignerRepresentation wigner_closed_form(double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error(Errc::InvalidInput, "wigner: p must lie in (0,1)");
  const double s = std::sqrt(p * (1.0 - p));
  WignerRepresentation w;
  w.phase_points = kPhasePoints;
  w.state_quasi = {(1 + 2 * s) / 4, (1 - 2 * s) / 4, (1 + 2 * s) / 4, (1 - 2 * s) / 4};
  const double hi0 = (1 - p + s) / 2, lo0 = (1 - p - s) / 2, hi1 = (p + s) / 2, lo1 = (p - s) / 2;
  Matrix t0{{hi0, lo0, hi1, lo1}, {hi0, lo0, hi1, lo1}, {0, 0, 0, 0}, {0, 0, 0, 0}};
  Matrix t1{{0, 0, 0, 0}, {0, 0, 0, 0}, {hi1, lo1, hi0, lo0}, {hi1, lo1, hi0, lo0}};
  w.channel_matrices = {t0, t1};
  return w;
}

Machine wigner_as_machine(const WignerRepresentation& w, double tol) {
  std::vector<StateLabel> labels;
  for (std::size_t l = 0; l < 4; ++l) {
    auto [l1, l2] = w.phase_points[l];
    labels.push_back({"s" + std::to_string(l1) + "," + std::to_string(l2), std::size_t(l1), std::size_t(l2)});
  }
  // Already row convention: row = source phase point.
  Machine m = Machine::unchecked({"0", "1"}, labels, w.channel_matrices, w.state_quasi);
  auto bad = validate(m, tol);
  if (!bad.empty()) throw Error(Errc::StationaryMismatch, "Wigner machine: " + bad.front().to_string());
  return m;
}

FrameIdentityCheck wigner_frame_identities() {
  FrameIdentityCheck out;
  M2 total{};
  for (int l = 0; l < 4; ++l) {
    M2 a = phase_point(kPhasePoints[l][0], kPhasePoints[l][1]);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) total[i][j] += 0.5 * a[i][j];
    for (int r = 0; r < 4; ++r) {
      M2 b = phase_point(kPhasePoints[r][0], kPhasePoints[r][1]);
      double want = l == r ? 2.0 : 0.0;
      out.trace_orthogonality = std::max(out.trace_orthogonality, std::abs(tr(mul(a, b)) - want));
    }
  }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.resolution = std::max(out.resolution, std::abs(total[i][j] - C(i == j ? 1.0 : 0.0)));
  return out;
}

}  // namespace nmach
