#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "nmach/machine.hpp"

namespace nmach {

struct GramEnsemble {
  Vector weights;    // pi
  Matrix overlaps;   // G[j][k] = <sigma_j|sigma_k>
  double residual = 0.0;
  std::size_t horizon = 0;
};

enum class GramRoute { Auto, Enumerate, UnifilarRecursion };

struct GramOptions {
  GramRoute route = GramRoute::Auto;
  double converge_tol = INFINITY;  // NotConverged above this residual
  std::size_t cap = kDefaultEnumerationCap;
};

// Overlaps of conditional futures at exactly `horizon` symbols, together with the
// horizon-1 matrix used for the residual.
struct OverlapPair {
  Matrix at_horizon;
  Matrix previous;
};
OverlapPair future_overlaps(const Machine& m, std::size_t horizon, GramRoute route,
                            std::size_t cap = kDefaultEnumerationCap);

GramEnsemble gram_from_machine(const Machine& m, std::size_t horizon, const GramOptions& opts = {});

enum class QuantumOrder { Renyi2, VonNeumann, Topological };

// Spectrum of D^{1/2} G D^{1/2}, D = diag(weights).
Vector ensemble_spectrum(const GramEnsemble& g, double tol = 1e-10);
double quantum_complexity(const GramEnsemble& g, QuantumOrder order, double tol = 1e-10);

struct UnitaryReport {
  double max_residual = 0.0;     // isometry condition
  double embedding_error = 0.0;  // |V^T V - G|
  std::size_t rank = 0;
  std::size_t horizon = 0;
};
UnitaryReport validate_unitary_relation(const Machine& m, std::size_t horizon = 128,
                                        double tol = 1e-8);

// SNS q-machine ensemble over sigma_0..sigma_N:
// G[m][n] = sum_k sqrt(phi(m+k) phi(n+k)) / sqrt(Phi(m) Phi(n)), weights mu Phi(n).
GramEnsemble sns_quantum_gram(double p, std::size_t N);

struct WignerRepresentation {
  std::array<std::array<int, 2>, 4> phase_points{};  // (lambda1, lambda2)
  Vector state_quasi;                          // mu^rho
  std::vector<Matrix> channel_matrices;        // per symbol; row = source phase point
};

// Built from phase-point operators, frame F = A/2 and dual G = A.
WignerRepresentation wigner_qubit_representation(double p);
// The closed forms in chi_pm = p +- sqrt(p(1-p)).
WignerRepresentation wigner_closed_form(double p);
Machine wigner_as_machine(const WignerRepresentation& w, double tol = 1e-9);

struct FrameIdentityCheck {
  double trace_orthogonality = 0.0;  // max |tr(A_l A_l') - 2 delta|
  double resolution = 0.0;           // max |sum_l A_l / 2 - I|
};
FrameIdentityCheck wigner_frame_identities();

}  // namespace nmach
