#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "nmach/machine.hpp"
#include "nmach/quantum.hpp"

namespace nmach {

enum class MeasureName { Cmu_alpha, Cq2, Cq_vN, Cn2, Cg2, ExcessHalf, ExcessShannon, Negativity, Mana, Advantage };

const char* measure_name(MeasureName n);

struct MeasureReport {
  MeasureName name;
  double value = 0.0;  // bits
  std::map<std::string, double> parameters;
  double residual = 0.0;
};

// log base 2 throughout. Signed entries are allowed only for alpha = 2.
double renyi_entropy(const Vector& q, double alpha, double tol = kStructTol);
double collision_entropy(const Vector& q);  // -log sum q^2, no checks

// Sibson alpha-mutual information; py_given_x has one row per x.
double alpha_mutual_information(const Vector& px, const Matrix& py_given_x, double alpha,
                                double tol = 1e-9);
double shannon_mutual_information(const Matrix& joint);

// -log sum_w (sum_k weights_k sqrt(P(w|k)))^2 over words of exactly `length`.
// Weights may be signed; conditional futures must be nonnegative.
double state_half_information(const Machine& m, const Vector& weights, std::size_t length,
                              std::size_t cap = kDefaultEnumerationCap);

enum class EntropyRoute { Auto, Enumerate, UnifilarRecursion };

MeasureReport excess_entropy_half(const Machine& m, std::size_t horizon,
                                  EntropyRoute route = EntropyRoute::Auto,
                                  std::size_t cap = kDefaultEnumerationCap);
MeasureReport excess_entropy_shannon(const Machine& m, std::size_t horizon,
                                     std::size_t cap = kDefaultEnumerationCap);

enum class ClosedFormProcess { PerturbedCoin, SNS, Other };

struct ProcessRef {
  ClosedFormProcess kind = ClosedFormProcess::Other;
  double p = 0.5;
  std::size_t truncation = 0;  // SNS only; 0 picks the default
};

struct ClosedFormValue {
  double value = 0.0;
  double residual = 0.0;
};

ClosedFormValue excess_entropy_half_closed_form(const ProcessRef& process);

// M = sum_m (sum_n mu sqrt(phi(m+n) Phi(n)))^2 with m, n <= N; residual bounds the dropped tail.
ClosedFormValue sns_M(double p, std::size_t N);

MeasureReport statistical_complexity(const Machine& m, double alpha = 2.0);

double negativity(const Vector& q);
double mana(const Vector& q);
double memory_advantage(double c_n2, double c_mu2);

}  // namespace nmach
