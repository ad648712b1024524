#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "nmach/linalg.hpp"

namespace nmach {

enum class SweepProcess { PerturbedCoin, SNS, GoldenMean };

struct SweepConfig {
  SweepProcess process = SweepProcess::PerturbedCoin;
  std::vector<double> p_grid;
  std::size_t horizon = 12;
  std::size_t truncation = 0;  // SNS; 0 picks the smallest N with Phi(N+1) < 1e-12
  std::vector<std::string> outputs;  // empty: every column available for the process
  std::uint64_t seed = 0;
  std::string output_path;
  double golden_mean_q = 0.1;
};

struct SweepRow {
  double p = 0.0;
  std::map<std::string, double> values;
  std::string error;
};

struct SweepResult {
  std::vector<std::string> columns;  // starts with "p"
  std::vector<SweepRow> rows;
};

enum class Figure { Fig5, Fig7, Fig9, Fig10 };

SweepProcess parse_sweep_process(const std::string& name);
const char* sweep_process_name(SweepProcess p);
Figure parse_figure(const std::string& name);

std::vector<std::string> available_columns(SweepProcess p);
// Throws InvalidInput for unsorted grids, p = 1/2 on degenerate processes, unknown columns.
void validate_config(const SweepConfig& c);
std::vector<double> make_grid(double lo, double hi, double step, bool exclude_half);

SweepResult run_sweep(const SweepConfig& c);
SweepConfig reproduce_config(Figure f);
SweepConfig sweep_config_from_json(const nlohmann::json& j);

// 12 significant digits, '.' separator, NaN for failed cells.
std::string format_number(double v);
std::string format_csv(const SweepResult& r);
std::string format_error_log(const SweepResult& r);

double spearman(const Vector& a, const Vector& b);

}  // namespace nmach
