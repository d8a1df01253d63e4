#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "catknock/prior.hpp"
#include "catknock/rng.hpp"
#include "catknock/selection.hpp"
#include "catknock/suff_stats.hpp"

namespace catknock {

// Knockoff-filter simulation at configurable scale: sample X from the prior,
// build the linear response, draw repeated knockoff matrices, run the filter,
// and report mean FDR / power with Monte Carlo standard errors.

struct ExperimentConfig {
  int p = 30;
  int n = 300;
  int replicates = 200;  // knockoff draws per amplitude cell
  int support_size = 12;
  std::vector<double> amplitudes{3, 10, 20};
  std::string prior_json;  // prior spec (canonicalized on parse)
  double q = 0.1;
  std::string knockoff_method = "cik";  // or "gaussian"
  int m_cat = 1;
  std::uint64_t seed = 1;
  bool plus = true;
  // When set, support, coefficients, X and y are re-drawn for every
  // replicate instead of once per amplitude cell.
  bool redraw_per_replicate = false;

  void validate() const;
  static ExperimentConfig desk_scale();
  static ExperimentConfig paper_scale();
  static ExperimentConfig from_json_text(const std::string& text);
  std::string to_json_text() const;
};

struct AmplitudeCell {
  double amplitude = 0;
  int replicates = 0;
  double mean_fdr = 0, se_fdr = 0;
  double mean_power = 0, se_power = 0;
  std::vector<double> fdp, power;  // per replicate
  std::string error;               // set when the cell aborted
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<AmplitudeCell> cells;
  double wall_time_s = 0;
};

// Random support of the given size; beta_i = amplitude / sqrt(n) on it.
std::pair<std::vector<double>, std::vector<int>> gen_coefficients(
    int p, int support_size, double amplitude, int n, SeededRng rng);

// y_j = sum_i [2 b_i 1(X_ij=0) + b_i 1(X_ij=1) + (b_i/2) 1(X_ij=2)] + e_j
// with standard normal errors; codes must lie in {0,1,2}.
std::vector<double> gen_response(const CategoricalMatrix& X,
                                 std::span<const double> beta, SeededRng rng);

ExperimentReport run_simulation(const ExperimentConfig& config);

// Wall time is reported separately so the canonical report bytes are a pure
// function of the config.
std::string report_to_json_text(const ExperimentReport& report,
                                bool include_wall_time = false);
std::string report_to_csv_text(const ExperimentReport& report);

struct RealRunResult {
  std::vector<int> selected;
  std::vector<std::string> selected_names;
  std::vector<std::string> column_names;
  double threshold = 0;
  WStats w;
};

// Single-knockoff selection on an observed dataset (p code columns plus a
// numeric response column; no ground truth, so no FDR/power).
RealRunResult run_real(const std::string& csv_path, const ExperimentConfig& config);

}  // namespace catknock
