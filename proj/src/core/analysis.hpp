#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/dynamics.hpp"
#include "core/scenario.hpp"

namespace collapse {

struct SweepSpec {
  SweepAxis axis = SweepAxis::pressure;
  GridSpec grid;
  Scenario base;

  void validate() const {
    grid.validate("sweep");
    base.validate();
  }
};

struct SweepRow {
  double axis_value = 0.0; // internal units (Pa, K, rad/s, m, 1/s, s)
  double n_csl = 0.0;      // phonons at t_evolve with the base lambda
  double n_cqm = 0.0;      // phonons at t_evolve with lambda = 0
  double ratio = 0.0;
  NoiseBudget budget_csl;
  NoiseBudget budget_cqm;
  std::string error;       // per-point failure; never aborts the sweep
};

// Evaluate n(t_evolve) with and without collapse diffusion on the grid.
// Points are independent; rows come back in grid order.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads = 0);

// One closed-form trajectory per lambda value over the same time grid.
std::vector<Trajectory> heating_comparison(const Scenario& config,
                                           const std::vector<double>& lambda_values,
                                           const std::vector<double>& t_grid);

struct AxisInterval {
  bool empty = true;
  double lo = 0.0, hi = 0.0; // axis values (internal units)
  int first = -1, last = -1; // row indices
};

// Maximal contiguous run of rows where the local log-log slope of n_csl
// stays below the threshold in magnitude (centered differences inside,
// one-sided at the ends). Rows must be sorted by axis value.
AxisInterval immunity_region(const std::vector<SweepRow>& rows,
                             double sensitivity_threshold = 0.1);

struct DiscriminationReport {
  double log_likelihood_ratio = 0.0;
  double p_value = 1.0;
  int sample_count = 0;
  std::uint64_t seed = 0;
  int mc_trials = 0;
};

// Log-likelihood ratio of Bose-Einstein occupation models with means
// mean_H1 vs mean_H0 on integer samples; p-value by Monte-Carlo resampling
// under H0. Trials are partitioned into fixed chunks with per-chunk sub-seeds,
// so the result is independent of the worker count.
DiscriminationReport likelihood_ratio_test(const std::vector<long long>& samples,
                                           double mean_H0, double mean_H1,
                                           int mc_trials, std::uint64_t seed,
                                           int threads = 0);

}  // namespace collapse
