#pragma once

#include <vector>

#include "core/scenario.hpp"

namespace collapse {

// One optimization cell: find the smallest detectable collapse rate at fixed
// pressure and internal temperature, with the sphere radius and trap
// frequency free within bounds.
struct OptimizeSpec {
  double pressure = 1e-9; // Pa
  double T_int = 60.0;    // K
  double ratio_threshold = 1.2;
  double horizon = 100.0; // s
  double n0 = 50.0;
  double R_lo = 5e-9, R_hi = 1e-6;   // m
  double omega_lo = 0.0, omega_hi = 0.0; // rad/s (defaults 2*pi*[100 Hz, 1 MHz])
  double lambda_lo = 1e-16, lambda_hi = 1e-4; // 1/s
  int grid_R = 16, grid_omega = 16;
  Scenario base;

  OptimizeSpec();
  OptimizeSpec(const OptimizeBlock& block, const Scenario& base_config,
               double pressure_Pa, double T_int_K);
  void validate() const;
};

struct TestableBound {
  double lambda_min = 0.0;     // 1/s; NaN when not converged
  double best_R = 0.0;         // m
  double best_omega = 0.0;     // rad/s
  double achieved_ratio = 0.0; // at (lambda_min, best_R, best_omega)
  bool converged = false;
};

struct CurvePoint {
  double pressure = 0.0; // Pa
  double T_int = 0.0;    // K
  TestableBound bound;
};

// n(horizon) with the lambda budget over n(horizon) with lambda = 0; strictly
// increasing in lambda. Uses config.n0 and config.t_evolve as the horizon.
double ratio_statistic(const Scenario& config, double lambda);

struct MinLambdaResult {
  double lambda = 0.0;         // NaN when the bracket top misses the threshold
  double achieved_ratio = 0.0; // ratio at `lambda` (bracket top if not converged)
  bool converged = false;
};

// Bisection on lambda (log midpoints) to relative width 1e-3; returns the
// smallest lambda whose ratio meets spec.ratio_threshold. A three-point
// monotonicity probe of the ratio precedes every bisection.
MinLambdaResult min_lambda_at_geometry(const Scenario& config, const OptimizeSpec& spec);

// Outer geometry search: coarse log grid over (R, omega), then downhill
// simplex refinement in (log R, log omega) with bound clamping. Deterministic;
// the refined optimum is never worse than the best grid cell.
TestableBound min_testable_lambda(const OptimizeSpec& spec);

// One bound per (pressure, T_int) pair, in grid order (pressures outer,
// temperatures inner). Cells are independent and run in parallel.
std::vector<CurvePoint> testable_range_curve(const OptimizeBlock& block,
                                             const Scenario& base, int threads = 0);

}  // namespace collapse
