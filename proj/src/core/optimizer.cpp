#include "core/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "core/constants.hpp"
#include "core/dynamics.hpp"
#include "core/parallel.hpp"

namespace collapse {

namespace k = constants;

namespace {
constexpr double nan_d = std::numeric_limits<double>::quiet_NaN();
constexpr double inf_d = std::numeric_limits<double>::infinity();
}

OptimizeSpec::OptimizeSpec()
    : omega_lo(k::two_pi * 100.0), omega_hi(k::two_pi * 1e6) {}

OptimizeSpec::OptimizeSpec(const OptimizeBlock& block, const Scenario& base_config,
                           double pressure_Pa, double T_int_K)
    : pressure(pressure_Pa),
      T_int(T_int_K),
      ratio_threshold(block.ratio_threshold),
      horizon(block.horizon),
      n0(block.n0),
      R_lo(block.R_lo),
      R_hi(block.R_hi),
      omega_lo(block.omega_lo),
      omega_hi(block.omega_hi),
      lambda_lo(block.lambda_lo),
      lambda_hi(block.lambda_hi),
      grid_R(block.grid_R),
      grid_omega(block.grid_omega),
      base(base_config) {}

void OptimizeSpec::validate() const {
  require(pressure >= 0.0, "optimize.pressure must be >= 0");
  require(T_int >= 0.0, "optimize.T_int must be >= 0");
  require(ratio_threshold > 1.0, "optimize.ratio_threshold must be > 1");
  require(horizon > 0.0, "optimize.horizon must be > 0");
  require(n0 >= 0.0, "optimize.n0 must be >= 0");
  require(R_lo > 0.0 && R_lo <= R_hi, "optimize radius bounds must be positive and ordered");
  require(omega_lo > 0.0 && omega_lo <= omega_hi,
          "optimize omega bounds must be positive and ordered");
  require(lambda_lo > 0.0 && lambda_lo < lambda_hi,
          "optimize lambda bracket must be positive and ordered");
  require(grid_R >= 2 && grid_omega >= 2, "optimize grid must be >= 2 points per axis");
  base.validate();
}

double ratio_statistic(const Scenario& config, double lambda) {
  require(lambda >= 0.0, "ratio_statistic: lambda must be >= 0");
  const NoiseBudget with = config.budget_with_lambda(lambda);
  const NoiseBudget without = config.budget_with_lambda(0.0);
  const double w = config.trap.omega_m;
  const double n_csl =
      phonon_closed_form(config.n0, EvolutionParams::from_budget(with, w), config.t_evolve);
  const double n_cqm =
      phonon_closed_form(config.n0, EvolutionParams::from_budget(without, w), config.t_evolve);
  require(n_cqm > 0.0, "ratio_statistic: baseline occupation is zero");
  return n_csl / n_cqm;
}

MinLambdaResult min_lambda_at_geometry(const Scenario& config, const OptimizeSpec& spec) {
  double lo = spec.lambda_lo, hi = spec.lambda_hi;
  const double mid0 = std::sqrt(lo * hi);
  const double r_lo = ratio_statistic(config, lo);
  const double r_mid = ratio_statistic(config, mid0);
  const double r_hi = ratio_statistic(config, hi);
  // The bisection leans on monotonicity in lambda; probe it.
  if (r_lo > r_mid * (1.0 + 1e-12) || r_mid > r_hi * (1.0 + 1e-12))
    throw std::runtime_error(
        "min_lambda_at_geometry: ratio_statistic is not monotone in lambda");

  if (r_hi < spec.ratio_threshold) return {nan_d, r_hi, false};
  if (r_lo >= spec.ratio_threshold) return {lo, r_lo, true};

  // Reuse the probe midpoint as the first split.
  double r_top = r_hi;
  if (r_mid >= spec.ratio_threshold) {
    hi = mid0;
    r_top = r_mid;
  } else {
    lo = mid0;
  }
  while (hi / lo > 1.0 + 1e-3) {
    const double mid = std::sqrt(lo * hi);
    const double r = ratio_statistic(config, mid);
    if (r >= spec.ratio_threshold) {
      hi = mid;
      r_top = r;
    } else {
      lo = mid;
    }
  }
  return {hi, r_top, true};
}

namespace {

struct GeometryObjective {
  const OptimizeSpec& spec;
  Scenario work; // pressure/T_int/horizon/n0 already applied

  // Track the best full result seen across every evaluation.
  double best_f = inf_d;
  MinLambdaResult best_inner{};
  double best_R = 0.0, best_w = 0.0;
  // Best infeasible geometry, reported when nothing converges.
  double top_ratio = -inf_d;
  double top_R = 0.0, top_w = 0.0;

  explicit GeometryObjective(const OptimizeSpec& s) : spec(s), work(s.base) {
    work.environment.pressure = s.pressure;
    work.environment.T_int = s.T_int;
    work.t_evolve = s.horizon;
    work.n0 = s.n0;
  }

  // u = log R, v = log omega, clamped to bounds. Objective: log lambda_min.
  double eval(double u, double v) {
    const double R = std::exp(std::clamp(u, std::log(spec.R_lo), std::log(spec.R_hi)));
    const double w = std::exp(std::clamp(v, std::log(spec.omega_lo), std::log(spec.omega_hi)));
    work.sphere.radius = R;
    work.trap.omega_m = w;
    const MinLambdaResult inner = min_lambda_at_geometry(work, spec);
    if (!inner.converged) {
      if (inner.achieved_ratio > top_ratio) {
        top_ratio = inner.achieved_ratio;
        top_R = R;
        top_w = w;
      }
      return inf_d;
    }
    const double f = std::log(inner.lambda);
    if (f < best_f) {
      best_f = f;
      best_inner = inner;
      best_R = R;
      best_w = w;
    }
    return f;
  }
};

}  // namespace

TestableBound min_testable_lambda(const OptimizeSpec& spec) {
  spec.validate();
  GeometryObjective obj(spec);

  // Coarse log grid, endpoints included.
  const auto R_grid = make_grid({spec.R_lo, spec.R_hi, spec.grid_R, true});
  const auto w_grid = make_grid({spec.omega_lo, spec.omega_hi, spec.grid_omega, true});
  double seed_u = 0.0, seed_v = 0.0, seed_f = inf_d;
  for (double R : R_grid) {
    for (double w : w_grid) {
      const double u = std::log(R), v = std::log(w);
      const double f = obj.eval(u, v);
      if (f < seed_f) {
        seed_f = f;
        seed_u = u;
        seed_v = v;
      }
    }
  }

  if (std::isfinite(seed_f)) {
    // Downhill simplex in log coordinates from the best grid cell; initial
    // size half a grid spacing per axis.
    const double du = 0.5 * (std::log(spec.R_hi) - std::log(spec.R_lo)) / (spec.grid_R - 1);
    const double dv =
        0.5 * (std::log(spec.omega_hi) - std::log(spec.omega_lo)) / (spec.grid_omega - 1);
    std::array<std::array<double, 2>, 3> x = {{{seed_u, seed_v},
                                               {seed_u + std::max(du, 1e-6), seed_v},
                                               {seed_u, seed_v + std::max(dv, 1e-6)}}};
    std::array<double, 3> f;
    for (int i = 0; i < 3; ++i) f[i] = obj.eval(x[i][0], x[i][1]);

    for (int iter = 0; iter < 200; ++iter) {
      std::array<int, 3> order = {0, 1, 2};
      std::sort(order.begin(), order.end(), [&](int a, int b) { return f[a] < f[b]; });
      const auto &xb = x[order[0]], &xs = x[order[1]];
      auto &xw = x[order[2]];
      const double diameter =
          std::max(std::max(std::abs(x[0][0] - x[1][0]) + std::abs(x[0][1] - x[1][1]),
                            std::abs(x[0][0] - x[2][0]) + std::abs(x[0][1] - x[2][1])),
                   std::abs(x[1][0] - x[2][0]) + std::abs(x[1][1] - x[2][1]));
      if (diameter < 1e-3) break;

      const double cu = (xb[0] + xs[0]) / 2.0, cv = (xb[1] + xs[1]) / 2.0;
      auto try_point = [&](double scale) {
        return std::array<double, 2>{cu + scale * (cu - xw[0]), cv + scale * (cv - xw[1])};
      };
      const auto xr = try_point(1.0); // reflect
      const double fr = obj.eval(xr[0], xr[1]);
      if (fr < f[order[0]]) {
        const auto xe = try_point(2.0); // expand
        const double fe = obj.eval(xe[0], xe[1]);
        if (fe < fr) {
          xw = xe;
          f[order[2]] = fe;
        } else {
          xw = xr;
          f[order[2]] = fr;
        }
      } else if (fr < f[order[1]]) {
        xw = xr;
        f[order[2]] = fr;
      } else {
        const auto xc = try_point(-0.5); // contract
        const double fc = obj.eval(xc[0], xc[1]);
        if (fc < f[order[2]]) {
          xw = xc;
          f[order[2]] = fc;
        } else { // shrink toward the best vertex
          for (int i : {order[1], order[2]}) {
            x[i][0] = (x[i][0] + xb[0]) / 2.0;
            x[i][1] = (x[i][1] + xb[1]) / 2.0;
            f[i] = obj.eval(x[i][0], x[i][1]);
          }
        }
      }
    }
  }

  TestableBound bound;
  if (std::isfinite(obj.best_f)) {
    bound.lambda_min = obj.best_inner.lambda;
    bound.best_R = obj.best_R;
    bound.best_omega = obj.best_w;
    bound.achieved_ratio = obj.best_inner.achieved_ratio;
    bound.converged = true;
  } else {
    bound.lambda_min = nan_d;
    bound.best_R = obj.top_R;
    bound.best_omega = obj.top_w;
    bound.achieved_ratio = obj.top_ratio;
    bound.converged = false;
  }
  return bound;
}

std::vector<CurvePoint> testable_range_curve(const OptimizeBlock& block,
                                             const Scenario& base, int threads) {
  block.validate();
  base.validate();
  const int np = static_cast<int>(block.pressures.size());
  const int nt = static_cast<int>(block.T_ints.size());
  std::vector<CurvePoint> out(static_cast<std::size_t>(np * nt));
  parallel_for(np * nt, threads, [&](int idx) {
    const int ip = idx / nt, it = idx % nt;
    CurvePoint& cell = out[static_cast<std::size_t>(idx)];
    cell.pressure = block.pressures[static_cast<std::size_t>(ip)];
    cell.T_int = block.T_ints[static_cast<std::size_t>(it)];
    OptimizeSpec spec(block, base, cell.pressure, cell.T_int);
    cell.bound = min_testable_lambda(spec);
  });
  return out;
}

}  // namespace collapse
