#include "core/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include "core/parallel.hpp"
#include "core/rng.hpp"

namespace collapse {

namespace {
constexpr double nan_d = std::numeric_limits<double>::quiet_NaN();
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads) {
  spec.validate();
  const std::vector<double> grid = make_grid(spec.grid);
  std::vector<SweepRow> rows(grid.size());

  parallel_for(static_cast<int>(grid.size()), threads, [&](int i) {
    SweepRow& row = rows[static_cast<std::size_t>(i)];
    row.axis_value = grid[static_cast<std::size_t>(i)];
    try {
      Scenario s = spec.base;
      apply_axis(s, spec.axis, row.axis_value);
      row.budget_csl = s.budget();
      row.budget_cqm = s.budget_with_lambda(0.0);
      const double w = s.trap.omega_m;
      row.n_csl = phonon_closed_form(
          s.n0, EvolutionParams::from_budget(row.budget_csl, w), s.t_evolve);
      row.n_cqm = phonon_closed_form(
          s.n0, EvolutionParams::from_budget(row.budget_cqm, w), s.t_evolve);
      row.ratio = row.n_cqm > 0.0 ? row.n_csl / row.n_cqm : nan_d;
    } catch (const std::exception& e) {
      row.error = e.what();
      row.n_csl = row.n_cqm = row.ratio = nan_d;
    }
  });
  return rows;
}

std::vector<Trajectory> heating_comparison(const Scenario& config,
                                           const std::vector<double>& lambda_values,
                                           const std::vector<double>& t_grid) {
  config.validate();
  require(!lambda_values.empty(), "heating_comparison: no lambda values");
  require(!t_grid.empty(), "heating_comparison: empty time grid");
  double prev = -1.0;
  for (double t : t_grid) {
    require(t >= 0.0, "heating_comparison: times must be >= 0");
    require(t > prev, "heating_comparison: times must be strictly increasing");
    prev = t;
  }

  std::vector<Trajectory> out;
  out.reserve(lambda_values.size());
  for (double lambda : lambda_values) {
    require(lambda >= 0.0, "heating_comparison: lambda must be >= 0");
    const NoiseBudget b = config.budget_with_lambda(lambda);
    const EvolutionParams p = EvolutionParams::from_budget(b, config.trap.omega_m);
    Trajectory traj;
    traj.times = t_grid;
    traj.mean_n.reserve(t_grid.size());
    for (double t : t_grid) traj.mean_n.push_back(phonon_closed_form(config.n0, p, t));
    out.push_back(std::move(traj));
  }
  return out;
}

AxisInterval immunity_region(const std::vector<SweepRow>& rows,
                             double sensitivity_threshold) {
  require(rows.size() >= 3, "immunity_region: need at least 3 rows");
  require(sensitivity_threshold > 0.0, "immunity_region: threshold must be > 0");
  const int n = static_cast<int>(rows.size());
  for (int i = 1; i < n; ++i)
    require(rows[i].axis_value > rows[i - 1].axis_value,
            "immunity_region: rows must be sorted by axis value");

  // Local log-log slope of n_csl; rows with unusable values never qualify.
  auto lg = [&](int i) { return std::log(rows[static_cast<std::size_t>(i)].n_csl); };
  auto lx = [&](int i) { return std::log(rows[static_cast<std::size_t>(i)].axis_value); };
  std::vector<bool> ok(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const SweepRow& r = rows[static_cast<std::size_t>(i)];
    if (!(r.n_csl > 0.0) || !(r.axis_value > 0.0) || !r.error.empty()) continue;
    const int a = i == 0 ? 0 : i - 1;
    const int b = i == n - 1 ? n - 1 : i + 1;
    const double slope = (lg(b) - lg(a)) / (lx(b) - lx(a));
    ok[static_cast<std::size_t>(i)] = std::abs(slope) < sensitivity_threshold;
  }

  int best_first = -1, best_len = 0;
  int run_first = -1, run_len = 0;
  for (int i = 0; i < n; ++i) {
    if (ok[static_cast<std::size_t>(i)]) {
      if (run_len == 0) run_first = i;
      if (++run_len > best_len) {
        best_len = run_len;
        best_first = run_first;
      }
    } else {
      run_len = 0;
    }
  }

  AxisInterval out;
  if (best_len == 0) return out;
  out.empty = false;
  out.first = best_first;
  out.last = best_first + best_len - 1;
  out.lo = rows[static_cast<std::size_t>(out.first)].axis_value;
  out.hi = rows[static_cast<std::size_t>(out.last)].axis_value;
  return out;
}

namespace {

// log P(n) for the geometric occupation law with the given mean.
double log_geometric(long long n, double mean) {
  if (mean == 0.0)
    return n == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  return -std::log1p(mean) +
         static_cast<double>(n) * (std::log(mean) - std::log1p(mean));
}

}  // namespace

DiscriminationReport likelihood_ratio_test(const std::vector<long long>& samples,
                                           double mean_H0, double mean_H1,
                                           int mc_trials, std::uint64_t seed,
                                           int threads) {
  require(!samples.empty(), "likelihood_ratio_test: samples must be nonempty");
  require(mean_H0 >= 0.0, "likelihood_ratio_test: mean_H0 must be >= 0");
  require(mean_H1 >= 0.0, "likelihood_ratio_test: mean_H1 must be >= 0");
  require(mc_trials >= 1, "likelihood_ratio_test: mc_trials must be >= 1");
  for (long long s : samples) {
    require(s >= 0, "likelihood_ratio_test: samples must be >= 0");
    if (mean_H0 == 0.0 && mean_H1 == 0.0)
      require(s == 0,
              "likelihood_ratio_test: nonzero sample impossible under both models");
  }

  const int count = static_cast<int>(samples.size());
  double llr = 0.0;
  for (long long s : samples)
    llr += log_geometric(s, mean_H1) - log_geometric(s, mean_H0);

  // The LLR is affine in the sample sum: N*dA + sum*dB.
  const double dA = (mean_H1 == 0.0 ? 0.0 : -std::log1p(mean_H1)) -
                    (mean_H0 == 0.0 ? 0.0 : -std::log1p(mean_H0));
  const double dB =
      (mean_H1 == 0.0 ? 0.0 : std::log(mean_H1) - std::log1p(mean_H1)) -
      (mean_H0 == 0.0 ? 0.0 : std::log(mean_H0) - std::log1p(mean_H0));

  auto llr_from_sum = [&](long long sum) {
    // A nonzero draw is impossible under a zero-mean model.
    if (mean_H1 == 0.0 && sum > 0)
      return -std::numeric_limits<double>::infinity();
    return count * dA + static_cast<double>(sum) * dB;
  };

  // Fixed-size trial chunks with per-chunk sub-seeds keep the p-value
  // independent of the worker count.
  constexpr int chunk_size = 256;
  const int chunks = (mc_trials + chunk_size - 1) / chunk_size;
  std::atomic<long long> ge_count{0};
  parallel_for(chunks, threads, [&](int c) {
    const int begin = c * chunk_size;
    const int end = std::min(begin + chunk_size, mc_trials);
    Rng rng(sub_seed(seed, static_cast<std::uint64_t>(c)));
    long long local = 0;
    for (int trial = begin; trial < end; ++trial) {
      long long sum = 0;
      for (int i = 0; i < count; ++i) sum += rng.bose_einstein(mean_H0);
      if (llr_from_sum(sum) >= llr) ++local;
    }
    ge_count += local;
  });

  DiscriminationReport report;
  report.log_likelihood_ratio = llr;
  report.p_value = (static_cast<double>(ge_count.load()) + 1.0) /
                   (static_cast<double>(mc_trials) + 1.0);
  report.sample_count = count;
  report.seed = seed;
  report.mc_trials = mc_trials;
  return report;
}

}  // namespace collapse
