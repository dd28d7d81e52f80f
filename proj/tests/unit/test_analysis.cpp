#include <cmath>

#include "core/analysis.hpp"
#include "doctest.h"

using namespace collapse;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

SweepSpec pressure_sweep(double lambda) {
  const ScenarioDoc doc = make_preset("fig3a");
  REQUIRE(doc.sweep.has_value());
  SweepSpec spec;
  spec.axis = doc.sweep->axis;
  spec.grid = doc.sweep->grid;
  spec.base = doc.scenario;
  spec.base.csl.lambda_csl = lambda;
  return spec;
}

std::vector<SweepRow> flat_rows(int n, double level) {
  std::vector<SweepRow> rows(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    rows[static_cast<std::size_t>(i)].axis_value = std::pow(10.0, i);
    rows[static_cast<std::size_t>(i)].n_csl = level;
  }
  return rows;
}

}  // namespace

TEST_CASE("pressure sweep: grid order, dominance, totals") {
  const SweepSpec spec = pressure_sweep(1e-8);
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 40);

  double prev_axis = 0.0;
  double prev_cqm = 0.0;
  for (const SweepRow& row : rows) {
    CHECK(row.error.empty());
    CHECK(row.axis_value > prev_axis);
    prev_axis = row.axis_value;

    // Collapse heating can only add phonons.
    CHECK(row.n_csl >= row.n_cqm);
    CHECK(row.ratio == doctest::Approx(row.n_csl / row.n_cqm).epsilon(1e-15));
    CHECK(row.budget_csl.D_csl > 0.0);
    CHECK(row.budget_cqm.D_csl == 0.0);

    // More gas pressure, more conventional heating.
    CHECK(row.n_cqm > prev_cqm);
    prev_cqm = row.n_cqm;
  }

  CHECK(rows.front().axis_value == 1e-11);
  CHECK(rows.back().axis_value == 1e-4);

  // Worker count must not change anything.
  const auto rows4 = run_sweep(spec, 4);
  REQUIRE(rows4.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows4[i].n_csl == rows[i].n_csl);
    CHECK(rows4[i].n_cqm == rows[i].n_cqm);
  }
}

TEST_CASE("pressure sweep: per-row failures are data") {
  SweepSpec spec = pressure_sweep(1e-8);
  spec.axis = SweepAxis::t_evolve;
  spec.grid = {-0.5, 0.5, 3, false};
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 3);
  CHECK(!rows[0].error.empty());
  CHECK(std::isnan(rows[0].n_csl));
  CHECK(rows[1].error.empty());  // t = 0
  CHECK(rows[1].n_csl == 50.0);
  CHECK(rows[2].error.empty());
}

TEST_CASE("immunity region: reference pressure sweep") {
  const auto rows_csl = run_sweep(pressure_sweep(1e-8));
  const AxisInterval with_csl = immunity_region(rows_csl, 0.1);
  REQUIRE(!with_csl.empty);
  CHECK(with_csl.first == 0);
  CHECK(with_csl.last == 26);
  CHECK(with_csl.lo == 1e-11);
  CHECK(rel(with_csl.hi, 4.641588833612782e-7) < 1e-9);

  const auto rows_cqm = run_sweep(pressure_sweep(0.0));
  const AxisInterval no_csl = immunity_region(rows_cqm, 0.1);
  REQUIRE(!no_csl.empty);
  CHECK(no_csl.first == 0);
  CHECK(no_csl.last == 20);
  CHECK(rel(no_csl.hi, 3.888155180308085e-8) < 1e-9);

  // The collapse signal hides the pressure dependence over a longer span.
  CHECK(with_csl.last - with_csl.first > no_csl.last - no_csl.first);
}

TEST_CASE("immunity region: synthetic rows") {
  // Perfectly flat response: the whole axis qualifies.
  const auto flat = flat_rows(8, 123.0);
  const AxisInterval all = immunity_region(flat, 0.1);
  REQUIRE(!all.empty);
  CHECK(all.first == 0);
  CHECK(all.last == 7);

  // Steep power law n ~ x: nothing qualifies at threshold 0.1.
  auto steep = flat_rows(8, 1.0);
  for (std::size_t i = 0; i < steep.size(); ++i)
    steep[i].n_csl = steep[i].axis_value;
  CHECK(immunity_region(steep, 0.1).empty);
  // ... but a threshold above the slope admits everything.
  CHECK(!immunity_region(steep, 1.5).empty);

  // Error rows are disqualified; the longer remaining run wins.
  auto holed = flat_rows(8, 123.0);
  holed[3].error = "boom";
  const AxisInterval split = immunity_region(holed, 0.1);
  REQUIRE(!split.empty);
  CHECK(split.first == 4);  // runs are 0-2 and 4-7
  CHECK(split.last == 7);

  // A zero value poisons its neighbours' slopes, leaving the equal runs
  // 0-1 and 5-6; ties resolve to the first.
  auto first_wins = flat_rows(7, 123.0);
  first_wins[3].n_csl = 0.0;
  const AxisInterval tie = immunity_region(first_wins, 0.1);
  REQUIRE(!tie.empty);
  CHECK(tie.first == 0);
  CHECK(tie.last == 1);

  // Input checking.
  CHECK_THROWS_AS(immunity_region(flat_rows(2, 1.0), 0.1), validation_error);
  CHECK_THROWS_AS(immunity_region(flat, 0.0), validation_error);
  auto unsorted = flat_rows(5, 1.0);
  std::swap(unsorted[1].axis_value, unsorted[2].axis_value);
  CHECK_THROWS_AS(immunity_region(unsorted, 0.1), validation_error);
}

TEST_CASE("heating comparison") {
  const ScenarioDoc doc = make_preset("fig2");
  const std::vector<double> lambdas{0.0, 1e-9, 1e-8};
  const std::vector<double> times{0.1, 0.5, 1.0};
  const auto trajs = heating_comparison(doc.scenario, lambdas, times);
  REQUIRE(trajs.size() == 3);
  for (const Trajectory& t : trajs) REQUIRE(t.times == times);

  // Occupation grows with lambda at every sampled time.
  for (std::size_t ti = 0; ti < times.size(); ++ti) {
    CHECK(trajs[0].mean_n[ti] < trajs[1].mean_n[ti]);
    CHECK(trajs[1].mean_n[ti] < trajs[2].mean_n[ti]);
  }

  CHECK_THROWS_AS(heating_comparison(doc.scenario, {}, times), validation_error);
  CHECK_THROWS_AS(heating_comparison(doc.scenario, lambdas, {0.5, 0.5}),
                  validation_error);
  CHECK_THROWS_AS(heating_comparison(doc.scenario, {-1e-9}, times),
                  validation_error);
}

TEST_CASE("likelihood ratio test: determinism and thread invariance") {
  const auto samples = sample_final_phonons(100.0, 100, 555);
  const auto a = likelihood_ratio_test(samples, 50.0, 100.0, 2000, 99, 1);
  const auto b = likelihood_ratio_test(samples, 50.0, 100.0, 2000, 99, 4);
  CHECK(a.log_likelihood_ratio == b.log_likelihood_ratio);
  CHECK(a.p_value == b.p_value);
  CHECK(a.sample_count == 100);
  CHECK(a.mc_trials == 2000);
  CHECK(a.seed == 99);

  CHECK(a.p_value > 0.0);
  CHECK(a.p_value <= 1.0);
}

TEST_CASE("likelihood ratio test: separated models are detected") {
  // Data drawn under H1 with twice the H0 mean: strong evidence.
  const auto samples = sample_final_phonons(100.0, 100, 2026);
  const auto rep = likelihood_ratio_test(samples, 50.0, 100.0, 4000, 7);
  CHECK(rep.log_likelihood_ratio > 0.0);
  CHECK(rep.p_value < 0.05);

  // Identical models carry no evidence: the LLR is exactly 0 and every
  // resampled trial ties it.
  const auto null = likelihood_ratio_test(samples, 100.0, 100.0, 500, 7);
  CHECK(null.log_likelihood_ratio == 0.0);
  CHECK(null.p_value == 1.0);
}

TEST_CASE("likelihood ratio test: degenerate means") {
  // All-zero data with a zero-mean H1 is a perfect fit.
  const std::vector<long long> zeros{0, 0, 0, 0};
  const auto rep = likelihood_ratio_test(zeros, 5.0, 0.0, 300, 11);
  CHECK(rep.log_likelihood_ratio > 0.0);
  // Any H0 trial drawing a nonzero sum scores -inf < llr, so p stays small.
  CHECK(rep.p_value < 0.05);

  CHECK_THROWS_AS(likelihood_ratio_test({}, 1.0, 2.0, 100, 1), validation_error);
  CHECK_THROWS_AS(likelihood_ratio_test({-1}, 1.0, 2.0, 100, 1), validation_error);
  CHECK_THROWS_AS(likelihood_ratio_test({1}, 0.0, 0.0, 100, 1), validation_error);
  CHECK_THROWS_AS(likelihood_ratio_test(zeros, 1.0, 2.0, 0, 1), validation_error);
}
