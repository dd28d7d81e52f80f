#include "collapse_budget.h"

#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "core/analysis.hpp"
#include "core/cooling.hpp"
#include "core/csv.hpp"
#include "core/dynamics.hpp"
#include "core/manifest.hpp"
#include "core/optimizer.hpp"
#include "core/scenario.hpp"
#include "core/version.hpp"

struct cb_scenario {
  collapse::ScenarioDoc doc;
};

struct cb_trajectory {
  collapse::Trajectory traj;
};

struct cb_sweep {
  std::string axis;
  std::vector<collapse::SweepRow> rows;
};

namespace {

thread_local std::string t_last_error;

template <typename F>
cb_status guarded(F&& f) {
  try {
    f();
    return CB_OK;
  } catch (const collapse::validation_error& e) {
    t_last_error = e.what();
    return CB_ERR_INVALID_ARGUMENT;
  } catch (const collapse::parse_failure& e) {
    t_last_error = e.what();
    return CB_ERR_PARSE;
  } catch (const collapse::io_error& e) {
    t_last_error = e.what();
    return CB_ERR_IO;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return CB_ERR_INTERNAL;
  } catch (...) {
    t_last_error = "unknown failure";
    return CB_ERR_INTERNAL;
  }
}

cb_status invalid(const char* msg) {
  t_last_error = msg;
  return CB_ERR_INVALID_ARGUMENT;
}

cb_budget to_c(const collapse::NoiseBudget& b) {
  return {b.D_gas,      b.D_bb,       b.D_csl,      b.D_efield,    b.D_pos,
          b.gamma_gas,  b.gamma_bb_e, b.gamma_bb_a, b.Gamma_total, b.D_diff_total};
}

collapse::OptimizeBlock to_block(const cb_optimize_spec& spec) {
  collapse::OptimizeBlock block;
  block.ratio_threshold = spec.ratio_threshold;
  block.horizon = spec.horizon_s;
  block.n0 = spec.n0;
  block.R_lo = spec.R_lo_m;
  block.R_hi = spec.R_hi_m;
  block.omega_lo = spec.omega_lo_rad_s;
  block.omega_hi = spec.omega_hi_rad_s;
  block.lambda_lo = spec.lambda_lo_hz;
  block.lambda_hi = spec.lambda_hi_hz;
  block.grid_R = spec.grid_R;
  block.grid_omega = spec.grid_omega;
  return block;
}

cb_optimize_spec to_c_spec(const collapse::OptimizeBlock& block) {
  return {block.ratio_threshold, block.horizon,   block.n0,
          block.R_lo,            block.R_hi,      block.omega_lo,
          block.omega_hi,        block.lambda_lo, block.lambda_hi,
          block.grid_R,          block.grid_omega};
}

std::vector<collapse::CurvePoint> to_points(const cb_bound* rows, int count) {
  std::vector<collapse::CurvePoint> points(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const cb_bound& r = rows[i];
    auto& p = points[static_cast<std::size_t>(i)];
    p.pressure = r.pressure_Pa;
    p.T_int = r.T_int_K;
    p.bound = {r.lambda_min_hz, r.best_R_m, r.best_omega_rad_s, r.achieved_ratio,
               r.converged != 0};
  }
  return points;
}

}  // namespace

const char* cb_version(void) { return collapse::tool_version; }

const char* cb_last_error(void) { return t_last_error.c_str(); }

cb_status cb_scenario_preset(const char* name, cb_scenario** out) {
  if (!name || !out) return invalid("cb_scenario_preset: NULL argument");
  return guarded([&] { *out = new cb_scenario{collapse::make_preset(name)}; });
}

cb_status cb_scenario_load(const char* path, cb_scenario** out) {
  if (!path || !out) return invalid("cb_scenario_load: NULL argument");
  return guarded([&] { *out = new cb_scenario{collapse::load_config(path)}; });
}

cb_status cb_scenario_parse(const char* json_text, cb_scenario** out) {
  if (!json_text || !out) return invalid("cb_scenario_parse: NULL argument");
  return guarded([&] { *out = new cb_scenario{collapse::parse_config(json_text)}; });
}

void cb_scenario_free(cb_scenario* s) { delete s; }

cb_status cb_scenario_serialize(const cb_scenario* s, char** out_json) {
  if (!s || !out_json) return invalid("cb_scenario_serialize: NULL argument");
  return guarded([&] {
    const std::string text = collapse::serialize_config(s->doc);
    char* buf = new char[text.size() + 1];
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out_json = buf;
  });
}

cb_status cb_scenario_digest(const cb_scenario* s, char out[17]) {
  if (!s || !out) return invalid("cb_scenario_digest: NULL argument");
  return guarded([&] {
    const std::string d = collapse::config_digest(s->doc);
    std::memcpy(out, d.c_str(), 17);
  });
}

void cb_string_free(char* s) { delete[] s; }

cb_status cb_write_manifest(const cb_scenario* s, const char* subcommand,
                            uint64_t seed, const char* path) {
  if (!s || !subcommand || !path) return invalid("cb_write_manifest: NULL argument");
  return guarded([&] { collapse::write_manifest(path, s->doc, subcommand, seed); });
}

cb_status cb_scenario_seed(const cb_scenario* s, uint64_t* out) {
  if (!s || !out) return invalid("cb_scenario_seed: NULL argument");
  *out = s->doc.scenario.seed;
  return CB_OK;
}

cb_status cb_scenario_info(const cb_scenario* s, double* lambda_csl_hz, double* n0,
                           double* t_evolve_s, double* omega_m_rad_s) {
  if (!s) return invalid("cb_scenario_info: NULL scenario");
  if (lambda_csl_hz) *lambda_csl_hz = s->doc.scenario.csl.lambda_csl;
  if (n0) *n0 = s->doc.scenario.n0;
  if (t_evolve_s) *t_evolve_s = s->doc.scenario.t_evolve;
  if (omega_m_rad_s) *omega_m_rad_s = s->doc.scenario.trap.omega_m;
  return CB_OK;
}

cb_status cb_compute_budget(const cb_scenario* s, cb_budget* out) {
  if (!s || !out) return invalid("cb_compute_budget: NULL argument");
  return guarded([&] { *out = to_c(s->doc.scenario.budget()); });
}

cb_status cb_compute_budget_lambda(const cb_scenario* s, double lambda_csl,
                                   cb_budget* out) {
  if (!s || !out) return invalid("cb_compute_budget_lambda: NULL argument");
  return guarded([&] { *out = to_c(s->doc.scenario.budget_with_lambda(lambda_csl)); });
}

cb_status cb_budget_write_csv(const cb_scenario* s, const double* lambdas, int count,
                              const char* path) {
  if (!s || !lambdas || !path) return invalid("cb_budget_write_csv: NULL argument");
  if (count < 1) return invalid("cb_budget_write_csv: count must be >= 1");
  return guarded([&] {
    std::vector<std::pair<double, collapse::NoiseBudget>> rows;
    rows.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
      rows.emplace_back(lambdas[i], s->doc.scenario.budget_with_lambda(lambdas[i]));
    collapse::write_file(path, collapse::budget_csv(rows));
  });
}

cb_status cb_evolve(const cb_scenario* s, int with_csl, const double* times,
                    int count, int use_moments, cb_trajectory** out) {
  if (!s || !times || !out) return invalid("cb_evolve: NULL argument");
  if (count < 1) return invalid("cb_evolve: count must be >= 1");
  return guarded([&] {
    const collapse::Scenario& sc = s->doc.scenario;
    const collapse::NoiseBudget b =
        with_csl ? sc.budget() : sc.budget_with_lambda(0.0);
    const collapse::EvolutionParams p =
        collapse::EvolutionParams::from_budget(b, sc.trap.omega_m);
    const std::vector<double> grid(times, times + count);

    collapse::Trajectory traj;
    if (use_moments) {
      traj = collapse::integrate_moments(collapse::MomentState::thermal(sc.n0), p,
                                         grid)
                 .trajectory;
    } else {
      traj.times = grid;
      double prev = -1.0;
      for (double t : grid) {
        collapse::require(t > prev, "cb_evolve: times must be strictly increasing");
        prev = t;
        traj.mean_n.push_back(collapse::phonon_closed_form(sc.n0, p, t));
      }
    }
    *out = new cb_trajectory{std::move(traj)};
  });
}

cb_status cb_trajectory_size(const cb_trajectory* t, int* out) {
  if (!t || !out) return invalid("cb_trajectory_size: NULL argument");
  *out = static_cast<int>(t->traj.times.size());
  return CB_OK;
}

cb_status cb_trajectory_point(const cb_trajectory* t, int index, double* time_s,
                              double* mean_n) {
  if (!t) return invalid("cb_trajectory_point: NULL trajectory");
  if (index < 0 || index >= static_cast<int>(t->traj.times.size()))
    return invalid("cb_trajectory_point: index out of range");
  if (time_s) *time_s = t->traj.times[static_cast<std::size_t>(index)];
  if (mean_n) *mean_n = t->traj.mean_n[static_cast<std::size_t>(index)];
  return CB_OK;
}

cb_status cb_trajectory_write_csv(const cb_trajectory* t, const char* path) {
  if (!t || !path) return invalid("cb_trajectory_write_csv: NULL argument");
  return guarded([&] { collapse::write_file(path, collapse::trajectory_csv(t->traj)); });
}

void cb_trajectory_free(cb_trajectory* t) { delete t; }

cb_status cb_cooling_report_compute(const cb_scenario* s, cb_cooling_report* out) {
  if (!s || !out) return invalid("cb_cooling_report_compute: NULL argument");
  return guarded([&] {
    const collapse::Scenario& sc = s->doc.scenario;
    if (!sc.cooling)
      throw collapse::validation_error(
          "scenario has no cooling section; add one to the config");
    const collapse::CoolingResult r =
        collapse::cooling_report(*sc.cooling, sc.sphere, sc.environment);
    out->g_sq = r.g_sq;
    out->Gamma_minus = r.Gamma_minus;
    out->N_ss = r.N_ss;
    out->T_bulk = r.T_bulk;
    out->n0 = r.n0;
    std::string joined;
    for (const std::string& w : r.warnings) {
      if (!joined.empty()) joined += '\n';
      joined += w;
    }
    std::snprintf(out->warnings, sizeof(out->warnings), "%s", joined.c_str());
  });
}

cb_status cb_run_sweep(const cb_scenario* s, const char* axis, double lo, double hi,
                       int points, int log_scale, int threads, cb_sweep** out) {
  if (!s || !axis || !out) return invalid("cb_run_sweep: NULL argument");
  return guarded([&] {
    collapse::SweepSpec spec;
    spec.axis = collapse::axis_from_name(axis);
    spec.grid = {lo, hi, points, log_scale != 0};
    spec.base = s->doc.scenario;
    *out = new cb_sweep{axis, collapse::run_sweep(spec, threads)};
  });
}

cb_status cb_run_sweep_preset(const cb_scenario* s, int threads, cb_sweep** out) {
  if (!s || !out) return invalid("cb_run_sweep_preset: NULL argument");
  return guarded([&] {
    if (!s->doc.sweep)
      throw collapse::validation_error(
          "scenario has no sweep section; pass axis and range explicitly");
    collapse::SweepSpec spec;
    spec.axis = s->doc.sweep->axis;
    spec.grid = s->doc.sweep->grid;
    spec.base = s->doc.scenario;
    *out = new cb_sweep{collapse::axis_name(spec.axis),
                        collapse::run_sweep(spec, threads)};
  });
}

cb_status cb_sweep_size(const cb_sweep* sw, int* out) {
  if (!sw || !out) return invalid("cb_sweep_size: NULL argument");
  *out = static_cast<int>(sw->rows.size());
  return CB_OK;
}

cb_status cb_sweep_row_get(const cb_sweep* sw, int index, cb_sweep_row* out) {
  if (!sw || !out) return invalid("cb_sweep_row_get: NULL argument");
  if (index < 0 || index >= static_cast<int>(sw->rows.size()))
    return invalid("cb_sweep_row_get: index out of range");
  const collapse::SweepRow& r = sw->rows[static_cast<std::size_t>(index)];
  out->axis_value = r.axis_value;
  out->n_csl = r.n_csl;
  out->n_cqm = r.n_cqm;
  out->ratio = r.ratio;
  out->budget_csl = to_c(r.budget_csl);
  out->budget_cqm = to_c(r.budget_cqm);
  return CB_OK;
}

cb_status cb_sweep_write_csv(const cb_sweep* sw, const char* path) {
  if (!sw || !path) return invalid("cb_sweep_write_csv: NULL argument");
  return guarded(
      [&] { collapse::write_file(path, collapse::sweep_csv(sw->axis, sw->rows)); });
}

cb_status cb_sweep_immunity(const cb_sweep* sw, double threshold, double* lo,
                            double* hi, int* nonempty) {
  if (!sw || !nonempty) return invalid("cb_sweep_immunity: NULL argument");
  return guarded([&] {
    const collapse::AxisInterval iv = collapse::immunity_region(sw->rows, threshold);
    *nonempty = iv.empty ? 0 : 1;
    if (!iv.empty) {
      if (lo) *lo = iv.lo;
      if (hi) *hi = iv.hi;
    }
  });
}

void cb_sweep_free(cb_sweep* sw) { delete sw; }

cb_status cb_optimize_spec_default(cb_optimize_spec* out) {
  if (!out) return invalid("cb_optimize_spec_default: NULL argument");
  *out = to_c_spec(collapse::OptimizeBlock{});
  return CB_OK;
}

cb_status cb_optimize_spec_from_scenario(const cb_scenario* s, cb_optimize_spec* out) {
  if (!s || !out) return invalid("cb_optimize_spec_from_scenario: NULL argument");
  *out = to_c_spec(s->doc.optimize ? *s->doc.optimize : collapse::OptimizeBlock{});
  return CB_OK;
}

cb_status cb_scenario_optimize_grid_sizes(const cb_scenario* s, int* np, int* nt) {
  if (!s) return invalid("cb_scenario_optimize_grid_sizes: NULL scenario");
  const int p = s->doc.optimize ? static_cast<int>(s->doc.optimize->pressures.size()) : 0;
  const int t = s->doc.optimize ? static_cast<int>(s->doc.optimize->T_ints.size()) : 0;
  if (np) *np = p;
  if (nt) *nt = t;
  return CB_OK;
}

cb_status cb_scenario_optimize_grids(const cb_scenario* s, double* pressures_Pa,
                                     int np, double* T_ints_K, int nt) {
  if (!s) return invalid("cb_scenario_optimize_grids: NULL scenario");
  if (!s->doc.optimize)
    return invalid("scenario has no optimize section");
  const auto& o = *s->doc.optimize;
  if (np != static_cast<int>(o.pressures.size()) ||
      nt != static_cast<int>(o.T_ints.size()))
    return invalid("cb_scenario_optimize_grids: size mismatch");
  if (pressures_Pa)
    std::memcpy(pressures_Pa, o.pressures.data(), sizeof(double) * o.pressures.size());
  if (T_ints_K)
    std::memcpy(T_ints_K, o.T_ints.data(), sizeof(double) * o.T_ints.size());
  return CB_OK;
}

cb_status cb_min_testable_lambda(const cb_scenario* s, const cb_optimize_spec* spec,
                                 double pressure_Pa, double T_int_K, cb_bound* out) {
  if (!s || !spec || !out) return invalid("cb_min_testable_lambda: NULL argument");
  return guarded([&] {
    collapse::OptimizeSpec os(to_block(*spec), s->doc.scenario, pressure_Pa, T_int_K);
    const collapse::TestableBound b = collapse::min_testable_lambda(os);
    *out = {pressure_Pa,  T_int_K,         b.lambda_min,         b.best_R,
            b.best_omega, b.achieved_ratio, b.converged ? 1 : 0};
  });
}

cb_status cb_testable_curve(const cb_scenario* s, const cb_optimize_spec* spec,
                            const double* pressures_Pa, int np,
                            const double* T_ints_K, int nt, int threads,
                            cb_bound* rows) {
  if (!s || !spec || !pressures_Pa || !T_ints_K || !rows)
    return invalid("cb_testable_curve: NULL argument");
  if (np < 1 || nt < 1) return invalid("cb_testable_curve: empty grid");
  return guarded([&] {
    collapse::OptimizeBlock block = to_block(*spec);
    block.pressures.assign(pressures_Pa, pressures_Pa + np);
    block.T_ints.assign(T_ints_K, T_ints_K + nt);
    const auto points =
        collapse::testable_range_curve(block, s->doc.scenario, threads);
    for (std::size_t i = 0; i < points.size(); ++i) {
      const collapse::CurvePoint& p = points[i];
      rows[i] = {p.pressure,           p.T_int,
                 p.bound.lambda_min,   p.bound.best_R,
                 p.bound.best_omega,   p.bound.achieved_ratio,
                 p.bound.converged ? 1 : 0};
    }
  });
}

cb_status cb_curve_write_csv(const cb_bound* rows, int count, const char* path) {
  if (!rows || !path) return invalid("cb_curve_write_csv: NULL argument");
  if (count < 1) return invalid("cb_curve_write_csv: count must be >= 1");
  return guarded(
      [&] { collapse::write_file(path, collapse::curve_csv(to_points(rows, count))); });
}

cb_status cb_sample_phonons(double mean_n, int count, uint64_t seed, long long* out) {
  if (!out) return invalid("cb_sample_phonons: NULL output");
  return guarded([&] {
    const auto samples = collapse::sample_final_phonons(mean_n, count, seed);
    std::memcpy(out, samples.data(), sizeof(long long) * samples.size());
  });
}

cb_status cb_likelihood_ratio_test(const long long* samples, int count,
                                   double mean_H0, double mean_H1, int mc_trials,
                                   uint64_t seed, int threads,
                                   cb_discrimination* out) {
  if (!samples || !out) return invalid("cb_likelihood_ratio_test: NULL argument");
  if (count < 1) return invalid("cb_likelihood_ratio_test: count must be >= 1");
  return guarded([&] {
    const std::vector<long long> data(samples, samples + count);
    const collapse::DiscriminationReport r = collapse::likelihood_ratio_test(
        data, mean_H0, mean_H1, mc_trials, seed, threads);
    *out = {r.log_likelihood_ratio, r.p_value, r.sample_count, r.mc_trials, r.seed};
  });
}

cb_status cb_discrimination_write_csv(const cb_discrimination* d, double mean_H0,
                                      double mean_H1, const char* path) {
  if (!d || !path) return invalid("cb_discrimination_write_csv: NULL argument");
  return guarded([&] {
    collapse::DiscriminationReport r;
    r.log_likelihood_ratio = d->log_likelihood_ratio;
    r.p_value = d->p_value;
    r.sample_count = d->sample_count;
    r.mc_trials = d->mc_trials;
    r.seed = d->seed;
    collapse::write_file(path, collapse::discrimination_csv(r, mean_H0, mean_H1));
  });
}

cb_status cb_parse_range(const char* text, double* lo, double* hi, int* points,
                         int* log_scale) {
  if (!text || !lo || !hi || !points || !log_scale)
    return invalid("cb_parse_range: NULL argument");
  return guarded([&] {
    const collapse::GridSpec g = collapse::parse_range(text);
    *lo = g.lo;
    *hi = g.hi;
    *points = g.points;
    *log_scale = g.log_scale ? 1 : 0;
  });
}

cb_status cb_make_grid(double lo, double hi, int points, int log_scale, double* out) {
  if (!out) return invalid("cb_make_grid: NULL output");
  return guarded([&] {
    const auto g = collapse::make_grid({lo, hi, points, log_scale != 0});
    std::memcpy(out, g.data(), sizeof(double) * g.size());
  });
}
