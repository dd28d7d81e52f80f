// Command-line front end. Talks to the engine exclusively through the
// public C API in collapse_budget.h. Unit policy: flags take bench units
// (pressure in mbar, frequencies in Hz); conversion to SI / angular happens
// here, once, on ingestion. Output CSVs are always in SI.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "collapse_budget.h"

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kMbarToPa = 100.0;

const char* kPresetNames[] = {"fig2", "fig3a", "fig3b", "fig3c", "fig3d", "fig4"};

int fail(cb_status) {
  std::fprintf(stderr, "error: %s\n", cb_last_error());
  return 1;
}

int usage_fail(const std::string& msg) {
  std::fprintf(stderr, "usage error: %s\n", msg.c_str());
  return 2;
}

#define CHECK(expr)                        \
  do {                                     \
    cb_status st_ = (expr);                \
    if (st_ != CB_OK) return fail(st_);    \
  } while (0)

struct ScenarioHandle {
  cb_scenario* h = nullptr;
  ~ScenarioHandle() { cb_scenario_free(h); }
};

struct TrajectoryHandle {
  cb_trajectory* h = nullptr;
  ~TrajectoryHandle() { cb_trajectory_free(h); }
};

struct SweepHandle {
  cb_sweep* h = nullptr;
  ~SweepHandle() { cb_sweep_free(h); }
};

// Shared source-selection flags: exactly one of --config / --preset.
struct Source {
  std::string config;
  std::string preset;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config, "Path to a JSON scenario config");
    cmd->add_option("--preset", preset,
                    "Built-in preset name (fig2, fig3a-fig3d, fig4)");
  }

  // 0 = ok, else exit code.
  int load(ScenarioHandle& out) const {
    if (config.empty() == preset.empty())
      return usage_fail("exactly one of --config or --preset is required");
    cb_status st = config.empty() ? cb_scenario_preset(preset.c_str(), &out.h)
                                  : cb_scenario_load(config.c_str(), &out.h);
    if (st != CB_OK) return fail(st);
    return 0;
  }
};

bool parse_double(const std::string& text, double* out) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') return false;
  *out = v;
  return true;
}

// Accepts either the range grammar lo..hi:Npts[log|lin] or a comma list.
bool parse_values(const std::string& text, std::vector<double>* out) {
  out->clear();
  if (text.find("..") != std::string::npos) {
    double lo = 0, hi = 0;
    int points = 0, log_scale = 0;
    if (cb_parse_range(text.c_str(), &lo, &hi, &points, &log_scale) != CB_OK)
      return false;
    out->resize(static_cast<std::size_t>(points));
    return cb_make_grid(lo, hi, points, log_scale, out->data()) == CB_OK;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item =
        text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    double v = 0;
    if (!parse_double(item, &v)) return false;
    out->push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return !out->empty();
}

bool parse_pair(const std::string& text, double* a, double* b) {
  std::vector<double> vals;
  return parse_values(text, &vals) && vals.size() == 2 &&
         (*a = vals[0], *b = vals[1], true);
}

int write_manifest_for(const ScenarioHandle& s, const char* subcommand,
                       uint64_t seed, const std::string& out_path) {
  const std::string path = out_path + ".manifest.json";
  CHECK(cb_write_manifest(s.h, subcommand, seed, path.c_str()));
  return 0;
}

void print_budget(double lambda, const cb_budget& b) {
  std::printf("lambda_csl_hz   %.9g\n", lambda);
  std::printf("  D_gas         %.9g phonons/s\n", b.D_gas);
  std::printf("  D_bb          %.9g phonons/s\n", b.D_bb);
  std::printf("  D_csl         %.9g phonons/s\n", b.D_csl);
  std::printf("  D_efield      %.9g phonons/s\n", b.D_efield);
  std::printf("  D_diff_total  %.9g phonons/s\n", b.D_diff_total);
  std::printf("  gamma_gas     %.9g 1/s\n", b.gamma_gas);
  std::printf("  gamma_bb_e    %.9g 1/s\n", b.gamma_bb_e);
  std::printf("  gamma_bb_a    %.9g 1/s\n", b.gamma_bb_a);
  std::printf("  Gamma_total   %.9g 1/s\n", b.Gamma_total);
}

// ---- budget ---------------------------------------------------------------

struct BudgetOpts {
  Source src;
  std::string lambdas;
  std::string out;
};

int run_budget(const BudgetOpts& o) {
  ScenarioHandle s;
  if (int rc = o.src.load(s)) return rc;

  std::vector<double> lambdas;
  if (!o.lambdas.empty()) {
    if (!parse_values(o.lambdas, &lambdas))
      return usage_fail("--lambdas: expected a comma list or lo..hi:N[log|lin]");
  } else {
    double lambda = 0;
    CHECK(cb_scenario_info(s.h, &lambda, nullptr, nullptr, nullptr));
    lambdas.push_back(lambda);
    if (lambda != 0.0) lambdas.push_back(0.0);
  }

  for (double lambda : lambdas) {
    cb_budget b;
    CHECK(cb_compute_budget_lambda(s.h, lambda, &b));
    print_budget(lambda, b);
  }

  if (!o.out.empty()) {
    CHECK(cb_budget_write_csv(s.h, lambdas.data(),
                              static_cast<int>(lambdas.size()), o.out.c_str()));
    uint64_t seed = 0;
    CHECK(cb_scenario_seed(s.h, &seed));
    if (int rc = write_manifest_for(s, "budget", seed, o.out)) return rc;
    std::printf("wrote %s\n", o.out.c_str());
  }
  return 0;
}

// ---- evolve ---------------------------------------------------------------

struct EvolveOpts {
  Source src;
  std::string times;
  bool moments = false;
  bool no_csl = false;
  std::string out;
};

int run_evolve(const EvolveOpts& o) {
  ScenarioHandle s;
  if (int rc = o.src.load(s)) return rc;

  std::vector<double> grid;
  if (!o.times.empty()) {
    if (!parse_values(o.times, &grid))
      return usage_fail("--times: expected a comma list or lo..hi:N[log|lin]");
  } else {
    double t_evolve = 0;
    CHECK(cb_scenario_info(s.h, nullptr, nullptr, &t_evolve, nullptr));
    grid.resize(201);
    CHECK(cb_make_grid(0.0, t_evolve, 201, 0, grid.data()));
  }

  TrajectoryHandle traj;
  CHECK(cb_evolve(s.h, o.no_csl ? 0 : 1, grid.data(),
                  static_cast<int>(grid.size()), o.moments ? 1 : 0, &traj.h));

  int n = 0;
  CHECK(cb_trajectory_size(traj.h, &n));
  double t_last = 0, n_last = 0;
  CHECK(cb_trajectory_point(traj.h, n - 1, &t_last, &n_last));
  std::printf("samples        %d\n", n);
  std::printf("method         %s\n", o.moments ? "moment ODEs" : "closed form");
  std::printf("collapse term  %s\n", o.no_csl ? "off" : "on");
  std::printf("final t        %.9g s\n", t_last);
  std::printf("final mean n   %.9g\n", n_last);

  if (!o.out.empty()) {
    CHECK(cb_trajectory_write_csv(traj.h, o.out.c_str()));
    uint64_t seed = 0;
    CHECK(cb_scenario_seed(s.h, &seed));
    if (int rc = write_manifest_for(s, "evolve", seed, o.out)) return rc;
    std::printf("wrote %s\n", o.out.c_str());
  }
  return 0;
}

// ---- cool -----------------------------------------------------------------

int run_cool(const Source& src) {
  ScenarioHandle s;
  if (int rc = src.load(s)) return rc;

  cb_cooling_report r;
  CHECK(cb_cooling_report_compute(s.h, &r));
  std::printf("g^2            %.9g s^-2\n", r.g_sq);
  std::printf("Gamma_minus    %.9g 1/s\n", r.Gamma_minus);
  std::printf("N_ss           %.9g phonons\n", r.N_ss);
  std::printf("T_bulk         %.9g K\n", r.T_bulk);
  std::printf("n0             %.9g phonons\n", r.n0);
  if (r.warnings[0] != '\0') std::printf("warnings:\n%s\n", r.warnings);
  return 0;
}

// ---- sweep ----------------------------------------------------------------

struct SweepOpts {
  Source src;
  std::string axis;
  std::string range;
  double immunity_threshold = 0.0;  // 0 = not requested
  int threads = 0;
  std::string out;
};

int run_sweep(const SweepOpts& o) {
  ScenarioHandle s;
  if (int rc = o.src.load(s)) return rc;

  SweepHandle sweep;
  if (o.axis.empty() != o.range.empty())
    return usage_fail("--axis and --range must be given together");
  if (o.axis.empty()) {
    cb_status st = cb_run_sweep_preset(s.h, o.threads, &sweep.h);
    if (st == CB_ERR_INVALID_ARGUMENT)
      return usage_fail(std::string(cb_last_error()) +
                        " (or pass --axis and --range)");
    if (st != CB_OK) return fail(st);
  } else {
    double lo = 0, hi = 0;
    int points = 0, log_scale = 0;
    if (cb_parse_range(o.range.c_str(), &lo, &hi, &points, &log_scale) != CB_OK)
      return usage_fail(std::string("--range: ") + cb_last_error());
    double scale = 1.0;
    if (o.axis == "pressure") scale = kMbarToPa;       // mbar -> Pa
    if (o.axis == "omega_m") scale = kTwoPi;           // Hz -> rad/s
    CHECK(cb_run_sweep(s.h, o.axis.c_str(), lo * scale, hi * scale, points,
                       log_scale, o.threads, &sweep.h));
  }

  int n = 0;
  CHECK(cb_sweep_size(sweep.h, &n));
  double ratio_lo = 0, ratio_hi = 0;
  bool have_ratio = false;
  int failed_rows = 0;
  for (int i = 0; i < n; ++i) {
    cb_sweep_row row;
    CHECK(cb_sweep_row_get(sweep.h, i, &row));
    if (std::isnan(row.ratio)) {
      ++failed_rows;
      continue;
    }
    if (!have_ratio) {
      ratio_lo = ratio_hi = row.ratio;
      have_ratio = true;
    } else {
      ratio_lo = std::fmin(ratio_lo, row.ratio);
      ratio_hi = std::fmax(ratio_hi, row.ratio);
    }
  }
  std::printf("rows           %d\n", n);
  if (have_ratio) std::printf("ratio range    %.9g .. %.9g\n", ratio_lo, ratio_hi);
  if (failed_rows > 0) std::printf("flagged rows   %d\n", failed_rows);

  if (o.immunity_threshold > 0.0) {
    double lo = 0, hi = 0;
    int nonempty = 0;
    CHECK(cb_sweep_immunity(sweep.h, o.immunity_threshold, &lo, &hi, &nonempty));
    if (nonempty)
      std::printf("immunity       %.9g .. %.9g (axis units)\n", lo, hi);
    else
      std::printf("immunity       empty\n");
  }

  if (!o.out.empty()) {
    CHECK(cb_sweep_write_csv(sweep.h, o.out.c_str()));
    uint64_t seed = 0;
    CHECK(cb_scenario_seed(s.h, &seed));
    if (int rc = write_manifest_for(s, "sweep", seed, o.out)) return rc;
    std::printf("wrote %s\n", o.out.c_str());
  }
  return 0;
}

// ---- optimize -------------------------------------------------------------

struct OptimizeOpts {
  Source src;
  std::string pressures;  // mbar
  std::string tints;      // K
  double ratio_threshold = -1;
  double horizon = -1;
  double n0 = -1;
  std::string radius_bounds;  // m
  std::string omega_bounds;   // Hz
  std::string lambda_bracket; // Hz
  int grid_r = 0;
  int grid_omega = 0;
  int threads = 0;
  std::string out;
};

int run_optimize(const OptimizeOpts& o) {
  ScenarioHandle s;
  if (int rc = o.src.load(s)) return rc;

  cb_optimize_spec spec;
  CHECK(cb_optimize_spec_from_scenario(s.h, &spec));
  if (o.ratio_threshold > 0) spec.ratio_threshold = o.ratio_threshold;
  if (o.horizon > 0) spec.horizon_s = o.horizon;
  if (o.n0 >= 0) spec.n0 = o.n0;
  if (!o.radius_bounds.empty() &&
      !parse_pair(o.radius_bounds, &spec.R_lo_m, &spec.R_hi_m))
    return usage_fail("--radius-bounds: expected lo,hi in metres");
  if (!o.omega_bounds.empty()) {
    if (!parse_pair(o.omega_bounds, &spec.omega_lo_rad_s, &spec.omega_hi_rad_s))
      return usage_fail("--omega-bounds: expected lo,hi in Hz");
    spec.omega_lo_rad_s *= kTwoPi;
    spec.omega_hi_rad_s *= kTwoPi;
  }
  if (!o.lambda_bracket.empty() &&
      !parse_pair(o.lambda_bracket, &spec.lambda_lo_hz, &spec.lambda_hi_hz))
    return usage_fail("--lambda-bracket: expected lo,hi in Hz");
  if (o.grid_r > 0) spec.grid_R = o.grid_r;
  if (o.grid_omega > 0) spec.grid_omega = o.grid_omega;

  std::vector<double> pressures;  // Pa
  std::vector<double> tints;      // K
  if (!o.pressures.empty()) {
    if (!parse_values(o.pressures, &pressures))
      return usage_fail("--pressures: expected a comma list or lo..hi:N[log|lin]");
    for (double& p : pressures) p *= kMbarToPa;
  }
  if (!o.tints.empty() && !parse_values(o.tints, &tints))
    return usage_fail("--tints: expected a comma list or lo..hi:N[log|lin]");
  if (pressures.empty() || tints.empty()) {
    int np = 0, nt = 0;
    CHECK(cb_scenario_optimize_grid_sizes(s.h, &np, &nt));
    if (pressures.empty() && np > 0) {
      pressures.resize(static_cast<std::size_t>(np));
      CHECK(cb_scenario_optimize_grids(s.h, pressures.data(), np, nullptr, nt));
    }
    if (tints.empty() && nt > 0) {
      tints.resize(static_cast<std::size_t>(nt));
      CHECK(cb_scenario_optimize_grids(s.h, nullptr, np, tints.data(), nt));
    }
  }
  if (pressures.empty())
    return usage_fail("no pressure grid: pass --pressures or use a preset with one");
  if (tints.empty())
    return usage_fail("no temperature grid: pass --tints or use a preset with one");

  std::vector<cb_bound> rows(pressures.size() * tints.size());
  CHECK(cb_testable_curve(s.h, &spec, pressures.data(),
                          static_cast<int>(pressures.size()), tints.data(),
                          static_cast<int>(tints.size()), o.threads,
                          rows.data()));

  std::printf("%-12s %-8s %-14s %-12s %-12s %-10s %s\n", "P_mbar", "T_int_K",
              "lambda_min_hz", "best_R_m", "best_f_hz", "ratio", "conv");
  for (const cb_bound& r : rows)
    std::printf("%-12.4g %-8.4g %-14.6g %-12.4g %-12.4g %-10.5g %d\n",
                r.pressure_Pa / kMbarToPa, r.T_int_K, r.lambda_min_hz,
                r.best_R_m, r.best_omega_rad_s / kTwoPi, r.achieved_ratio,
                r.converged);

  if (!o.out.empty()) {
    CHECK(cb_curve_write_csv(rows.data(), static_cast<int>(rows.size()),
                             o.out.c_str()));
    uint64_t seed = 0;
    CHECK(cb_scenario_seed(s.h, &seed));
    if (int rc = write_manifest_for(s, "optimize", seed, o.out)) return rc;
    std::printf("wrote %s\n", o.out.c_str());
  }
  return 0;
}

// ---- discriminate ----------------------------------------------------------

struct DiscriminateOpts {
  Source src;
  int samples = 100;
  int mc_trials = 5000;
  double mean_h0 = -1;
  double mean_h1 = -1;
  uint64_t seed = 0;
  bool seed_set = false;
  int threads = 0;
  std::string out;
};

int run_discriminate(const DiscriminateOpts& o) {
  ScenarioHandle s;
  if (int rc = o.src.load(s)) return rc;
  if (o.samples < 1) return usage_fail("--samples must be >= 1");

  double mean_H0 = o.mean_h0;
  double mean_H1 = o.mean_h1;
  if (mean_H0 < 0 || mean_H1 < 0) {
    double t_evolve = 0;
    CHECK(cb_scenario_info(s.h, nullptr, nullptr, &t_evolve, nullptr));
    for (int with_csl = 0; with_csl <= 1; ++with_csl) {
      double* target = with_csl ? &mean_H1 : &mean_H0;
      if (*target >= 0) continue;
      TrajectoryHandle traj;
      CHECK(cb_evolve(s.h, with_csl, &t_evolve, 1, 0, &traj.h));
      double t = 0;
      CHECK(cb_trajectory_point(traj.h, 0, &t, target));
    }
  }

  uint64_t seed = o.seed;
  if (!o.seed_set) CHECK(cb_scenario_seed(s.h, &seed));

  std::vector<long long> samples(static_cast<std::size_t>(o.samples));
  CHECK(cb_sample_phonons(mean_H1, o.samples, seed, samples.data()));

  cb_discrimination rep;
  CHECK(cb_likelihood_ratio_test(samples.data(), o.samples, mean_H0, mean_H1,
                                 o.mc_trials, seed, o.threads, &rep));

  std::printf("mean_H0        %.9g\n", mean_H0);
  std::printf("mean_H1        %.9g\n", mean_H1);
  std::printf("samples        %d (drawn under H1)\n", rep.sample_count);
  std::printf("llr            %.9g\n", rep.log_likelihood_ratio);
  std::printf("p_value        %.9g (%d Monte-Carlo trials under H0)\n",
              rep.p_value, rep.mc_trials);
  std::printf("verdict        H0 %s at p < 0.05\n",
              rep.p_value < 0.05 ? "rejected" : "not rejected");

  if (!o.out.empty()) {
    CHECK(cb_discrimination_write_csv(&rep, mean_H0, mean_H1, o.out.c_str()));
    if (int rc = write_manifest_for(s, "discriminate", seed, o.out)) return rc;
    std::printf("wrote %s\n", o.out.c_str());
  }
  return 0;
}

// ---- presets ---------------------------------------------------------------

struct PresetsOpts {
  std::string name;
  std::string out;
};

int run_presets(const PresetsOpts& o) {
  if (o.name.empty()) {
    for (const char* name : kPresetNames) std::printf("%s\n", name);
    return 0;
  }
  ScenarioHandle s;
  CHECK(cb_scenario_preset(o.name.c_str(), &s.h));
  char* json = nullptr;
  CHECK(cb_scenario_serialize(s.h, &json));
  std::unique_ptr<char, void (*)(char*)> guard(json, cb_string_free);
  if (o.out.empty()) {
    std::fputs(json, stdout);
    return 0;
  }
  std::FILE* f = std::fopen(o.out.c_str(), "wb");
  if (!f) {
    std::fprintf(stderr, "error: cannot open %s for writing\n", o.out.c_str());
    return 1;
  }
  std::fputs(json, f);
  std::fclose(f);
  std::printf("wrote %s\n", o.out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noise budget and collapse-test engine for trapped nanospheres"};
  app.set_version_flag("--version", std::string(cb_version()));
  app.require_subcommand(1);

  BudgetOpts budget;
  CLI::App* cmd = app.add_subcommand(
      "budget", "Per-source heating rates for one scenario");
  budget.src.attach(cmd);
  cmd->add_option("--lambdas", budget.lambdas,
                  "Collapse rates in Hz (comma list or lo..hi:N[log|lin]); "
                  "default: scenario value and 0");
  cmd->add_option("--out", budget.out, "Write rates per lambda as CSV");

  EvolveOpts evolve;
  cmd = app.add_subcommand("evolve", "Mean phonon number vs time");
  evolve.src.attach(cmd);
  cmd->add_option("--times", evolve.times,
                  "Sample times in s (comma list or lo..hi:N[log|lin]); "
                  "default 0..t_evolve:201");
  cmd->add_flag("--moments", evolve.moments,
                "Integrate the second-moment ODEs instead of the closed form");
  cmd->add_flag("--no-csl", evolve.no_csl, "Evolve with the collapse term off");
  cmd->add_option("--out", evolve.out, "Write trajectory CSV");

  Source cool_src;
  cmd = app.add_subcommand("cool", "Cavity cooling report (needs cooling block)");
  cool_src.attach(cmd);

  SweepOpts sweep;
  cmd = app.add_subcommand("sweep", "Heating comparison along one parameter axis");
  sweep.src.attach(cmd);
  cmd->add_option("--axis", sweep.axis,
                  "pressure | T_int | omega_m | radius | lambda_csl | t_evolve");
  cmd->add_option("--range", sweep.range,
                  "lo..hi:N[log|lin]; pressure in mbar, omega_m in Hz, "
                  "radius in m, T_int in K, lambda_csl in Hz, t_evolve in s");
  cmd->add_option("--immunity-threshold", sweep.immunity_threshold,
                  "Report the flat-response axis interval at this |slope| bound");
  cmd->add_option("--threads", sweep.threads, "Worker threads (0 = auto)");
  cmd->add_option("--out", sweep.out, "Write sweep CSV");

  OptimizeOpts optimize;
  cmd = app.add_subcommand(
      "optimize", "Minimal testable collapse rate over a (P, T_int) grid");
  optimize.src.attach(cmd);
  cmd->add_option("--pressures", optimize.pressures,
                  "Pressures in mbar (comma list or lo..hi:N[log|lin])");
  cmd->add_option("--tints", optimize.tints,
                  "Internal temperatures in K (comma list or range)");
  cmd->add_option("--ratio-threshold", optimize.ratio_threshold,
                  "Detectability ratio n_csl/n_cqm to reach");
  cmd->add_option("--horizon", optimize.horizon, "Evolution horizon in s");
  cmd->add_option("--n0", optimize.n0, "Initial phonon occupation");
  cmd->add_option("--radius-bounds", optimize.radius_bounds,
                  "Geometry search bounds lo,hi in m");
  cmd->add_option("--omega-bounds", optimize.omega_bounds,
                  "Trap frequency bounds lo,hi in Hz");
  cmd->add_option("--lambda-bracket", optimize.lambda_bracket,
                  "Bisection bracket lo,hi in Hz");
  cmd->add_option("--grid-r", optimize.grid_r, "Radius grid points for the scan");
  cmd->add_option("--grid-omega", optimize.grid_omega,
                  "Frequency grid points for the scan");
  cmd->add_option("--threads", optimize.threads, "Worker threads (0 = auto)");
  cmd->add_option("--out", optimize.out, "Write curve CSV");

  DiscriminateOpts disc;
  cmd = app.add_subcommand(
      "discriminate", "Likelihood-ratio test of collapse vs conventional heating");
  disc.src.attach(cmd);
  cmd->add_option("--samples", disc.samples, "Synthetic measurements to draw");
  cmd->add_option("--mc-trials", disc.mc_trials, "Monte-Carlo trials for the p-value");
  cmd->add_option("--mean-h0", disc.mean_h0,
                  "Override the no-collapse mean occupation");
  cmd->add_option("--mean-h1", disc.mean_h1,
                  "Override the with-collapse mean occupation");
  cmd->add_option("--seed", disc.seed, "Override the scenario seed")
      ->each([&disc](const std::string&) { disc.seed_set = true; });
  cmd->add_option("--threads", disc.threads, "Worker threads (0 = auto)");
  cmd->add_option("--out", disc.out, "Write report CSV");

  PresetsOpts presets;
  cmd = app.add_subcommand("presets", "List presets or print one as JSON");
  cmd->add_option("name", presets.name, "Preset to print");
  cmd->add_option("--out", presets.out, "Write the preset JSON to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (app.got_subcommand("budget")) return run_budget(budget);
  if (app.got_subcommand("evolve")) return run_evolve(evolve);
  if (app.got_subcommand("cool")) return run_cool(cool_src);
  if (app.got_subcommand("sweep")) return run_sweep(sweep);
  if (app.got_subcommand("optimize")) return run_optimize(optimize);
  if (app.got_subcommand("discriminate")) return run_discriminate(disc);
  if (app.got_subcommand("presets")) return run_presets(presets);
  return 2;
}
