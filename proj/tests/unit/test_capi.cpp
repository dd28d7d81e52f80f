#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "collapse_budget.h"
#include "doctest.h"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / "capi_test_scratch") {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

struct Preset {
  cb_scenario* s = nullptr;
  explicit Preset(const char* name) {
    REQUIRE(cb_scenario_preset(name, &s) == CB_OK);
  }
  ~Preset() { cb_scenario_free(s); }
};

}  // namespace

TEST_CASE("capi: version and error text") {
  CHECK(std::strcmp(cb_version(), "0.1.0") == 0);

  cb_scenario* s = nullptr;
  CHECK(cb_scenario_preset("not-a-preset", &s) == CB_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(cb_last_error()) > 0);
  CHECK(cb_scenario_preset(nullptr, &s) == CB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("capi: status mapping") {
  cb_scenario* s = nullptr;
  CHECK(cb_scenario_load("/nonexistent/config.json", &s) == CB_ERR_IO);
  CHECK(cb_scenario_parse("{ not json", &s) == CB_ERR_PARSE);
  CHECK(cb_scenario_parse(R"({"sphere": {"radius_m": -1}})", &s) ==
        CB_ERR_INVALID_ARGUMENT);
  CHECK(cb_scenario_parse("{}", &s) == CB_OK);
  cb_scenario_free(s);
}

TEST_CASE("capi: scenario info, digest, serialize round trip") {
  Preset fig2("fig2");

  double lambda = 0, n0 = 0, t_evolve = 0, omega = 0;
  REQUIRE(cb_scenario_info(fig2.s, &lambda, &n0, &t_evolve, &omega) == CB_OK);
  CHECK(lambda == 1e-8);
  CHECK(n0 == 50.0);
  CHECK(t_evolve == 1.0);
  CHECK(omega == doctest::Approx(2.0 * 3.14159265358979 * 5000).epsilon(1e-12));

  uint64_t seed = 0;
  REQUIRE(cb_scenario_seed(fig2.s, &seed) == CB_OK);
  CHECK(seed == 987654321u);

  char digest[17] = {};
  REQUIRE(cb_scenario_digest(fig2.s, digest) == CB_OK);
  CHECK(std::strlen(digest) == 16);

  char* json = nullptr;
  REQUIRE(cb_scenario_serialize(fig2.s, &json) == CB_OK);
  REQUIRE(json != nullptr);
  cb_scenario* reparsed = nullptr;
  REQUIRE(cb_scenario_parse(json, &reparsed) == CB_OK);
  char digest2[17] = {};
  REQUIRE(cb_scenario_digest(reparsed, digest2) == CB_OK);
  CHECK(std::strcmp(digest, digest2) == 0);
  cb_scenario_free(reparsed);
  cb_string_free(json);
}

TEST_CASE("capi: budgets") {
  Preset fig2("fig2");

  cb_budget b;
  REQUIRE(cb_compute_budget(fig2.s, &b) == CB_OK);
  CHECK(b.D_bb == 350.0);
  CHECK(b.D_csl == doctest::Approx(3646.5835819627268).epsilon(1e-12));
  CHECK(b.D_diff_total ==
        doctest::Approx(b.D_gas + b.D_bb + b.D_csl + b.D_efield).epsilon(1e-15));

  cb_budget b0;
  REQUIRE(cb_compute_budget_lambda(fig2.s, 0.0, &b0) == CB_OK);
  CHECK(b0.D_csl == 0.0);
  CHECK(b0.Gamma_total == b.Gamma_total);

  CHECK(cb_compute_budget_lambda(fig2.s, -1.0, &b0) == CB_ERR_INVALID_ARGUMENT);
  CHECK(cb_compute_budget(nullptr, &b) == CB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("capi: evolution") {
  Preset fig2("fig2");
  const double times[3] = {0.0, 0.5, 1.0};

  cb_trajectory* closed = nullptr;
  REQUIRE(cb_evolve(fig2.s, 1, times, 3, 0, &closed) == CB_OK);
  int n = 0;
  REQUIRE(cb_trajectory_size(closed, &n) == CB_OK);
  REQUIRE(n == 3);

  double t = 0, mean = 0;
  REQUIRE(cb_trajectory_point(closed, 0, &t, &mean) == CB_OK);
  CHECK(t == 0.0);
  CHECK(mean == 50.0);
  REQUIRE(cb_trajectory_point(closed, 2, &t, &mean) == CB_OK);
  CHECK(mean == doctest::Approx(4046.6722970623165).epsilon(1e-12));
  CHECK(cb_trajectory_point(closed, 3, &t, &mean) == CB_ERR_INVALID_ARGUMENT);

  // Moment integration agrees with the closed form.
  cb_trajectory* moments = nullptr;
  REQUIRE(cb_evolve(fig2.s, 1, times, 3, 1, &moments) == CB_OK);
  double mean_m = 0;
  REQUIRE(cb_trajectory_point(moments, 2, &t, &mean_m) == CB_OK);
  CHECK(mean_m == doctest::Approx(mean).epsilon(1e-8));

  // Collapse off lands two orders of magnitude lower.
  cb_trajectory* cqm = nullptr;
  REQUIRE(cb_evolve(fig2.s, 0, times, 3, 0, &cqm) == CB_OK);
  double mean_0 = 0;
  REQUIRE(cb_trajectory_point(cqm, 2, &t, &mean_0) == CB_OK);
  CHECK(mean_0 == doctest::Approx(400.0898979651301).epsilon(1e-12));

  const double bad[2] = {0.5, 0.5};
  cb_trajectory* out = nullptr;
  CHECK(cb_evolve(fig2.s, 1, bad, 2, 0, &out) == CB_ERR_INVALID_ARGUMENT);

  cb_trajectory_free(closed);
  cb_trajectory_free(moments);
  cb_trajectory_free(cqm);
}

TEST_CASE("capi: cooling report") {
  Preset fig2("fig2");
  cb_cooling_report r;
  REQUIRE(cb_cooling_report_compute(fig2.s, &r) == CB_OK);
  CHECK(r.Gamma_minus > 0.0);
  CHECK(r.N_ss > 0.0);
  CHECK(r.n0 > 40.0);
  CHECK(r.n0 < 60.0);
  CHECK(r.warnings[0] == '\0');

  // A scenario without a cooling block cannot produce a report.
  cb_scenario* bare = nullptr;
  REQUIRE(cb_scenario_parse("{}", &bare) == CB_OK);
  CHECK(cb_cooling_report_compute(bare, &r) == CB_ERR_INVALID_ARGUMENT);
  cb_scenario_free(bare);
}

TEST_CASE("capi: sweep and immunity") {
  Preset fig3a("fig3a");

  cb_sweep* sw = nullptr;
  REQUIRE(cb_run_sweep_preset(fig3a.s, 0, &sw) == CB_OK);
  int n = 0;
  REQUIRE(cb_sweep_size(sw, &n) == CB_OK);
  REQUIRE(n == 40);

  cb_sweep_row row;
  REQUIRE(cb_sweep_row_get(sw, 0, &row) == CB_OK);
  CHECK(row.axis_value == 1e-11);
  CHECK(row.n_csl >= row.n_cqm);
  CHECK(row.budget_cqm.D_csl == 0.0);
  CHECK(cb_sweep_row_get(sw, 40, &row) == CB_ERR_INVALID_ARGUMENT);

  double lo = 0, hi = 0;
  int nonempty = 0;
  REQUIRE(cb_sweep_immunity(sw, 0.1, &lo, &hi, &nonempty) == CB_OK);
  CHECK(nonempty == 1);
  CHECK(lo == 1e-11);
  CHECK(hi == doctest::Approx(4.641588833612782e-7).epsilon(1e-9));
  cb_sweep_free(sw);

  // Explicit axis override through the flat API.
  cb_sweep* radius = nullptr;
  REQUIRE(cb_run_sweep(fig3a.s, "radius", 1e-8, 1e-6, 5, 1, 0, &radius) == CB_OK);
  REQUIRE(cb_sweep_size(radius, &n) == CB_OK);
  CHECK(n == 5);
  cb_sweep_free(radius);

  CHECK(cb_run_sweep(fig3a.s, "voltage", 1.0, 2.0, 3, 0, 0, &radius) ==
        CB_ERR_INVALID_ARGUMENT);

  // No sweep block in a bare config.
  cb_scenario* bare = nullptr;
  REQUIRE(cb_scenario_parse("{}", &bare) == CB_OK);
  CHECK(cb_run_sweep_preset(bare, 0, &radius) == CB_ERR_INVALID_ARGUMENT);
  cb_scenario_free(bare);
}

TEST_CASE("capi: optimizer") {
  Preset fig4("fig4");

  cb_optimize_spec spec;
  REQUIRE(cb_optimize_spec_from_scenario(fig4.s, &spec) == CB_OK);
  CHECK(spec.ratio_threshold == 1.2);
  CHECK(spec.horizon_s == 100.0);

  int np = 0, nt = 0;
  REQUIRE(cb_scenario_optimize_grid_sizes(fig4.s, &np, &nt) == CB_OK);
  CHECK(np == 20);
  CHECK(nt == 4);
  std::vector<double> pressures(np), tints(nt);
  REQUIRE(cb_scenario_optimize_grids(fig4.s, pressures.data(), np, tints.data(),
                                     nt) == CB_OK);
  CHECK(pressures.front() == 1e-11);
  CHECK(pressures.back() == 1e-7);
  CHECK(tints == std::vector<double>{20.0, 40.0, 60.0, 80.0});

  cb_bound bound;
  REQUIRE(cb_min_testable_lambda(fig4.s, &spec, 1e-9, 60.0, &bound) == CB_OK);
  CHECK(bound.converged == 1);
  CHECK(bound.lambda_min_hz > 1e-12);
  CHECK(bound.lambda_min_hz < 1e-10);
  CHECK(bound.achieved_ratio >= 1.2);

  // Tiny curve through the array interface.
  const double ps[2] = {1e-11, 1e-9};
  const double ts[1] = {60.0};
  cb_optimize_spec quick = spec;
  quick.grid_R = 5;
  quick.grid_omega = 5;
  cb_bound rows[2];
  REQUIRE(cb_testable_curve(fig4.s, &quick, ps, 2, ts, 1, 0, rows) == CB_OK);
  CHECK(rows[0].pressure_Pa == 1e-11);
  CHECK(rows[1].pressure_Pa == 1e-9);
  CHECK(rows[0].lambda_min_hz <= rows[1].lambda_min_hz * 1.005);

  // Defaults are self-consistent.
  cb_optimize_spec dflt;
  REQUIRE(cb_optimize_spec_default(&dflt) == CB_OK);
  CHECK(dflt.ratio_threshold == 1.2);
  CHECK(dflt.grid_R == 16);

  // Grid queries on a config without an optimize block.
  cb_scenario* bare = nullptr;
  REQUIRE(cb_scenario_parse("{}", &bare) == CB_OK);
  REQUIRE(cb_scenario_optimize_grid_sizes(bare, &np, &nt) == CB_OK);
  CHECK(np == 0);
  CHECK(nt == 0);
  CHECK(cb_scenario_optimize_grids(bare, nullptr, 0, nullptr, 0) ==
        CB_ERR_INVALID_ARGUMENT);
  cb_scenario_free(bare);
}

TEST_CASE("capi: sampling and discrimination") {
  std::vector<long long> a(200), b(200);
  REQUIRE(cb_sample_phonons(100.0, 200, 7, a.data()) == CB_OK);
  REQUIRE(cb_sample_phonons(100.0, 200, 7, b.data()) == CB_OK);
  CHECK(a == b);

  cb_discrimination rep;
  REQUIRE(cb_likelihood_ratio_test(a.data(), 200, 50.0, 100.0, 1500, 7, 0,
                                   &rep) == CB_OK);
  CHECK(rep.sample_count == 200);
  CHECK(rep.mc_trials == 1500);
  CHECK(rep.p_value > 0.0);
  CHECK(rep.p_value < 0.05);
  CHECK(rep.log_likelihood_ratio > 0.0);

  CHECK(cb_likelihood_ratio_test(a.data(), 0, 50.0, 100.0, 100, 7, 0, &rep) ==
        CB_ERR_INVALID_ARGUMENT);
  CHECK(cb_sample_phonons(-1.0, 10, 7, a.data()) == CB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("capi: file outputs") {
  TempDir tmp;
  Preset fig2("fig2");

  const fs::path traj_path = tmp.path / "traj.csv";
  const double times[3] = {0.0, 0.5, 1.0};
  cb_trajectory* traj = nullptr;
  REQUIRE(cb_evolve(fig2.s, 1, times, 3, 0, &traj) == CB_OK);
  REQUIRE(cb_trajectory_write_csv(traj, traj_path.string().c_str()) == CB_OK);
  cb_trajectory_free(traj);
  const std::string traj_text = slurp(traj_path);
  CHECK(traj_text.rfind("t_s,mean_n\n", 0) == 0);
  CHECK(traj_text.find("\n0,50\n") != std::string::npos);

  const fs::path budget_path = tmp.path / "budget.csv";
  const double lambdas[2] = {1e-8, 0.0};
  REQUIRE(cb_budget_write_csv(fig2.s, lambdas, 2, budget_path.string().c_str()) ==
          CB_OK);
  CHECK(slurp(budget_path).rfind("lambda_csl_hz,", 0) == 0);

  const fs::path manifest_path = tmp.path / "out.manifest.json";
  REQUIRE(cb_write_manifest(fig2.s, "budget", 42, manifest_path.string().c_str()) ==
          CB_OK);
  const std::string manifest = slurp(manifest_path);
  CHECK(manifest.find("\"subcommand\": \"budget\"") != std::string::npos);
  char digest[17] = {};
  REQUIRE(cb_scenario_digest(fig2.s, digest) == CB_OK);
  CHECK(manifest.find(digest) != std::string::npos);

  CHECK(cb_trajectory_write_csv(nullptr, "x.csv") == CB_ERR_INVALID_ARGUMENT);
  cb_trajectory* t2 = nullptr;
  REQUIRE(cb_evolve(fig2.s, 1, times, 3, 0, &t2) == CB_OK);
  CHECK(cb_trajectory_write_csv(t2, "/nonexistent_dir/t.csv") == CB_ERR_IO);
  cb_trajectory_free(t2);
}

TEST_CASE("capi: range helpers") {
  double lo = 0, hi = 0;
  int points = 0, log_scale = 0;
  REQUIRE(cb_parse_range("1e-13..1e-9:20log", &lo, &hi, &points, &log_scale) ==
          CB_OK);
  CHECK(lo == 1e-13);
  CHECK(hi == 1e-9);
  CHECK(points == 20);
  CHECK(log_scale == 1);
  CHECK(cb_parse_range("junk", &lo, &hi, &points, &log_scale) == CB_ERR_PARSE);

  double grid[5];
  REQUIRE(cb_make_grid(1.0, 16.0, 5, 1, grid) == CB_OK);
  CHECK(grid[0] == 1.0);
  CHECK(grid[4] == 16.0);
  CHECK(grid[2] == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(cb_make_grid(1.0, 16.0, 1, 1, grid) == CB_ERR_INVALID_ARGUMENT);
}
