#include <cctype>
#include <cmath>

#include "core/constants.hpp"
#include "core/csv.hpp"
#include "core/manifest.hpp"
#include "core/scenario.hpp"
#include "doctest.h"

using namespace collapse;

TEST_CASE("presets load and validate") {
  for (const char* name : {"fig2", "fig3a", "fig3b", "fig3c", "fig3d", "fig4"}) {
    const ScenarioDoc doc = make_preset(name);
    CHECK_NOTHROW(doc.scenario.validate());
  }
  CHECK_THROWS_AS(make_preset("fig9"), validation_error);

  const ScenarioDoc fig2 = make_preset("fig2");
  CHECK(fig2.scenario.csl.lambda_csl == 1e-8);
  CHECK(fig2.scenario.n0 == 50.0);
  CHECK(fig2.scenario.trap.omega_m == constants::two_pi * 5000.0);
  CHECK(fig2.scenario.environment.pressure == 1e-10);  // 1e-12 mbar
  CHECK(fig2.scenario.cooling.has_value());
  // No reference field measurement ships with the preset: that term is opt-in.
  CHECK(!fig2.scenario.efield_ref.has_value());

  for (const char* name : {"fig3a", "fig3b", "fig3c", "fig3d"})
    CHECK(make_preset(name).sweep.has_value());

  const ScenarioDoc fig4 = make_preset("fig4");
  REQUIRE(fig4.optimize.has_value());
  CHECK(fig4.optimize->pressures.size() == 20);
  CHECK(fig4.optimize->T_ints.size() == 4);
  CHECK(fig4.optimize->omega_lo == constants::two_pi * 5000.0);
  CHECK(fig4.optimize->omega_hi == constants::two_pi * 10000.0);
}

TEST_CASE("serialize/parse round trip is a fixed point") {
  for (const char* name : {"fig2", "fig3a", "fig3b", "fig3c", "fig3d", "fig4"}) {
    const ScenarioDoc doc = make_preset(name);
    const std::string once = serialize_config(doc);
    const std::string twice = serialize_config(parse_config(once));
    CHECK(once == twice);
  }
}

TEST_CASE("canonical serialization uses SI keys only") {
  const std::string text = serialize_config(make_preset("fig2"));
  CHECK(text.find("pressure_Pa") != std::string::npos);
  CHECK(text.find("omega_m_rad_s") != std::string::npos);
  CHECK(text.find("charge_C") != std::string::npos);
  CHECK(text.find("pressure_mbar") == std::string::npos);
  CHECK(text.find("omega_m_hz") == std::string::npos);
  CHECK(text.find("charge_e") == std::string::npos);
}

TEST_CASE("unit-suffixed keys convert on load") {
  const ScenarioDoc doc = parse_config(R"({
    "environment": {"pressure_mbar": 1e-12, "gas_mass_amu": 2.016},
    "trap": {"omega_m_hz": 5000},
    "sphere": {"charge_e": 2}
  })");
  CHECK(doc.scenario.environment.pressure ==
        doctest::Approx(1e-10).epsilon(1e-15));
  CHECK(doc.scenario.environment.gas_mass ==
        doctest::Approx(2.016 * constants::m_amu).epsilon(1e-15));
  CHECK(doc.scenario.trap.omega_m == 5000.0 * constants::two_pi);
  CHECK(doc.scenario.sphere.charge ==
        doctest::Approx(2.0 * constants::e_charge).epsilon(1e-15));

  const ScenarioDoc si = parse_config(R"({
    "environment": {"pressure_Pa": 1e-10},
    "trap": {"omega_m_rad_s": 31415.926535897932}
  })");
  CHECK(si.scenario.environment.pressure == 1e-10);
  CHECK(si.scenario.trap.omega_m == 31415.926535897932);
}

TEST_CASE("strict schema") {
  CHECK_THROWS_AS(parse_config("{"), parse_failure);
  CHECK_THROWS_AS(parse_config("[1,2]"), validation_error);
  CHECK_THROWS_AS(parse_config(R"({"sphere": {"radius": 1e-7}})"),
                  validation_error);  // must be radius_m
  CHECK_THROWS_WITH_AS(
      parse_config(R"({"environment": {"pressure_mbar": 1, "pressure_Pa": 100}})"),
      doctest::Contains("must not both be given"), validation_error);
  CHECK_THROWS_AS(parse_config(R"({"sphere": {"radius_m": -1e-7}})"),
                  validation_error);
  CHECK_THROWS_AS(parse_config(R"({"trap": {"omega_m_hz": "fast"}})"),
                  validation_error);

  // Empty config falls back to the reference defaults.
  const ScenarioDoc doc = parse_config("{}");
  CHECK(doc.scenario.trap.omega_m == constants::two_pi * 5000.0);
  CHECK(doc.scenario.seed == 987654321);
  CHECK(!doc.sweep.has_value());
  CHECK(!doc.optimize.has_value());

  const ScenarioDoc seeded = parse_config(R"({"seed": 123, "t_evolve_s": 2.5})");
  CHECK(seeded.scenario.seed == 123);
  CHECK(seeded.scenario.t_evolve == 2.5);
}

TEST_CASE("gas convention key") {
  CHECK(parse_config(R"({"gas_diffusion_convention": "full"})")
            .scenario.gas_convention == GasDiffusionConvention::full);
  CHECK(parse_config("{}").scenario.gas_convention == GasDiffusionConvention::half);
  CHECK_THROWS_AS(parse_config(R"({"gas_diffusion_convention": "both"})"),
                  validation_error);
}

TEST_CASE("load_config: missing file") {
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), io_error);
}

TEST_CASE("range grammar") {
  GridSpec g = parse_range("1e-13..1e-9:20log");
  CHECK(g.lo == 1e-13);
  CHECK(g.hi == 1e-9);
  CHECK(g.points == 20);
  CHECK(g.log_scale);

  g = parse_range("0..1:5");
  CHECK(!g.log_scale);
  CHECK(g.points == 5);

  g = parse_range("2..4:3lin");
  CHECK(!g.log_scale);

  CHECK_THROWS_AS(parse_range("nonsense"), parse_failure);
  CHECK_THROWS_AS(parse_range("1..2"), parse_failure);
  CHECK_THROWS_AS(parse_range("1..2:3banana"), parse_failure);
  CHECK_THROWS_AS(parse_range("1..2:x"), parse_failure);
  CHECK_THROWS_AS(parse_range("2..1:5"), validation_error);   // lo >= hi
  CHECK_THROWS_AS(parse_range("1..2:1log"), validation_error); // < 2 points
  CHECK_THROWS_AS(parse_range("0..1:5log"), validation_error); // log needs lo > 0
}

TEST_CASE("grids") {
  const auto lin = make_grid({0.0, 1.0, 5, false});
  REQUIRE(lin.size() == 5);
  CHECK(lin.front() == 0.0);
  CHECK(lin.back() == 1.0);
  CHECK(lin[2] == doctest::Approx(0.5).epsilon(1e-15));

  const auto log = make_grid({1e-11, 1e-4, 40, true});
  REQUIRE(log.size() == 40);
  CHECK(log.front() == 1e-11);  // endpoints exact, not exp(log(...))
  CHECK(log.back() == 1e-4);
  for (std::size_t i = 1; i < log.size(); ++i) {
    CHECK(log[i] > log[i - 1]);
    // Constant ratio in a log grid.
    if (i >= 2)
      CHECK(log[i] / log[i - 1] ==
            doctest::Approx(log[1] / log[0]).epsilon(1e-12));
  }
}

TEST_CASE("axis names") {
  for (SweepAxis axis :
       {SweepAxis::pressure, SweepAxis::T_int, SweepAxis::omega_m,
        SweepAxis::radius, SweepAxis::lambda_csl, SweepAxis::t_evolve})
    CHECK(axis_from_name(axis_name(axis)) == axis);
  CHECK_THROWS_AS(axis_from_name("voltage"), validation_error);
}

TEST_CASE("config digest and manifest") {
  const ScenarioDoc fig2 = make_preset("fig2");
  const std::string d1 = config_digest(fig2);
  CHECK(d1.size() == 16);
  for (char ch : d1) CHECK(std::isxdigit(static_cast<unsigned char>(ch)));
  CHECK(config_digest(fig2) == d1);
  CHECK(config_digest(make_preset("fig3a")) != d1);

  ScenarioDoc tweaked = fig2;
  tweaked.scenario.environment.T_int = 66.0;
  CHECK(config_digest(tweaked) != d1);

  const std::string m = manifest_json(fig2, "budget", 42);
  CHECK(m.find("\"config_digest\": \"" + d1 + "\"") != std::string::npos);
  CHECK(m.find("\"subcommand\": \"budget\"") != std::string::npos);
  CHECK(m.find("\"seed\": 42") != std::string::npos);
  CHECK(m.find("timestamp_utc") != std::string::npos);
}

TEST_CASE("csv formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(350.0) == "350");
  CHECK(format_double(1e-10) == "1e-10");
  // Shortest representation still round-trips exactly.
  const double ugly = 0.1 + 0.2;
  CHECK(std::stod(format_double(ugly)) == ugly);

  Trajectory traj;
  traj.times = {0.0, 0.5};
  traj.mean_n = {50.0, 62.5};
  CHECK(trajectory_csv(traj) == "t_s,mean_n\n0,50\n0.5,62.5\n");

  SweepRow r;
  r.axis_value = 1e-10;
  r.n_csl = 2.0;
  r.n_cqm = 1.0;
  r.ratio = 2.0;
  const std::string sweep = sweep_csv("pressure", {r});
  CHECK(sweep.find("axis,axis_value,n_csl,n_cqm,ratio,D_gas,D_bb,D_csl,"
                   "Gamma_total\n") == 0);
  CHECK(sweep.find("pressure,1e-10,2,1,2,") != std::string::npos);

  CHECK_THROWS_AS(write_file("/nonexistent_dir/x.csv", "a"), io_error);
}

TEST_CASE("scenario budgets") {
  Scenario s = make_preset("fig2").scenario;
  const NoiseBudget with = s.budget();
  const NoiseBudget without = s.budget_with_lambda(0.0);
  CHECK(with.D_csl > 0.0);
  CHECK(without.D_csl == 0.0);
  CHECK(with.D_efield == 0.0);  // no reference field block in the preset
  CHECK(with.Gamma_total == without.Gamma_total);

  s.efield_ref = EfieldRef{};
  CHECK(s.budget().D_efield > 0.0);
  CHECK(s.budget().D_diff_total > with.D_diff_total);
}
