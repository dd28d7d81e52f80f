#include <cmath>

#include "core/constants.hpp"
#include "core/rates.hpp"
#include "doctest.h"

using namespace collapse;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("sphere mass") {
  CHECK(rel(sphere_mass(Sphere{}), 9.6342174710086993e-18) < 1e-14);

  Sphere bad;
  bad.radius = -1e-7;
  CHECK_THROWS_AS(sphere_mass(bad), validation_error);
  bad = Sphere{};
  bad.density = 0.0;
  CHECK_THROWS_AS(sphere_mass(bad), validation_error);
}

TEST_CASE("collapse form factor: reference points") {
  const double m = sphere_mass(Sphere{});
  const double m0 = constants::m_amu;
  const double scale = (m / m0) * (m / m0);

  // x = (R/r_c)^2 = 1
  CHECK(rel(alpha_sphere(100e-9, 100e-9, m) / scale, 0.31091497054298089) < 1e-13);
  // x = 1e-6: series branch
  CHECK(rel(alpha_sphere(1e-10, 100e-9, m) / scale, 0.499999750000075) < 1e-13);
}

TEST_CASE("collapse form factor: limits") {
  const double m = sphere_mass(Sphere{});
  const double m0 = constants::m_amu;
  const double scale = (m / m0) * (m / m0);

  // Small-sphere limit 1/2.
  CHECK(rel(alpha_sphere(1e-13, 100e-9, m) / scale, 0.5) < 1e-9);

  // Large-sphere limit 3 (r_c/R)^4.
  const double R = 100.0 * 100e-9;
  const double big = alpha_sphere(R, 100e-9, m) / scale;
  CHECK(rel(big * std::pow(R / 100e-9, 4), 3.0) < 1e-3);
  CHECK(rel(big * std::pow(R / 100e-9, 4), 2.9994) < 1e-3);
}

TEST_CASE("collapse form factor: series/direct branch continuity") {
  const double r_c = 100e-9;
  const double m = sphere_mass(Sphere{});
  const double below = alpha_sphere(r_c * std::sqrt(0.0099999), r_c, m);
  const double above = alpha_sphere(r_c * std::sqrt(0.0100001), r_c, m);
  CHECK(rel(below, above) < 1e-5);
}

TEST_CASE("collapse diffusion") {
  const Sphere s;
  const Trap t;
  CHECK(rel(csl_diffusion(s, t, CslParams{1e-8, 100e-9}), 3646.5835819627268) <
        1e-12);

  CHECK(csl_diffusion(s, t, CslParams{0.0, 100e-9}) == 0.0);
  CHECK_THROWS_AS(csl_diffusion(s, t, CslParams{-1.0, 100e-9}), validation_error);
  CHECK_THROWS_AS(csl_diffusion(s, t, CslParams{1e-8, 0.0}), validation_error);
}

TEST_CASE("gas collisions") {
  CHECK(rel(mean_gas_speed(300.0, constants::m_H2), 1775.0293817647289) < 1e-14);
  CHECK(rel(mean_gas_speed(4.0, constants::m_H2), 204.96273827627224) < 1e-14);

  const Sphere s;
  const Environment e;
  const Trap t;
  const double gamma = gas_damping(e, s);
  CHECK(rel(gamma, 1.0803571720597074e-8) < 1e-13);
  CHECK(rel(gas_diffusion(1e-8, e, t), 0.083346476544378278) < 1e-13);
  CHECK(rel(gas_diffusion(gamma, e, t), 0.090043963700625249) < 1e-13);

  // Convention switch: "full" drops the factor 1/2.
  CHECK(rel(gas_diffusion(gamma, e, t, GasDiffusionConvention::full),
            2.0 * gas_diffusion(gamma, e, t)) < 1e-15);

  Environment vacuum = e;
  vacuum.pressure = 0.0;
  CHECK(gas_damping(vacuum, s) == 0.0);
}

TEST_CASE("blackbody emission and absorption") {
  const Sphere s;
  const Environment e;
  const Trap t;
  const double g_e = bb_damping(e.T_int, s, t);
  const double g_a = bb_damping(e.T_env, s, t);
  CHECK(rel(g_e, 2.5842077985154437e-6) < 1e-13);
  CHECK(rel(g_a, 1.4034832725596403e-13) < 1e-13);
  // (65/4)^6 between the rates.
  CHECK(rel(g_e / g_a, std::pow(65.0 / 4.0, 6)) < 1e-12);
  // The emission response is calibrated so this lands exactly on 350.
  CHECK(bb_diffusion(g_e, g_a, e, t) == 350.0);
}

TEST_CASE("field-gradient reference heating") {
  const Sphere s;
  const Trap t;
  CHECK(rel(efield_heating_translate(EfieldRef{}, s, t), 9.100527674439168e-5) <
        1e-13);
  EfieldRef bad;
  bad.omega = 0.0;
  CHECK_THROWS_AS(efield_heating_translate(bad, s, t), validation_error);
}

TEST_CASE("bulk temperature") {
  const Sphere s;
  const Environment e;
  // No laser: bulk equilibrates to the chamber.
  CHECK(bulk_temperature(0.0, 1064e-9, s, e) == doctest::Approx(4.0).epsilon(1e-12));
  // Monotone in intensity.
  const double t1 = bulk_temperature(1e5, 1064e-9, s, e);
  const double t2 = bulk_temperature(5e5, 1064e-9, s, e);
  CHECK(t2 > t1);
  CHECK(t1 > 4.0);

  Sphere dark = s;
  dark.emissivity = 0.0;
  CHECK_THROWS_AS(bulk_temperature(1e5, 1064e-9, dark, e), validation_error);
}

TEST_CASE("assembled budget: reference scenario numbers") {
  const Sphere s;
  const Environment e;
  const Trap t;

  const NoiseBudget csl =
      assemble_budget(s, e, t, CslParams{1e-8, 100e-9}, std::nullopt);
  CHECK(rel(csl.D_csl, 3646.5835819627268) < 1e-12);
  CHECK(csl.D_bb == 350.0);
  CHECK(rel(csl.D_gas, 0.090043963700625249) < 1e-13);
  CHECK(csl.D_efield == 0.0);  // no reference measurement supplied
  CHECK(rel(csl.Gamma_total, 6.4875287764609202e-7) < 1e-13);
  CHECK(rel(csl.D_diff_total, 3996.6736259264274) < 1e-13);

  const NoiseBudget cqm =
      assemble_budget(s, e, t, CslParams{0.0, 100e-9}, std::nullopt);
  CHECK(cqm.D_csl == 0.0);
  CHECK(rel(cqm.D_diff_total, 350.09004396370063) < 1e-13);
  CHECK(cqm.Gamma_total == csl.Gamma_total);

  // Totals are the stated combinations of the parts.
  CHECK(csl.D_diff_total ==
        doctest::Approx(csl.D_gas + csl.D_bb + csl.D_csl + csl.D_efield)
            .epsilon(1e-15));
  CHECK(csl.Gamma_total ==
        doctest::Approx((csl.gamma_gas + csl.gamma_bb_e + csl.gamma_bb_a) / 4.0)
            .epsilon(1e-15));

  // A reference measurement switches the field term on without touching the
  // damping rates.
  const NoiseBudget with_ef =
      assemble_budget(s, e, t, CslParams{1e-8, 100e-9}, EfieldRef{});
  CHECK(rel(with_ef.D_efield, 9.100527674439168e-5) < 1e-13);
  CHECK(with_ef.Gamma_total == csl.Gamma_total);
  CHECK(rel(with_ef.D_diff_total, csl.D_diff_total + with_ef.D_efield) < 1e-15);
}

TEST_CASE("validation wiring") {
  Sphere s;
  s.radius = -1.0;
  CHECK_THROWS_AS(s.validate(), validation_error);

  Environment e;
  e.pressure = 1e-10;
  e.T_env = 0.0;
  CHECK_THROWS_AS(gas_damping(e, Sphere{}), validation_error);
}
