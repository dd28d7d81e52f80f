#include "core/rates.hpp"

#include <cmath>

#include "core/constants.hpp"

namespace collapse {

namespace k = constants;

double sphere_mass(const Sphere& sphere) {
  require(sphere.radius > 0.0, "sphere.radius must be > 0");
  require(sphere.density > 0.0, "sphere.density must be > 0");
  const double R = sphere.radius;
  return (4.0 / 3.0) * k::pi * R * R * R * sphere.density;
}

namespace {

// Bracket of the sphere geometry factor, f(x) = e^-x - 1 + (x/2)(e^-x + 1).
// Direct evaluation loses all significant digits below x ~ 1e-4; the Taylor
// series f = sum_{j>=3} (-1)^j (2-j) x^j / (2 j!) converges fast and the
// truncation below keeps the branch-agreement error under 1e-12 at the
// x = 1e-2 switch point.
double alpha_bracket(double x) {
  if (x < 1e-2) {
    return x * x * x *
           (1.0 / 12.0 +
            x * (-1.0 / 24.0 +
                 x * (1.0 / 80.0 +
                      x * (-1.0 / 360.0 +
                           x * (1.0 / 2016.0 + x * (-1.0 / 13440.0))))));
  }
  const double ex = std::exp(-x);
  return ex - 1.0 + 0.5 * x * (ex + 1.0);
}

}  // namespace

double alpha_sphere(double R, double r_c, double mass) {
  require(R > 0.0, "alpha_sphere: R must be > 0");
  require(r_c > 0.0, "alpha_sphere: r_c must be > 0");
  require(mass > 0.0, "alpha_sphere: mass must be > 0");
  const double x = (R / r_c) * (R / r_c);
  const double ratio = mass / k::m_amu;
  return ratio * ratio * alpha_bracket(x) * 6.0 / (x * x * x);
}

double csl_diffusion(const Sphere& sphere, const Trap& trap, const CslParams& csl) {
  sphere.validate();
  trap.validate();
  csl.validate();
  if (csl.lambda_csl == 0.0) return 0.0;
  const double m = sphere_mass(sphere);
  const double alpha = alpha_sphere(sphere.radius, csl.r_c, m);
  return k::hbar / (m * trap.omega_m) * (csl.lambda_csl / (csl.r_c * csl.r_c)) * alpha;
}

double mean_gas_speed(double T, double gas_mass) {
  require(T >= 0.0, "mean_gas_speed: T must be >= 0");
  require(gas_mass > 0.0, "mean_gas_speed: gas_mass must be > 0");
  return std::sqrt(8.0 * k::k_B * T / (k::pi * gas_mass));
}

double gas_damping(const Environment& env, const Sphere& sphere) {
  env.validate();
  sphere.validate();
  if (env.pressure == 0.0) return 0.0;
  require(env.T_env > 0.0, "environment.T_env must be > 0 when pressure > 0");
  const double v_g = mean_gas_speed(env.T_env, env.gas_mass);
  return 16.0 * env.pressure / (k::pi * v_g * sphere.radius * sphere.density);
}

double gas_diffusion(double gamma_g, const Environment& env, const Trap& trap,
                     GasDiffusionConvention conv) {
  require(gamma_g >= 0.0, "gas_diffusion: gamma_g must be >= 0");
  trap.validate();
  const double denom =
      (conv == GasDiffusionConvention::half ? 2.0 : 1.0) * k::hbar * trap.omega_m;
  return gamma_g * k::k_B * env.T_env / denom;
}

double bb_damping(double T_i, const Sphere& sphere, const Trap& trap) {
  require(T_i >= 0.0, "bb_damping: T_i must be >= 0");
  sphere.validate();
  trap.validate();
  const double kT = k::k_B * T_i;
  const double kT6 = kT * kT * kT * kT * kT * kT;
  const double pi4 = k::pi * k::pi * k::pi * k::pi;
  const double c5 = k::c * k::c * k::c * k::c * k::c;
  return (2.0 * pi4 / 63.0) * kT6 /
         (c5 * k::hbar * sphere.density * trap.omega_m) * sphere.bb_response_im;
}

double bb_diffusion(double gamma_bb_e, double gamma_bb_a, const Environment& env,
                    const Trap& trap) {
  require(gamma_bb_e >= 0.0, "bb_diffusion: gamma_bb_e must be >= 0");
  require(gamma_bb_a >= 0.0, "bb_diffusion: gamma_bb_a must be >= 0");
  trap.validate();
  return k::k_B * (gamma_bb_e * env.T_int + gamma_bb_a * env.T_env) /
         (2.0 * k::hbar * trap.omega_m);
}

double efield_heating_translate(const EfieldRef& ref, const Sphere& sphere,
                                const Trap& trap) {
  ref.validate();
  sphere.validate();
  trap.validate();
  const double m = sphere_mass(sphere);
  const double q = sphere.charge;
  return ref.rate * (q * q * ref.mass * ref.omega) /
         (ref.q * ref.q * m * trap.omega_m);
}

double bulk_temperature(double I0, double lambda_laser, const Sphere& sphere,
                        const Environment& env) {
  require(I0 >= 0.0, "bulk_temperature: I0 must be >= 0");
  require(lambda_laser > 0.0, "bulk_temperature: lambda_laser must be > 0");
  sphere.validate();
  env.validate();
  if (I0 > 0.0)
    require(sphere.emissivity > 0.0,
            "sphere.emissivity must be > 0 under laser illumination");
  const double e1 = sphere.eps1, e2 = sphere.eps2;
  const double pi3 = k::pi * k::pi * k::pi;
  const double absorbed =
      I0 * 4.0 * pi3 * sphere.radius /
      (sphere.emissivity * k::sigma_SB * lambda_laser) *
      3.0 * e2 / ((e1 + 2.0) * (e1 + 2.0) + e2 * e2);
  const double T4 = env.T_env * env.T_env * env.T_env * env.T_env;
  return std::pow(absorbed + T4, 0.25);
}

NoiseBudget assemble_budget(const Sphere& sphere, const Environment& env,
                            const Trap& trap, const CslParams& csl,
                            const std::optional<EfieldRef>& efield,
                            GasDiffusionConvention conv) {
  sphere.validate();
  env.validate();
  trap.validate();
  csl.validate();

  NoiseBudget b;
  b.gamma_gas = gas_damping(env, sphere);
  b.gamma_bb_e = bb_damping(env.T_int, sphere, trap);
  b.gamma_bb_a = bb_damping(env.T_env, sphere, trap);
  b.D_gas = gas_diffusion(b.gamma_gas, env, trap, conv);
  b.D_bb = bb_diffusion(b.gamma_bb_e, b.gamma_bb_a, env, trap);
  b.D_csl = csl_diffusion(sphere, trap, csl);
  b.D_efield = efield ? efield_heating_translate(*efield, sphere, trap) : 0.0;
  b.D_pos = 0.0;
  b.Gamma_total = (b.gamma_gas + b.gamma_bb_e + b.gamma_bb_a) / 4.0;
  b.D_diff_total = b.D_gas + b.D_bb + b.D_csl + b.D_efield;
  return b;
}

}  // namespace collapse
