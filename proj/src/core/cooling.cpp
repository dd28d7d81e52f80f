#include "core/cooling.hpp"

#include <cmath>
#include <limits>

#include "core/constants.hpp"
#include "core/rates.hpp"

namespace collapse {

namespace k = constants;

double bessel_j0(double x) {
  // Even function; cyl_bessel_j takes x >= 0.
  return std::cyl_bessel_j(0.0, std::abs(x));
}

double optomech_coupling(const CavityParams& cav, const Sphere& sphere) {
  cav.validate();
  sphere.validate();
  const double m = sphere_mass(sphere);
  const double R = sphere.radius;
  const double V = (4.0 / 3.0) * k::pi * R * R * R;
  const double pol = (3.0 * V / (2.0 * cav.V_c)) *
                     (cav.eps_r - 1.0) / (cav.eps_r + 2.0) * cav.omega_l;
  return (1.0 - bessel_j0(4.0 * cav.k * cav.X_d)) / (2.0 * m * cav.omega_c) *
         k::hbar * cav.k * cav.k * cav.a_c_sq * pol * pol;
}

double cooling_rate(double g_sq, const CavityParams& cav) {
  require(g_sq >= 0.0, "cooling_rate: g_sq must be >= 0");
  const double quarter_k2 = cav.kappa * cav.kappa / 4.0;
  const double lo = cav.Delta + cav.omega_c;
  const double hi = cav.Delta - cav.omega_c;
  // Sideband asymmetry: the anti-Stokes pole at Delta = -omega_c minus the
  // Stokes pole at Delta = +omega_c, so red detuning cools (positive rate).
  return g_sq * cav.k *
         (1.0 / (lo * lo + quarter_k2) - 1.0 / (hi * hi + quarter_k2));
}

double steady_state_phonons(const CavityParams& cav, double Gamma_minus) {
  require(Gamma_minus > 0.0, "steady_state_phonons: Gamma_minus must be > 0");
  const double floor = (cav.kappa + cav.kappa_sc) / (4.0 * cav.omega_c);
  return floor * floor + (cav.Gamma_sc + cav.Gamma_others) / Gamma_minus;
}

double cooling_transient(double N_therm, double N_ss, double Gamma_minus, double t) {
  require(N_therm >= 0.0, "cooling_transient: N_therm must be >= 0");
  require(N_ss >= 0.0, "cooling_transient: N_ss must be >= 0");
  require(Gamma_minus >= 0.0, "cooling_transient: Gamma_minus must be >= 0");
  require(t >= 0.0, "cooling_transient: t must be >= 0");
  const double decay = std::exp(-Gamma_minus * t);
  return N_therm * decay + N_ss * (1.0 - decay);
}

double initial_phonons(double N_ss, const CavityParams& cav, const Sphere& sphere) {
  require(N_ss >= 0.0, "initial_phonons: N_ss must be >= 0");
  require(cav.omega_s > 0.0, "cooling.omega_s must be > 0");
  require(cav.omega_c > 0.0, "cooling.omega_c must be > 0");
  const double m = sphere_mass(sphere);
  const double kick = m * cav.omega_s * cav.delta_x * cav.delta_x / (2.0 * k::hbar);
  return N_ss * cav.omega_c / cav.omega_s + kick;
}

CoolingResult cooling_report(const CavityParams& cav, const Sphere& sphere,
                             const Environment& env) {
  cav.validate();
  CoolingResult r;
  r.g_sq = optomech_coupling(cav, sphere);
  r.Gamma_minus = cooling_rate(r.g_sq, cav);
  if (cav.Delta >= 0.0)
    r.warnings.push_back(
        "detuning is not red (Delta >= 0): the cooling rate is not positive");
  if (cav.delta_x > 0.5e-9)
    r.warnings.push_back(
        "trap-center misalignment exceeds 0.5 nm: the handover kick dominates n0");
  if (r.Gamma_minus > 0.0) {
    r.N_ss = steady_state_phonons(cav, r.Gamma_minus);
    r.n0 = initial_phonons(r.N_ss, cav, sphere);
  } else {
    r.N_ss = std::numeric_limits<double>::quiet_NaN();
    r.n0 = std::numeric_limits<double>::quiet_NaN();
  }
  r.T_bulk = bulk_temperature(cav.I0, cav.lambda_laser, sphere, env);
  return r;
}

}  // namespace collapse
