#pragma once

#include <optional>

#include "core/types.hpp"

namespace collapse {

// Main-text convention divides by 2*hbar*omega; the alternate bookkeeping
// found in some treatments drops the factor 2.
enum class GasDiffusionConvention { half, full };

// Measured electric-field heating rate on a reference trapped particle,
// rescaled to the sphere by q^2/(m*omega). Defaults describe a typical
// singly-charged atomic-ion measurement: ~10 phonons/s at 88 amu and
// 2*pi*3 MHz.
struct EfieldRef {
  double rate = 10.0;                          // phonons/s at the reference
  double q = 1.602176634e-19;                  // C
  double mass = 88.0 * 1.66053906660e-27;      // kg
  double omega = 2.0 * 3.141592653589793238462643383279502884 * 3e6; // rad/s

  void validate() const {
    require(rate >= 0.0, "efield_ref.rate must be >= 0");
    require(q != 0.0, "efield_ref.q must be nonzero");
    require(mass > 0.0, "efield_ref.mass must be > 0");
    require(omega > 0.0, "efield_ref.omega must be > 0");
  }
};

// Solid-sphere mass (4/3) pi R^3 d.
double sphere_mass(const Sphere& sphere);

// Geometry factor converting the single-nucleon collapse rate into
// center-of-mass momentum diffusion of a sphere:
//   alpha = (m/m0)^2 * [e^-x - 1 + (x/2)(e^-x + 1)] * 6/x^3,  x = R^2/r_c^2.
// A Taylor branch takes over at small x where the bracket cancels
// catastrophically. Limits: alpha/(m/m0)^2 -> 1/2 (x -> 0), -> 3/x^2 (x -> inf).
double alpha_sphere(double R, double r_c, double mass);

// Collapse-induced momentum diffusion: hbar/(m omega) * (lambda/r_c^2) * alpha.
double csl_diffusion(const Sphere& sphere, const Trap& trap, const CslParams& csl);

// Mean thermal speed sqrt(8 k_B T / (pi m_gas)).
double mean_gas_speed(double T, double gas_mass);

// Gas collision damping gamma_g = 16 P / (pi v_g R d).
double gas_damping(const Environment& env, const Sphere& sphere);

// Gas diffusion gamma_g k_B T_env / (2 hbar omega) (or without the 2).
double gas_diffusion(double gamma_g, const Environment& env, const Trap& trap,
                     GasDiffusionConvention conv = GasDiffusionConvention::half);

// Blackbody damping at radiation temperature T_i; the band-averaged response
// and its dimensional fudge live in sphere.bb_response_im (see types.hpp).
double bb_damping(double T_i, const Sphere& sphere, const Trap& trap);

// Blackbody diffusion k_B (gamma_e T_int + gamma_a T_env) / (2 hbar omega).
double bb_diffusion(double gamma_bb_e, double gamma_bb_a, const Environment& env,
                    const Trap& trap);

// Rescale a measured reference heating rate to the sphere:
//   rate_ref * (q^2 m_ref omega_ref) / (q_ref^2 m omega).
double efield_heating_translate(const EfieldRef& ref, const Sphere& sphere,
                                const Trap& trap);

// Steady-state bulk temperature under laser intensity I0:
//   ( I0 * 4 pi^3 R / (e sigma lambda) * 3 eps2 / ((eps1+2)^2 + eps2^2)
//     + T_env^4 )^(1/4).
double bulk_temperature(double I0, double lambda_laser, const Sphere& sphere,
                        const Environment& env);

// Populate every field of the budget; D_efield defaults to 0 when no
// reference measurement is supplied.
NoiseBudget assemble_budget(const Sphere& sphere, const Environment& env,
                            const Trap& trap, const CslParams& csl,
                            const std::optional<EfieldRef>& efield = std::nullopt,
                            GasDiffusionConvention conv = GasDiffusionConvention::half);

}  // namespace collapse
