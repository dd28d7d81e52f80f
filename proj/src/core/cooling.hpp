#pragma once

#include <string>
#include <vector>

#include "core/types.hpp"

namespace collapse {

// Cavity-cooling stage parameters. Frequencies are angular (rad/s).
struct CavityParams {
  double kappa = 0.0;         // cavity linewidth
  double kappa_sc = 0.0;      // scattering loss
  double Delta = 0.0;         // detuning; Delta < 0 is red (cooling)
  double omega_c = 0.0;       // mechanical frequency in the optical well
  double omega_s = 0.0;       // secular frequency (equals Trap.omega_m)
  double omega_l = 0.0;       // laser frequency
  double k = 0.0;             // laser wavenumber, 1/m
  double a_c_sq = 0.0;        // intracavity photon number
  double V_c = 0.0;           // cavity mode volume, m^3
  double X_d = 0.0;           // AC drive amplitude, m
  double eps_r = 0.0;         // relative permittivity at the laser wavelength
  double Gamma_sc = 0.0;      // phonons/s, scattering heating
  double Gamma_others = 0.0;  // phonons/s, everything else
  double N_therm = 0.0;       // phonons, pre-cooling occupation
  double delta_x = 0.0;       // m, trap-center misalignment
  double I0 = 0.0;            // W/m^2, laser intensity at the sphere
  double lambda_laser = 0.0;  // m

  void validate() const {
    require(kappa > 0.0, "cooling.kappa must be > 0");
    require(omega_c > 0.0, "cooling.omega_c must be > 0");
    require(omega_s > 0.0, "cooling.omega_s must be > 0");
    require(omega_l > 0.0, "cooling.omega_l must be > 0");
    require(k > 0.0, "cooling.k must be > 0");
    require(V_c > 0.0, "cooling.V_c must be > 0");
    require(kappa_sc >= 0.0, "cooling.kappa_sc must be >= 0");
    require(a_c_sq >= 0.0, "cooling.a_c_sq must be >= 0");
    require(Gamma_sc >= 0.0, "cooling.Gamma_sc must be >= 0");
    require(Gamma_others >= 0.0, "cooling.Gamma_others must be >= 0");
    require(N_therm >= 0.0, "cooling.N_therm must be >= 0");
    require(delta_x >= 0.0, "cooling.delta_x must be >= 0");
    require(I0 >= 0.0, "cooling.I0 must be >= 0");
    require(lambda_laser > 0.0, "cooling.lambda_laser must be > 0");
  }
};

struct CoolingResult {
  double g_sq = 0.0;        // (rad/s)^2
  double Gamma_minus = 0.0; // 1/s
  double N_ss = 0.0;        // phonons
  double T_bulk = 0.0;      // K
  double n0 = 0.0;          // phonons handed to the free-heating stage
  std::vector<std::string> warnings;
};

// Zeroth-order Bessel function of the first kind; |error| < 1e-12 on |x| <= 50.
double bessel_j0(double x);

// Optomechanical coupling squared:
//   (1 - J0(4 k X_d)) / (2 m omega_c) * hbar k^2 a_c^2
//     * (3V/(2V_c) * (eps_r - 1)/(eps_r + 2) * omega_l)^2.
double optomech_coupling(const CavityParams& cav, const Sphere& sphere);

// Time-averaged sideband cooling rate. Red detuning (Delta < 0) gives
// Gamma_minus > 0; antisymmetric under Delta -> -Delta.
double cooling_rate(double g_sq, const CavityParams& cav);

// ((kappa+kappa_sc)/(4 omega_c))^2 + (Gamma_sc + Gamma_others)/Gamma_minus.
double steady_state_phonons(const CavityParams& cav, double Gamma_minus);

// N_therm e^(-G t) + N_ss (1 - e^(-G t)).
double cooling_transient(double N_therm, double N_ss, double Gamma_minus, double t);

// Occupation after handover to the bare trap: N_ss omega_c/omega_s plus the
// misalignment kick m omega_s delta_x^2 / (2 hbar). The kick bound is used as
// the point estimate; real kicks can only raise it.
double initial_phonons(double N_ss, const CavityParams& cav, const Sphere& sphere);

// Full cooling-stage report: coupling, rate, steady state, laser-heated bulk
// temperature, and the initial occupation for the free-heating stage.
// Collects validation warnings (blue detuning, delta_x beyond 0.5 nm) instead
// of failing.
CoolingResult cooling_report(const CavityParams& cav, const Sphere& sphere,
                             const Environment& env);

}  // namespace collapse
