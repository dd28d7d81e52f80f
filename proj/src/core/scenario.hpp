#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/cooling.hpp"
#include "core/rates.hpp"
#include "core/types.hpp"

namespace collapse {

// Config text that is not valid JSON (as opposed to valid JSON violating an
// invariant, which raises validation_error).
struct parse_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SweepAxis { pressure, T_int, omega_m, radius, lambda_csl, t_evolve };

const char* axis_name(SweepAxis axis);
SweepAxis axis_from_name(const std::string& name);

// Inclusive endpoint grid; log grids are exactly geometric.
struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  int points = 2;
  bool log_scale = false;

  void validate(const std::string& what) const {
    require(points >= 2, what + ".points must be >= 2");
    require(lo < hi, what + ".lo must be < .hi");
    if (log_scale) require(lo > 0.0, what + ".lo must be > 0 for log scale");
  }
};

std::vector<double> make_grid(const GridSpec& spec);

// Range grammar "lo..hi:Npts" with optional trailing "log" or "lin"
// (default lin), e.g. "1e-13..1e-9:20log".
GridSpec parse_range(const std::string& text);

// Sweep request bundled with a scenario document (axis values in the internal
// units: Pa, K, rad/s, m, 1/s, s).
struct SweepBlock {
  SweepAxis axis = SweepAxis::pressure;
  GridSpec grid;
};

// Geometry-and-rate search settings; everything in internal units.
struct OptimizeBlock {
  double ratio_threshold = 1.2;
  double horizon = 100.0; // s
  double n0 = 50.0;
  double R_lo = 5e-9, R_hi = 1e-6;  // m
  double omega_lo = 0.0, omega_hi = 0.0; // rad/s, defaults set in the ctor
  double lambda_lo = 1e-16, lambda_hi = 1e-4; // 1/s
  int grid_R = 16, grid_omega = 16;
  std::vector<double> pressures; // Pa
  std::vector<double> T_ints;    // K

  OptimizeBlock();
  void validate() const;
};

struct Scenario {
  Sphere sphere;
  Environment environment;
  Trap trap;
  CslParams csl;
  std::optional<CavityParams> cooling;
  std::optional<EfieldRef> efield_ref;
  GasDiffusionConvention gas_convention = GasDiffusionConvention::half;
  double n0 = 50.0;      // phonons at handover
  double t_evolve = 1.0; // s
  std::uint64_t seed = 987654321;

  void validate() const;
  NoiseBudget budget() const;                    // with the scenario's lambda
  NoiseBudget budget_with_lambda(double lambda_csl) const;
};

// A config document: scenario plus optional sweep/optimize blocks so the
// bundled presets regenerate a whole analysis with one command.
struct ScenarioDoc {
  Scenario scenario;
  std::optional<SweepBlock> sweep;
  std::optional<OptimizeBlock> optimize;
};

ScenarioDoc parse_config(const std::string& json_text);
ScenarioDoc load_config(const std::string& path);

// Canonical form: sorted keys, every field explicit, SI/angular units only
// (pressure_Pa, *_rad_s, charge_C, ...). load(serialize(x)) == x exactly.
std::string serialize_config(const ScenarioDoc& doc);

std::vector<std::string> preset_names();
ScenarioDoc make_preset(const std::string& name);

// Overwrite the given axis with an internal-unit value.
void apply_axis(Scenario& s, SweepAxis axis, double value);
double read_axis(const Scenario& s, SweepAxis axis);

}  // namespace collapse
