#include "core/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "core/constants.hpp"

namespace collapse {

namespace k = constants;
using nlohmann::json;

const char* axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::pressure: return "pressure";
    case SweepAxis::T_int: return "T_int";
    case SweepAxis::omega_m: return "omega_m";
    case SweepAxis::radius: return "radius";
    case SweepAxis::lambda_csl: return "lambda_csl";
    case SweepAxis::t_evolve: return "t_evolve";
  }
  return "?";
}

SweepAxis axis_from_name(const std::string& name) {
  for (auto a : {SweepAxis::pressure, SweepAxis::T_int, SweepAxis::omega_m,
                 SweepAxis::radius, SweepAxis::lambda_csl, SweepAxis::t_evolve})
    if (name == axis_name(a)) return a;
  throw validation_error("unknown sweep axis '" + name +
                         "' (expected pressure, T_int, omega_m, radius, "
                         "lambda_csl or t_evolve)");
}

std::vector<double> make_grid(const GridSpec& spec) {
  spec.validate("grid");
  std::vector<double> g(static_cast<std::size_t>(spec.points));
  const int n = spec.points;
  if (spec.log_scale) {
    const double llo = std::log(spec.lo), lhi = std::log(spec.hi);
    for (int i = 0; i < n; ++i)
      g[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
  } else {
    for (int i = 0; i < n; ++i)
      g[i] = spec.lo + (spec.hi - spec.lo) * i / (n - 1);
  }
  g.front() = spec.lo; // endpoints exact
  g.back() = spec.hi;
  return g;
}

GridSpec parse_range(const std::string& text) {
  // Malformed text is a parse failure; a well-formed range with bad values
  // (hi <= lo, too few points) is a validation error from GridSpec.
  const auto bad = [&](const std::string& why) {
    return parse_failure("bad range '" + text + "': " + why +
                         " (expected lo..hi:Npts[log|lin])");
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw bad("missing '..'");
  const auto colon = text.find(':', dots + 2);
  if (colon == std::string::npos) throw bad("missing ':Npts'");

  GridSpec spec;
  std::string count = text.substr(colon + 1);
  if (count.size() >= 3 && count.ends_with("log")) {
    spec.log_scale = true;
    count.resize(count.size() - 3);
  } else if (count.size() >= 3 && count.ends_with("lin")) {
    spec.log_scale = false;
    count.resize(count.size() - 3);
  }
  try {
    std::size_t used = 0;
    spec.lo = std::stod(text.substr(0, dots), &used);
    if (used != dots) throw bad("unparsed text in lo");
    const std::string hi_text = text.substr(dots + 2, colon - dots - 2);
    spec.hi = std::stod(hi_text, &used);
    if (used != hi_text.size()) throw bad("unparsed text in hi");
    spec.points = std::stoi(count, &used);
    if (used != count.size()) throw bad("unparsed text in point count");
  } catch (const parse_failure&) {
    throw;
  } catch (const std::exception&) {
    throw bad("not a number");
  }
  spec.validate("range");
  return spec;
}

OptimizeBlock::OptimizeBlock()
    : omega_lo(k::two_pi * 100.0), omega_hi(k::two_pi * 1e6) {}

void OptimizeBlock::validate() const {
  require(ratio_threshold > 1.0, "optimize.ratio_threshold must be > 1");
  require(horizon > 0.0, "optimize.horizon_s must be > 0");
  require(n0 >= 0.0, "optimize.n0 must be >= 0");
  require(R_lo > 0.0 && R_lo <= R_hi, "optimize.radius_bounds_m must be positive and ordered");
  require(omega_lo > 0.0 && omega_lo <= omega_hi,
          "optimize.omega bounds must be positive and ordered");
  require(lambda_lo > 0.0 && lambda_lo < lambda_hi,
          "optimize.lambda_bracket_hz must be positive and ordered");
  require(grid_R >= 2 && grid_omega >= 2, "optimize.grid_points must be >= 2");
  require(!pressures.empty(), "optimize.pressures_Pa must be nonempty");
  require(!T_ints.empty(), "optimize.T_ints_K must be nonempty");
  for (double p : pressures) require(p >= 0.0, "optimize.pressures_Pa must be >= 0");
  for (double t : T_ints) require(t >= 0.0, "optimize.T_ints_K must be >= 0");
}

void Scenario::validate() const {
  sphere.validate();
  environment.validate();
  trap.validate();
  csl.validate();
  if (cooling) cooling->validate();
  if (efield_ref) efield_ref->validate();
  require(n0 >= 0.0, "n0 must be >= 0");
  require(t_evolve >= 0.0, "t_evolve_s must be >= 0");
}

NoiseBudget Scenario::budget() const {
  return assemble_budget(sphere, environment, trap, csl, efield_ref, gas_convention);
}

NoiseBudget Scenario::budget_with_lambda(double lambda_csl) const {
  CslParams c = csl;
  c.lambda_csl = lambda_csl;
  return assemble_budget(sphere, environment, trap, c, efield_ref, gas_convention);
}

void apply_axis(Scenario& s, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::pressure: s.environment.pressure = value; return;
    case SweepAxis::T_int: s.environment.T_int = value; return;
    case SweepAxis::omega_m: s.trap.omega_m = value; return;
    case SweepAxis::radius: s.sphere.radius = value; return;
    case SweepAxis::lambda_csl: s.csl.lambda_csl = value; return;
    case SweepAxis::t_evolve: s.t_evolve = value; return;
  }
}

double read_axis(const Scenario& s, SweepAxis axis) {
  switch (axis) {
    case SweepAxis::pressure: return s.environment.pressure;
    case SweepAxis::T_int: return s.environment.T_int;
    case SweepAxis::omega_m: return s.trap.omega_m;
    case SweepAxis::radius: return s.sphere.radius;
    case SweepAxis::lambda_csl: return s.csl.lambda_csl;
    case SweepAxis::t_evolve: return s.t_evolve;
  }
  return 0.0;
}

namespace {

// Strict object reader: every key must be consumed, unknown keys are errors.
class ObjReader {
 public:
  ObjReader(const json& j, std::string section) : j_(j), section_(std::move(section)) {
    if (!j_.is_object())
      throw validation_error("config section '" + section_ + "' must be an object");
  }

  bool has(const std::string& key) { return j_.contains(key); }

  double num(const std::string& key, double fallback) {
    if (!j_.contains(key)) return fallback;
    mark(key);
    const json& v = j_.at(key);
    if (!v.is_number())
      throw validation_error(path(key) + " must be a number");
    return v.get<double>();
  }

  // Exactly one of two unit spellings; conversion factor applies to `a`.
  double num2(const std::string& a, double factor_a, const std::string& b,
              double fallback) {
    if (j_.contains(a) && j_.contains(b))
      throw validation_error(path(a) + " and " + path(b) +
                             " must not both be given");
    if (j_.contains(a)) return num(a, 0.0) * factor_a;
    return num(b, fallback);
  }

  std::uint64_t uint(const std::string& key, std::uint64_t fallback) {
    if (!j_.contains(key)) return fallback;
    mark(key);
    const json& v = j_.at(key);
    if (!v.is_number_integer() && !v.is_number_unsigned())
      throw validation_error(path(key) + " must be an integer");
    return v.get<std::uint64_t>();
  }

  int integer(const std::string& key, int fallback) {
    if (!j_.contains(key)) return fallback;
    mark(key);
    const json& v = j_.at(key);
    if (!v.is_number_integer())
      throw validation_error(path(key) + " must be an integer");
    return v.get<int>();
  }

  std::string str(const std::string& key, const std::string& fallback) {
    if (!j_.contains(key)) return fallback;
    mark(key);
    const json& v = j_.at(key);
    if (!v.is_string())
      throw validation_error(path(key) + " must be a string");
    return v.get<std::string>();
  }

  std::vector<double> num_array(const std::string& key) {
    mark(key);
    const json& v = j_.at(key);
    if (!v.is_array())
      throw validation_error(path(key) + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number())
        throw validation_error(path(key) + " must contain only numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  std::pair<double, double> pair(const std::string& key, double factor) {
    auto v = num_array(key);
    if (v.size() != 2)
      throw validation_error(path(key) + " must be [lo, hi]");
    return {v[0] * factor, v[1] * factor};
  }

  const json& child(const std::string& key) {
    mark(key);
    return j_.at(key);
  }

  void done() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.contains(it.key()))
        throw validation_error("unknown key '" + it.key() + "' in config section '" +
                               section_ + "'");
  }

 private:
  std::string path(const std::string& key) const { return section_ + "." + key; }
  void mark(const std::string& key) { seen_.insert(key); }

  const json& j_;
  std::string section_;
  std::set<std::string> seen_;
};

Sphere parse_sphere(const json& j) {
  ObjReader r(j, "sphere");
  Sphere s;
  s.radius = r.num("radius_m", s.radius);
  s.density = r.num("density_kg_m3", s.density);
  s.eps1 = r.num("eps1", s.eps1);
  s.eps2 = r.num("eps2", s.eps2);
  s.bb_response_im = r.num("bb_response_im", s.bb_response_im);
  s.emissivity = r.num("emissivity", s.emissivity);
  s.charge = r.num2("charge_e", k::e_charge, "charge_C", s.charge);
  r.done();
  return s;
}

Environment parse_environment(const json& j) {
  ObjReader r(j, "environment");
  Environment e;
  e.T_env = r.num("T_env_K", e.T_env);
  e.pressure = r.num2("pressure_mbar", 100.0, "pressure_Pa", e.pressure);
  e.gas_mass = r.num2("gas_mass_amu", k::m_amu, "gas_mass_kg", e.gas_mass);
  e.T_int = r.num("T_int_K", e.T_int);
  r.done();
  return e;
}

Trap parse_trap(const json& j) {
  ObjReader r(j, "trap");
  Trap t;
  t.omega_m = r.num2("omega_m_hz", k::two_pi, "omega_m_rad_s", t.omega_m);
  r.done();
  return t;
}

CslParams parse_csl(const json& j) {
  ObjReader r(j, "csl");
  CslParams c;
  c.lambda_csl = r.num("lambda_csl_hz", c.lambda_csl);
  c.r_c = r.num("r_c_m", c.r_c);
  r.done();
  return c;
}

CavityParams parse_cooling(const json& j, double omega_s) {
  ObjReader r(j, "cooling");
  CavityParams c;
  c.kappa = r.num2("kappa_hz", k::two_pi, "kappa_rad_s", c.kappa);
  c.kappa_sc = r.num2("kappa_sc_hz", k::two_pi, "kappa_sc_rad_s", c.kappa_sc);
  c.Delta = r.num2("delta_hz", k::two_pi, "delta_rad_s", c.Delta);
  c.omega_c = r.num2("omega_c_hz", k::two_pi, "omega_c_rad_s", c.omega_c);
  c.lambda_laser = r.num2("lambda_laser_nm", 1e-9, "lambda_laser_m", c.lambda_laser);
  c.a_c_sq = r.num("photon_number", c.a_c_sq);
  c.V_c = r.num("mode_volume_m3", c.V_c);
  c.X_d = r.num("drive_amplitude_m", c.X_d);
  c.eps_r = r.num("eps_r", c.eps_r);
  c.Gamma_sc = r.num("Gamma_sc_phonons_s", c.Gamma_sc);
  c.Gamma_others = r.num("Gamma_others_phonons_s", c.Gamma_others);
  c.N_therm = r.num("N_therm", c.N_therm);
  c.delta_x = r.num("misalignment_m", c.delta_x);
  c.I0 = r.num("intensity_W_m2", c.I0);
  r.done();
  // Laser wavenumber and frequency follow from the wavelength; the secular
  // frequency is the trap's.
  require(c.lambda_laser > 0.0, "cooling.lambda_laser_m must be > 0");
  c.k = k::two_pi / c.lambda_laser;
  c.omega_l = k::c * c.k;
  c.omega_s = omega_s;
  return c;
}

EfieldRef parse_efield(const json& j) {
  ObjReader r(j, "efield_reference");
  EfieldRef e; // defaults: measured ion-trap reference point
  e.rate = r.num("rate_phonons_s", e.rate);
  e.q = r.num2("charge_e", k::e_charge, "charge_C", e.q);
  e.mass = r.num2("mass_amu", k::m_amu, "mass_kg", e.mass);
  e.omega = r.num2("omega_hz", k::two_pi, "omega_rad_s", e.omega);
  r.done();
  return e;
}

SweepBlock parse_sweep(const json& j) {
  ObjReader r(j, "sweep");
  SweepBlock s;
  s.axis = axis_from_name(r.str("axis", "pressure"));
  s.grid.lo = r.num("lo", 0.0);
  s.grid.hi = r.num("hi", 0.0);
  s.grid.points = r.integer("points", 40);
  const std::string scale = r.str("scale", "log");
  require(scale == "log" || scale == "lin", "sweep.scale must be 'log' or 'lin'");
  s.grid.log_scale = scale == "log";
  r.done();
  s.grid.validate("sweep");
  return s;
}

OptimizeBlock parse_optimize(const json& j) {
  ObjReader r(j, "optimize");
  OptimizeBlock o;
  o.ratio_threshold = r.num("ratio_threshold", o.ratio_threshold);
  o.horizon = r.num("horizon_s", o.horizon);
  o.n0 = r.num("n0", o.n0);
  if (r.has("radius_bounds_m"))
    std::tie(o.R_lo, o.R_hi) = r.pair("radius_bounds_m", 1.0);
  if (r.has("omega_bounds_hz") && r.has("omega_bounds_rad_s"))
    throw validation_error(
        "optimize.omega_bounds_hz and optimize.omega_bounds_rad_s must not both be given");
  if (r.has("omega_bounds_hz"))
    std::tie(o.omega_lo, o.omega_hi) = r.pair("omega_bounds_hz", k::two_pi);
  else if (r.has("omega_bounds_rad_s"))
    std::tie(o.omega_lo, o.omega_hi) = r.pair("omega_bounds_rad_s", 1.0);
  if (r.has("lambda_bracket_hz"))
    std::tie(o.lambda_lo, o.lambda_hi) = r.pair("lambda_bracket_hz", 1.0);
  o.grid_R = r.integer("grid_R", o.grid_R);
  o.grid_omega = r.integer("grid_omega", o.grid_omega);
  if (r.has("pressures_mbar") && r.has("pressures_Pa"))
    throw validation_error(
        "optimize.pressures_mbar and optimize.pressures_Pa must not both be given");
  if (r.has("pressures_mbar")) {
    o.pressures = r.num_array("pressures_mbar");
    for (double& p : o.pressures) p *= 100.0;
  } else if (r.has("pressures_Pa")) {
    o.pressures = r.num_array("pressures_Pa");
  }
  if (r.has("T_ints_K")) o.T_ints = r.num_array("T_ints_K");
  r.done();
  o.validate();
  return o;
}

}  // namespace

ScenarioDoc parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw parse_failure(std::string("config is not valid JSON: ") + e.what());
  }

  ObjReader r(j, "config");
  ScenarioDoc doc;
  Scenario& s = doc.scenario;
  if (r.has("sphere")) s.sphere = parse_sphere(r.child("sphere"));
  if (r.has("environment")) s.environment = parse_environment(r.child("environment"));
  if (r.has("trap")) s.trap = parse_trap(r.child("trap"));
  if (r.has("csl")) s.csl = parse_csl(r.child("csl"));
  if (r.has("cooling")) s.cooling = parse_cooling(r.child("cooling"), s.trap.omega_m);
  if (r.has("efield_reference")) s.efield_ref = parse_efield(r.child("efield_reference"));
  const std::string conv = r.str("gas_diffusion_convention", "half");
  require(conv == "half" || conv == "full",
          "gas_diffusion_convention must be 'half' (k_B T / 2 hbar omega) or "
          "'full' (k_B T / hbar omega)");
  s.gas_convention =
      conv == "half" ? GasDiffusionConvention::half : GasDiffusionConvention::full;
  s.n0 = r.num("n0", s.n0);
  s.t_evolve = r.num("t_evolve_s", s.t_evolve);
  s.seed = r.uint("seed", s.seed);
  if (r.has("sweep")) doc.sweep = parse_sweep(r.child("sweep"));
  if (r.has("optimize")) doc.optimize = parse_optimize(r.child("optimize"));
  r.done();

  s.validate();
  return doc;
}

ScenarioDoc load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string serialize_config(const ScenarioDoc& doc) {
  const Scenario& s = doc.scenario;
  json j;
  j["sphere"] = {{"radius_m", s.sphere.radius},
                 {"density_kg_m3", s.sphere.density},
                 {"eps1", s.sphere.eps1},
                 {"eps2", s.sphere.eps2},
                 {"bb_response_im", s.sphere.bb_response_im},
                 {"emissivity", s.sphere.emissivity},
                 {"charge_C", s.sphere.charge}};
  j["environment"] = {{"T_env_K", s.environment.T_env},
                      {"pressure_Pa", s.environment.pressure},
                      {"gas_mass_kg", s.environment.gas_mass},
                      {"T_int_K", s.environment.T_int}};
  j["trap"] = {{"omega_m_rad_s", s.trap.omega_m}};
  j["csl"] = {{"lambda_csl_hz", s.csl.lambda_csl}, {"r_c_m", s.csl.r_c}};
  if (s.cooling) {
    const CavityParams& c = *s.cooling;
    j["cooling"] = {{"kappa_rad_s", c.kappa},
                    {"kappa_sc_rad_s", c.kappa_sc},
                    {"delta_rad_s", c.Delta},
                    {"omega_c_rad_s", c.omega_c},
                    {"lambda_laser_m", c.lambda_laser},
                    {"photon_number", c.a_c_sq},
                    {"mode_volume_m3", c.V_c},
                    {"drive_amplitude_m", c.X_d},
                    {"eps_r", c.eps_r},
                    {"Gamma_sc_phonons_s", c.Gamma_sc},
                    {"Gamma_others_phonons_s", c.Gamma_others},
                    {"N_therm", c.N_therm},
                    {"misalignment_m", c.delta_x},
                    {"intensity_W_m2", c.I0}};
  }
  if (s.efield_ref) {
    const EfieldRef& e = *s.efield_ref;
    j["efield_reference"] = {{"rate_phonons_s", e.rate},
                             {"charge_C", e.q},
                             {"mass_kg", e.mass},
                             {"omega_rad_s", e.omega}};
  }
  j["gas_diffusion_convention"] =
      s.gas_convention == GasDiffusionConvention::half ? "half" : "full";
  j["n0"] = s.n0;
  j["t_evolve_s"] = s.t_evolve;
  j["seed"] = s.seed;
  if (doc.sweep) {
    j["sweep"] = {{"axis", axis_name(doc.sweep->axis)},
                  {"lo", doc.sweep->grid.lo},
                  {"hi", doc.sweep->grid.hi},
                  {"points", doc.sweep->grid.points},
                  {"scale", doc.sweep->grid.log_scale ? "log" : "lin"}};
  }
  if (doc.optimize) {
    const OptimizeBlock& o = *doc.optimize;
    j["optimize"] = {{"ratio_threshold", o.ratio_threshold},
                     {"horizon_s", o.horizon},
                     {"n0", o.n0},
                     {"radius_bounds_m", {o.R_lo, o.R_hi}},
                     {"omega_bounds_rad_s", {o.omega_lo, o.omega_hi}},
                     {"lambda_bracket_hz", {o.lambda_lo, o.lambda_hi}},
                     {"grid_R", o.grid_R},
                     {"grid_omega", o.grid_omega},
                     {"pressures_Pa", o.pressures},
                     {"T_ints_K", o.T_ints}};
  }
  return j.dump(2) + "\n";
}

namespace {

ScenarioDoc preset_fig2() {
  ScenarioDoc doc;
  Scenario& s = doc.scenario;
  s.csl.lambda_csl = 1e-8;
  // Illustrative cavity-cooling stage consistent with the trap scenario: the
  // reported handover occupation lands near the scenario's n0 = 50 and the
  // laser-heated bulk temperature near T_int = 65 K.
  CavityParams c;
  c.kappa = k::two_pi * 150e3;
  c.kappa_sc = k::two_pi * 1e3;
  c.omega_c = k::two_pi * 50e3;
  c.Delta = -c.omega_c;
  c.lambda_laser = 1064e-9;
  c.k = k::two_pi / c.lambda_laser;
  c.omega_l = k::c * c.k;
  c.omega_s = s.trap.omega_m;
  c.a_c_sq = 1e9;
  c.V_c = 2e-11;
  c.X_d = 1e-9;
  c.eps_r = 2.1;
  c.Gamma_sc = 128.0;
  c.Gamma_others = 0.0;
  c.N_therm = 8.3e5;
  c.delta_x = 5e-11;
  c.I0 = 4.9e5;
  s.cooling = c;
  return doc;
}

ScenarioDoc preset_sweep(SweepAxis axis, double lo, double hi) {
  ScenarioDoc doc = preset_fig2();
  doc.sweep = SweepBlock{axis, GridSpec{lo, hi, 40, true}};
  return doc;
}

ScenarioDoc preset_fig4() {
  ScenarioDoc doc = preset_fig2();
  OptimizeBlock o;
  // Secular-frequency search band for the geometry optimization, centered on
  // the reference trap's 5 kHz: without this pin the optimizer runs to the
  // generic bounds and reports rates for geometries no large-particle trap
  // reaches. Override via optimize.omega_bounds_hz.
  o.omega_lo = k::two_pi * 5e3;
  o.omega_hi = k::two_pi * 10e3;
  o.pressures = make_grid(GridSpec{1e-11, 1e-7, 20, true}); // Pa
  o.T_ints = {20.0, 40.0, 60.0, 80.0};
  doc.optimize = o;
  return doc;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig2", "fig3a", "fig3b", "fig3c", "fig3d", "fig4"};
}

ScenarioDoc make_preset(const std::string& name) {
  if (name == "fig2") return preset_fig2();
  // Panel sweeps: pressure, internal temperature, trap frequency, radius.
  if (name == "fig3a") return preset_sweep(SweepAxis::pressure, 1e-11, 1e-4);
  if (name == "fig3b") return preset_sweep(SweepAxis::T_int, 4.0, 1000.0);
  if (name == "fig3c")
    return preset_sweep(SweepAxis::omega_m, k::two_pi * 100.0, k::two_pi * 1e6);
  if (name == "fig3d") return preset_sweep(SweepAxis::radius, 1e-8, 1e-6);
  if (name == "fig4") return preset_fig4();
  throw validation_error("unknown preset '" + name +
                         "' (available: fig2, fig3a, fig3b, fig3c, fig3d, fig4)");
}

}  // namespace collapse
