#pragma once

#include <cstdint>
#include <vector>

#include "core/types.hpp"

namespace collapse {

struct EvolutionParams {
  double Gamma = 0.0;   // 1/s, momentum dissipation
  double D_diff = 0.0;  // phonons/s, momentum diffusion
  double D_pos = 0.0;   // 1/s, position diffusion
  double omega_m = 0.0; // rad/s

  void validate() const {
    require(Gamma >= 0.0, "evolution.Gamma must be >= 0");
    require(D_diff >= 0.0, "evolution.D_diff must be >= 0");
    require(D_pos >= 0.0, "evolution.D_pos must be >= 0");
    require(omega_m > 0.0, "evolution.omega_m must be > 0");
  }

  static EvolutionParams from_budget(const NoiseBudget& b, double omega_m) {
    return {b.Gamma_total, b.D_diff_total, b.D_pos, omega_m};
  }
};

// First and second moments of the quadratures Q = a + a^dag, P = i(a^dag - a);
// a thermal state has var_Q = var_P = 2n + 1, cov = 0.
struct MomentState {
  double mean_Q = 0.0;
  double mean_P = 0.0;
  double var_Q = 1.0;
  double var_P = 1.0;
  double cov_QP = 0.0; // symmetrized

  static MomentState thermal(double n) {
    require(n >= 0.0, "thermal occupation must be >= 0");
    return {0.0, 0.0, 2.0 * n + 1.0, 2.0 * n + 1.0, 0.0};
  }

  double phonons() const { return (var_Q + var_P) / 4.0 - 0.5; }
  double uncertainty_product() const { return var_Q * var_P - cov_QP * cov_QP; }

  void validate() const {
    require(var_Q >= 0.0, "moments.var_Q must be >= 0");
    require(var_P >= 0.0, "moments.var_P must be >= 0");
    require(uncertainty_product() >= 1.0 - 1e-9,
            "moments must satisfy var_Q*var_P - cov^2 >= 1");
  }
};

struct Trajectory {
  std::vector<double> times;  // s, strictly increasing
  std::vector<double> mean_n; // phonons, same length
};

struct StepControl {
  double rtol = 1e-9;
  double atol = 1e-12;
  bool fixed_step = false; // reproducibility studies: no adaptivity
  double dt = 0.0;         // fixed-step size; 0 picks omega-based default
  long max_steps = 50000000;
};

struct MomentEvolution {
  Trajectory trajectory;
  MomentState final_state;
};

// Mean phonon growth rate -Gamma*n + D_diff.
double phonon_rate(double n, const EvolutionParams& params);

// e^(-Gamma t)(n0 - D/Gamma) + D/Gamma, evaluated in a cancellation-free form;
// the Gamma = 0 branch returns n0 + D t.
double phonon_closed_form(double n0, const EvolutionParams& params, double t);

// Integrate the closed linear system for the moments:
//   d<Q> =  omega <P> dt
//   d<P> = -omega <Q> dt - Gamma <P> dt
//   dvQ  =  2 omega c dt + 4 D_pos dt
//   dvP  = -2 omega c dt - 2 Gamma vP dt + (4 D_diff + 2 Gamma) dt
//   dc   =  omega (vP - vQ) dt - Gamma c dt
// normalized so a thermal initial state with D_pos = 0 reproduces
// phonon_closed_form for n(t) = (vQ + vP)/4 - 1/2. Embedded 4th/5th-order
// Runge-Kutta; trajectory is sampled exactly at the given times.
MomentEvolution integrate_moments(const MomentState& initial,
                                  const EvolutionParams& params,
                                  const std::vector<double>& sample_times,
                                  const StepControl& control = {});
MomentEvolution integrate_moments(const MomentState& initial,
                                  const EvolutionParams& params, double t_final,
                                  const StepControl& control = {});

// D_diff_total ratio of two budgets; the t -> inf limit of n_csl/n_cqm when
// Gamma matches.
double asymptotic_ratio(const NoiseBudget& budget_csl, const NoiseBudget& budget_cqm);

// Draws from the Bose-Einstein (geometric) occupation law with the given
// mean, deterministic in the seed.
std::vector<long long> sample_final_phonons(double mean_n, int count, std::uint64_t seed);

}  // namespace collapse
