#include "core/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "core/rng.hpp"

namespace collapse {

double phonon_rate(double n, const EvolutionParams& params) {
  require(n >= 0.0, "phonon_rate: n must be >= 0");
  return -params.Gamma * n + params.D_diff;
}

namespace {

// phi(z) = (1 - e^-z)/z, the bounded slope factor of the heating solution.
double phi(double z) { return z == 0.0 ? 1.0 : -std::expm1(-z) / z; }

}  // namespace

double phonon_closed_form(double n0, const EvolutionParams& params, double t) {
  require(n0 >= 0.0, "phonon_closed_form: n0 must be >= 0");
  require(t >= 0.0, "phonon_closed_form: t must be >= 0");
  const double z = params.Gamma * t;
  if (params.Gamma == 0.0) return n0 + params.D_diff * t;
  // n0 e^-z + D t phi(z): equals the textbook e^-z (n0 - D/G) + D/G but stays
  // accurate as Gamma -> 0.
  return n0 * std::exp(-z) + params.D_diff * t * phi(z);
}

namespace {

using State = std::array<double, 5>; // mean_Q, mean_P, var_Q, var_P, cov_QP

State derivs(const State& y, const EvolutionParams& p) {
  const double w = p.omega_m, G = p.Gamma;
  return {
      w * y[1],
      -w * y[0] - G * y[1],
      2.0 * w * y[4] + 4.0 * p.D_pos,
      -2.0 * w * y[4] - 2.0 * G * y[3] + 4.0 * p.D_diff + 2.0 * G,
      w * (y[3] - y[2]) - G * y[4],
  };
}

// One Dormand-Prince 5(4) step; returns the 5th-order solution and the
// embedded error estimate.
void dopri_step(const State& y, double h, const EvolutionParams& p,
                const State& k1, State& y5, State& err, State& k_last) {
  auto axpy = [&](const State& base, std::initializer_list<std::pair<double, const State*>> terms) {
    State r = base;
    for (const auto& [a, k] : terms)
      for (int i = 0; i < 5; ++i) r[i] += h * a * (*k)[i];
    return r;
  };
  const State k2 = derivs(axpy(y, {{1.0 / 5, &k1}}), p);
  const State k3 = derivs(axpy(y, {{3.0 / 40, &k1}, {9.0 / 40, &k2}}), p);
  const State k4 = derivs(axpy(y, {{44.0 / 45, &k1}, {-56.0 / 15, &k2}, {32.0 / 9, &k3}}), p);
  const State k5 = derivs(axpy(y, {{19372.0 / 6561, &k1}, {-25360.0 / 2187, &k2},
                                   {64448.0 / 6561, &k3}, {-212.0 / 729, &k4}}), p);
  const State k6 = derivs(axpy(y, {{9017.0 / 3168, &k1}, {-355.0 / 33, &k2},
                                   {46732.0 / 5247, &k3}, {49.0 / 176, &k4},
                                   {-5103.0 / 18656, &k5}}), p);
  y5 = axpy(y, {{35.0 / 384, &k1}, {500.0 / 1113, &k3}, {125.0 / 192, &k4},
                {-2187.0 / 6784, &k5}, {11.0 / 84, &k6}});
  const State k7 = derivs(y5, p);
  // Difference between the 5th-order solution and the embedded 4th-order one.
  static constexpr std::array<double, 7> ed = {
      71.0 / 57600, 0.0, -71.0 / 16695, 71.0 / 1920,
      -17253.0 / 339200, 22.0 / 525, -1.0 / 40};
  const std::array<const State*, 7> ks = {&k1, &k2, &k3, &k4, &k5, &k6, &k7};
  for (int i = 0; i < 5; ++i) {
    double e = 0.0;
    for (int j = 0; j < 7; ++j) e += ed[j] * (*ks[j])[i];
    err[i] = h * e;
  }
  k_last = k7;
}

}  // namespace

MomentEvolution integrate_moments(const MomentState& initial,
                                  const EvolutionParams& params,
                                  const std::vector<double>& sample_times,
                                  const StepControl& control) {
  initial.validate();
  params.validate();
  require(!sample_times.empty(), "integrate_moments: no sample times");
  double prev = -1.0;
  for (double t : sample_times) {
    require(t >= 0.0, "integrate_moments: sample times must be >= 0");
    require(t > prev, "integrate_moments: sample times must be strictly increasing");
    prev = t;
  }

  State y = {initial.mean_Q, initial.mean_P, initial.var_Q, initial.var_P,
             initial.cov_QP};
  double t = 0.0;
  // Oscillation at omega sets the natural step scale.
  const double h_default = 0.05 / params.omega_m;
  double h = control.fixed_step && control.dt > 0.0 ? control.dt : h_default;
  long steps = 0;

  MomentEvolution out;
  out.trajectory.times.reserve(sample_times.size());
  out.trajectory.mean_n.reserve(sample_times.size());

  State k1 = derivs(y, params);
  auto record = [&](double at) {
    out.trajectory.times.push_back(at);
    out.trajectory.mean_n.push_back((y[2] + y[3]) / 4.0 - 0.5);
  };

  std::size_t next_sample = 0;
  while (next_sample < sample_times.size() && sample_times[next_sample] <= t) {
    record(sample_times[next_sample]);
    ++next_sample;
  }

  while (next_sample < sample_times.size()) {
    const double target = sample_times[next_sample];
    const bool clamped = target - t < h;
    const double h_try = clamped ? target - t : h;
    State y5, err, k_last;
    dopri_step(y, h_try, params, k1, y5, err, k_last);

    // Weighted RMS error against mixed tolerance.
    double norm = 0.0;
    for (int i = 0; i < 5; ++i) {
      const double sc = control.atol +
                        control.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
      norm += (err[i] / sc) * (err[i] / sc);
    }
    norm = std::sqrt(norm / 5.0);

    const bool accept = control.fixed_step || norm <= 1.0;
    if (accept) {
      t += h_try;
      y = y5;
      k1 = k_last;
      if (y[2] < 0.0 || y[3] < 0.0 ||
          y[2] * y[3] - y[4] * y[4] < 1.0 - 1e-6)
        throw std::runtime_error(
            "integrate_moments: unphysical state reached (integration unstable)");
      while (next_sample < sample_times.size() &&
             t >= sample_times[next_sample] - 1e-14 * std::max(1.0, t)) {
        record(sample_times[next_sample]);
        ++next_sample;
      }
    }
    if (!control.fixed_step) {
      const double safe = norm > 0.0 ? 0.9 * std::pow(norm, -0.2) : 5.0;
      const double h_new = h_try * std::clamp(safe, 0.2, 5.0);
      // A step shortened only to land on a sample time must not poison the
      // cruising step size.
      h = (accept && clamped) ? std::max(h, h_new) : h_new;
      if (!(h > 0.0) || t + h == t)
        throw std::runtime_error("integrate_moments: step size underflow");
    }
    if (++steps > control.max_steps)
      throw std::runtime_error("integrate_moments: step budget exhausted");
  }

  out.final_state = {y[0], y[1], y[2], y[3], y[4]};
  return out;
}

MomentEvolution integrate_moments(const MomentState& initial,
                                  const EvolutionParams& params, double t_final,
                                  const StepControl& control) {
  return integrate_moments(initial, params, std::vector<double>{t_final}, control);
}

double asymptotic_ratio(const NoiseBudget& budget_csl, const NoiseBudget& budget_cqm) {
  require(budget_cqm.D_diff_total > 0.0,
          "asymptotic_ratio: baseline D_diff_total must be > 0");
  return budget_csl.D_diff_total / budget_cqm.D_diff_total;
}

std::vector<long long> sample_final_phonons(double mean_n, int count,
                                            std::uint64_t seed) {
  require(mean_n >= 0.0, "sample_final_phonons: mean must be >= 0");
  require(count >= 1, "sample_final_phonons: count must be >= 1");
  Rng rng(seed);
  std::vector<long long> out(static_cast<std::size_t>(count));
  for (auto& v : out) v = rng.bose_einstein(mean_n);
  return out;
}

}  // namespace collapse
