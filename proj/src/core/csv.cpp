#include "core/csv.hpp"

#include <charconv>
#include <fstream>

namespace collapse {

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

void row(std::string& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out += ',';
    out += format_double(v);
    first = false;
  }
  out += '\n';
}

}  // namespace

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "t_s,mean_n\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i)
    row(out, {traj.times[i], traj.mean_n[i]});
  return out;
}

std::string sweep_csv(const std::string& axis, const std::vector<SweepRow>& rows) {
  std::string out = "axis,axis_value,n_csl,n_cqm,ratio,D_gas,D_bb,D_csl,Gamma_total\n";
  for (const SweepRow& r : rows) {
    out += axis;
    out += ',';
    row(out, {r.axis_value, r.n_csl, r.n_cqm, r.ratio, r.budget_csl.D_gas,
              r.budget_csl.D_bb, r.budget_csl.D_csl, r.budget_csl.Gamma_total});
  }
  return out;
}

std::string curve_csv(const std::vector<CurvePoint>& points) {
  std::string out =
      "pressure_Pa,T_int_K,lambda_min_Hz,best_R_m,best_omega_rad_s,achieved_ratio,"
      "converged\n";
  for (const CurvePoint& p : points) {
    row(out, {p.pressure, p.T_int, p.bound.lambda_min, p.bound.best_R,
              p.bound.best_omega, p.bound.achieved_ratio,
              p.bound.converged ? 1.0 : 0.0});
  }
  return out;
}

std::string budget_csv(const std::vector<std::pair<double, NoiseBudget>>& rows) {
  std::string out =
      "lambda_csl_hz,D_gas,D_bb,D_csl,D_efield,D_pos,gamma_gas,gamma_bb_e,"
      "gamma_bb_a,Gamma_total,D_diff_total\n";
  for (const auto& [lambda, b] : rows) {
    row(out, {lambda, b.D_gas, b.D_bb, b.D_csl, b.D_efield, b.D_pos, b.gamma_gas,
              b.gamma_bb_e, b.gamma_bb_a, b.Gamma_total, b.D_diff_total});
  }
  return out;
}

std::string discrimination_csv(const DiscriminationReport& report, double mean_H0,
                               double mean_H1) {
  std::string out =
      "llr,p_value,sample_count,mc_trials,seed,mean_H0,mean_H1\n";
  out += format_double(report.log_likelihood_ratio);
  out += ',';
  out += format_double(report.p_value);
  out += ',';
  out += std::to_string(report.sample_count);
  out += ',';
  out += std::to_string(report.mc_trials);
  out += ',';
  out += std::to_string(report.seed);
  out += ',';
  out += format_double(mean_H0);
  out += ',';
  out += format_double(mean_H1);
  out += '\n';
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open output file '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw io_error("failed writing output file '" + path + "'");
}

}  // namespace collapse
