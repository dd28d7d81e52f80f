#pragma once

#include <string>
#include <vector>

#include "core/analysis.hpp"
#include "core/dynamics.hpp"
#include "core/optimizer.hpp"

namespace collapse {

// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

std::string trajectory_csv(const Trajectory& traj);
std::string sweep_csv(const std::string& axis, const std::vector<SweepRow>& rows);
std::string curve_csv(const std::vector<CurvePoint>& points);
// Budget rows keyed by the collapse rate they were computed with.
std::string budget_csv(const std::vector<std::pair<double, NoiseBudget>>& rows);
std::string discrimination_csv(const DiscriminationReport& report, double mean_H0,
                               double mean_H1);

void write_file(const std::string& path, const std::string& content);

}  // namespace collapse
