#pragma once

#include <string>

#include "freeride/engine.hpp"

namespace freeride {

// Fixed-schema CSV: one row per checkpoint per player, columns
//   replica_count, t, player, cum_pseudo_regret_mean, cum_pseudo_regret_std,
//   cum_realized_regret_mean, cum_realized_regret_std, arm_count_mean_1..k.
// Floats are printed with 9 significant digits.
std::string metrics_csv(const MetricsSeries& series);

// Mean realized regret vs round, log-x, one polyline per player. Series are
// subsampled to at most 500 points.
std::string regret_svg(const MetricsSeries& series);

// Final regrets plus the gap and gamma thresholds for the scenario.
std::string summary_text(const SimulationConfig& config, const MetricsSeries& series);

// Writes metrics.csv, summary.txt and regret.svg into `out_dir` (created if
// missing). Returns the paths written.
std::vector<std::string> write_outputs(const SimulationConfig& config,
                                       const MetricsSeries& series,
                                       const std::string& out_dir);

// printf("%.9g") as a std::string.
std::string fmt9(double v);

}  // namespace freeride
