#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "ustitch/baselines.hpp"
#include "ustitch/eval.hpp"
#include "ustitch/scenario.hpp"

namespace ustitch {

/// Method names accepted by the runner, in canonical reporting order.
inline constexpr std::array<const char*, 7> kAllMethods{
    "ballistic", "pp", "raw", "ls1", "ls3", "ls5", "us"};

struct BenchOptions {
  std::vector<std::string> methods;  // empty means all of kAllMethods
  StitchParams stitch;
  SpeedProfileParams profile;
  double lookahead = kDefaultLookahead;
  double dt = kDefaultDt;
  int horizon_steps = kDefaultHorizonSteps;

  std::vector<std::string> resolved_methods() const;
};

struct DetailRow {
  std::string scenario_id;
  std::string maneuver;
  std::string method;
  int horizon_s = 0;
  double error_m = 0.0;
};

struct ScenarioOutcome {
  std::string scenario_id;
  bool skipped = false;
  std::string skip_reason;
  MetricsTable table;
  std::vector<DetailRow> details;
};

struct BenchResult {
  MetricsTable table;
  std::vector<DetailRow> details;
  long long evaluated = 0;
  long long skipped = 0;
};

/// Spatial path each method proposes, keyed by method name. Every path
/// starts at the actor position; retiming assigns the arrival times.
/// Throws NoGoalError when no goal candidate is within range.
std::map<std::string, std::vector<Point2>> method_spatial_paths(
    const ScenarioRecord& record, const BenchOptions& options);

ScenarioOutcome run_scenario(const ScenarioRecord& record,
                             const BenchOptions& options);

/// Runs every record and merges the per-scenario results in record order,
/// so the output is identical for any worker count.
BenchResult run_benchmark(const std::vector<ScenarioRecord>& records,
                          const BenchOptions& options, int parallel = 1);

/// CSV with header scenario_id,maneuver,method,horizon_s,cte_m.
std::string details_to_csv(const std::vector<DetailRow>& rows);

}  // namespace ustitch
