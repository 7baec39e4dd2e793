#include "ustitch/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace ustitch {

std::vector<std::string> BenchOptions::resolved_methods() const {
  std::vector<std::string> out;
  if (methods.empty()) {
    out.assign(kAllMethods.begin(), kAllMethods.end());
    return out;
  }
  for (const std::string& m : methods) {
    if (std::find(kAllMethods.begin(), kAllMethods.end(), m) ==
        kAllMethods.end()) {
      throw std::invalid_argument("unknown method: " + m);
    }
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  }
  return out;
}

std::map<std::string, std::vector<Point2>> method_spatial_paths(
    const ScenarioRecord& record, const BenchOptions& options) {
  const std::vector<std::string> methods = options.resolved_methods();
  const std::vector<Point2> gt_pts = dedup_points(record.ground_truth.positions());
  if (gt_pts.size() < 2) {
    throw NoGoalError("ground truth is degenerate");
  }
  const Polyline gt_track(gt_pts);
  const Polyline& goal =
      select_goal_path(record.goal_candidates, gt_track, record.actor.position);
  const PredictedTrajectory& mode = select_mode(record.predicted, goal);

  const auto from_actor = [&](std::vector<Point2> tail) {
    std::vector<Point2> path;
    path.reserve(tail.size() + 1);
    path.push_back(record.actor.position);
    path.insert(path.end(), tail.begin(), tail.end());
    return path;
  };
  const auto means = [&]() {
    std::vector<Point2> out;
    out.reserve(mode.waypoints.size());
    for (const GaussianWaypoint& wp : mode.waypoints) out.push_back(wp.mean);
    return out;
  };

  std::map<std::string, std::vector<Point2>> paths;
  for (const std::string& m : methods) {
    if (m == "ballistic") {
      paths[m] =
          ballistic(record.actor, options.horizon_steps, options.dt).positions();
    } else if (m == "pp") {
      paths[m] = rollout(record.actor, goal, options.horizon_steps, options.dt,
                         options.lookahead, options.profile)
                     .positions();
    } else if (m == "raw") {
      paths[m] = from_actor(means());
    } else if (m == "ls1" || m == "ls3" || m == "ls5") {
      const double window = m.back() - '0';
      paths[m] = from_actor(
          linear_stitch(mode, goal, window, options.stitch).points);
    } else if (m == "us") {
      paths[m] = from_actor(stitch(mode, goal, record.actor.length,
                                   record.actor.width, options.stitch)
                                .points);
    }
  }
  return paths;
}

ScenarioOutcome run_scenario(const ScenarioRecord& record,
                             const BenchOptions& options) {
  ScenarioOutcome outcome;
  outcome.scenario_id = record.id;
  std::map<std::string, std::vector<Point2>> paths;
  try {
    paths = method_spatial_paths(record, options);
  } catch (const NoGoalError& e) {
    outcome.skipped = true;
    outcome.skip_reason = e.what();
    return outcome;
  }
  const std::string maneuver = to_string(record.maneuver);
  for (const std::string& m : options.resolved_methods()) {
    const TimedTrajectory timed =
        retime(paths.at(m), record.actor, options.profile, options.dt,
               options.horizon_steps);
    for (const HorizonError& he :
         horizon_errors(m, timed, record.ground_truth)) {
      outcome.table.add(m, he.horizon_s, maneuver, he.error_m);
      outcome.details.push_back(
          {record.id, maneuver, m, he.horizon_s, he.error_m});
    }
  }
  return outcome;
}

BenchResult run_benchmark(const std::vector<ScenarioRecord>& records,
                          const BenchOptions& options, int parallel) {
  options.resolved_methods();  // validate before spawning workers
  std::vector<ScenarioOutcome> outcomes(records.size());
  const auto work = [&](std::size_t i) {
    outcomes[i] = run_scenario(records[i], options);
  };
  const int workers =
      std::min<long long>(std::max(parallel, 1),
                          static_cast<long long>(records.size()));
  if (workers > 1) {
    std::atomic<std::size_t> cursor{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    const auto worker = [&] {
      for (std::size_t i; (i = cursor.fetch_add(1)) < records.size();) {
        try {
          work(i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  } else {
    for (std::size_t i = 0; i < records.size(); ++i) work(i);
  }
  BenchResult result;
  for (ScenarioOutcome& outcome : outcomes) {
    if (outcome.skipped) {
      result.skipped += 1;
      continue;
    }
    result.evaluated += 1;
    result.table.merge(outcome.table);
    result.details.insert(result.details.end(),
                          std::make_move_iterator(outcome.details.begin()),
                          std::make_move_iterator(outcome.details.end()));
  }
  return result;
}

std::string details_to_csv(const std::vector<DetailRow>& rows) {
  std::string out = "scenario_id,maneuver,method,horizon_s,cte_m\n";
  char line[256];
  for (const DetailRow& r : rows) {
    std::snprintf(line, sizeof(line), "%s,%s,%s,%d,%.6f\n",
                  r.scenario_id.c_str(), r.maneuver.c_str(), r.method.c_str(),
                  r.horizon_s, r.error_m);
    out += line;
  }
  return out;
}

}  // namespace ustitch
