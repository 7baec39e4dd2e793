#include "ustitch/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>

namespace ustitch {

namespace {

constexpr double kEndpointArcEps = 1e-9;

double min_of3(double a, double b, double c) {
  return std::min(a, std::min(b, c));
}

}  // namespace

double cross_track_error(const Point2& predicted, const Polyline& gt_track) {
  const Projection proj = project_point(gt_track, predicted);
  const double total = gt_track.length();
  if (proj.arc > kEndpointArcEps && proj.arc < total - kEndpointArcEps) {
    return distance(predicted, proj.point);
  }
  const bool at_start = proj.arc <= kEndpointArcEps;
  const Point2& endpoint = at_start ? gt_track.vertices().front()
                                    : gt_track.vertices().back();
  const double heading = heading_at(gt_track, at_start ? 0.0 : total);
  const Point2 dir{std::cos(heading), std::sin(heading)};
  return std::abs(cross(dir, predicted - endpoint));
}

std::size_t select_goal_path_index(const std::vector<Polyline>& candidates,
                                   const Polyline& gt_track,
                                   const Point2& actor_position) {
  std::optional<std::size_t> best;
  double best_mean = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Polyline& cand = candidates[i];
    const Projection near = project_point(cand, actor_position);
    if (distance(actor_position, near.point) > kGoalSearchRadius) continue;
    double sum = 0.0;
    for (const Point2& v : gt_track.vertices()) {
      sum += distance(v, project_point(cand, v).point);
    }
    const double mean = sum / static_cast<double>(gt_track.vertices().size());
    if (mean < best_mean) {
      best_mean = mean;
      best = i;
    }
  }
  if (!best) {
    throw NoGoalError("no candidate goal path within range of the actor");
  }
  return *best;
}

const Polyline& select_goal_path(const std::vector<Polyline>& candidates,
                                 const Polyline& gt_track,
                                 const Point2& actor_position) {
  return candidates[select_goal_path_index(candidates, gt_track,
                                           actor_position)];
}

double dtw_distance(const std::vector<Point2>& a,
                    const std::vector<Point2>& b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("dtw_distance needs non-empty sequences");
  }
  std::vector<double> prev(b.size());
  std::vector<double> curr(b.size());
  prev[0] = distance(a[0], b[0]);
  for (std::size_t j = 1; j < b.size(); ++j) {
    prev[j] = prev[j - 1] + distance(a[0], b[j]);
  }
  for (std::size_t i = 1; i < a.size(); ++i) {
    curr[0] = prev[0] + distance(a[i], b[0]);
    for (std::size_t j = 1; j < b.size(); ++j) {
      curr[j] = distance(a[i], b[j]) +
                min_of3(prev[j], curr[j - 1], prev[j - 1]);
    }
    std::swap(prev, curr);
  }
  return prev.back();
}

std::size_t select_mode_index(const std::vector<PredictedTrajectory>& modes,
                              const Polyline& goal) {
  if (modes.empty()) {
    throw std::invalid_argument("select_mode_index needs at least one mode");
  }
  const std::vector<Point2> reference = resample(goal, 1.0).vertices();
  std::size_t best = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < modes.size(); ++i) {
    std::vector<Point2> means;
    means.reserve(modes[i].waypoints.size());
    for (const GaussianWaypoint& wp : modes[i].waypoints) {
      means.push_back(wp.mean);
    }
    const double cost = dtw_distance(means, reference);
    if (cost < best_cost) {
      best_cost = cost;
      best = i;
    }
  }
  return best;
}

const PredictedTrajectory& select_mode(
    const std::vector<PredictedTrajectory>& modes, const Polyline& goal) {
  return modes[select_mode_index(modes, goal)];
}

void MetricsTable::add(const std::string& method, int horizon_s,
                       const std::string& maneuver, double value) {
  MetricsBucket& bucket = rows_[MetricsKey{method, horizon_s, maneuver}];
  bucket.sum += value;
  bucket.count += 1;
}

void MetricsTable::merge(const MetricsTable& other) {
  for (const auto& [key, bucket] : other.rows_) {
    MetricsBucket& mine = rows_[key];
    mine.sum += bucket.sum;
    mine.count += bucket.count;
  }
}

bool MetricsTable::contains(const std::string& method, int horizon_s,
                            const std::string& maneuver) const {
  return rows_.count(MetricsKey{method, horizon_s, maneuver}) != 0;
}

double MetricsTable::mean(const std::string& method, int horizon_s,
                          const std::string& maneuver) const {
  const MetricsBucket& bucket =
      rows_.at(MetricsKey{method, horizon_s, maneuver});
  return bucket.sum / static_cast<double>(bucket.count);
}

long long MetricsTable::count(const std::string& method, int horizon_s,
                              const std::string& maneuver) const {
  return rows_.at(MetricsKey{method, horizon_s, maneuver}).count;
}

double MetricsTable::overall_mean(const std::string& method,
                                  int horizon_s) const {
  double sum = 0.0;
  long long count = 0;
  for (const auto& [key, bucket] : rows_) {
    if (key.method == method && key.horizon_s == horizon_s) {
      sum += bucket.sum;
      count += bucket.count;
    }
  }
  if (count == 0) {
    throw std::out_of_range("no metrics for method " + method + " at " +
                            std::to_string(horizon_s) + " s");
  }
  return sum / static_cast<double>(count);
}

std::string MetricsTable::to_csv() const {
  std::string out = "method,horizon_s,maneuver,mean_cte_m,count\n";
  char line[256];
  for (const auto& [key, bucket] : rows_) {
    std::snprintf(line, sizeof(line), "%s,%d,%s,%.6f,%lld\n",
                  key.method.c_str(), key.horizon_s, key.maneuver.c_str(),
                  bucket.sum / static_cast<double>(bucket.count),
                  bucket.count);
    out += line;
  }
  return out;
}

std::vector<HorizonError> horizon_errors(const std::string& method,
                                         const TimedTrajectory& predicted,
                                         const TimedTrajectory& gt) {
  const std::vector<Point2> gt_pts = dedup_points(gt.positions());
  std::optional<Polyline> track;
  if (gt_pts.size() >= 2) track.emplace(gt_pts);
  std::vector<HorizonError> out;
  for (const int h : kEvalHorizonsSeconds) {
    const auto idx = static_cast<std::size_t>(
        std::llround(static_cast<double>(h) / predicted.dt));
    if (idx >= predicted.states.size()) continue;
    const Point2& p = predicted.states[idx].position;
    double err = 0.0;
    if (track) {
      err = cross_track_error(p, *track);
    } else if (!gt_pts.empty()) {
      err = distance(p, gt_pts.front());
    }
    out.push_back({method, h, err});
  }
  return out;
}

MetricsTable evaluate(const std::map<std::string, TimedTrajectory>& outputs,
                      const TimedTrajectory& gt, const std::string& maneuver) {
  MetricsTable table;
  for (const auto& [method, traj] : outputs) {
    for (const HorizonError& he : horizon_errors(method, traj, gt)) {
      table.add(he.method, he.horizon_s, maneuver, he.error_m);
    }
  }
  return table;
}

}  // namespace ustitch
