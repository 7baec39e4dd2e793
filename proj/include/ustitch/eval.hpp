#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ustitch/stitch.hpp"
#include "ustitch/tracker.hpp"

namespace ustitch {

/// Horizons (seconds) at which displacement errors are reported.
inline constexpr std::array<int, 6> kEvalHorizonsSeconds{1, 2, 3, 4, 5, 6};

/// Candidate goal paths farther than this from the actor are not considered.
inline constexpr double kGoalSearchRadius = 100.0;

class NoGoalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Distance from a predicted point to the ground-truth track. Inside the
/// track this is the distance to the projection; past either end it is the
/// perpendicular distance to the ray continuing the end segment, so pure
/// along-track lead or lag does not count as error.
double cross_track_error(const Point2& predicted, const Polyline& gt_track);

/// Index of the candidate the ground-truth track follows most closely:
/// smallest mean distance from the track's vertices to the candidate, among
/// candidates within kGoalSearchRadius of the actor. Ties keep the earliest
/// index. Throws NoGoalError when no candidate is in range.
std::size_t select_goal_path_index(const std::vector<Polyline>& candidates,
                                   const Polyline& gt_track,
                                   const Point2& actor_position);
const Polyline& select_goal_path(const std::vector<Polyline>& candidates,
                                 const Polyline& gt_track,
                                 const Point2& actor_position);

/// Classic dynamic-time-warping alignment cost with Euclidean point costs.
double dtw_distance(const std::vector<Point2>& a, const std::vector<Point2>& b);

/// Index of the prediction mode whose mean sequence aligns best (lowest DTW
/// cost) with the goal resampled at 1 m. Ties keep the earliest index.
std::size_t select_mode_index(const std::vector<PredictedTrajectory>& modes,
                              const Polyline& goal);
const PredictedTrajectory& select_mode(
    const std::vector<PredictedTrajectory>& modes, const Polyline& goal);

struct MetricsKey {
  std::string method;
  int horizon_s = 0;
  std::string maneuver;

  friend auto operator<=>(const MetricsKey&, const MetricsKey&) = default;
};

struct MetricsBucket {
  double sum = 0.0;
  long long count = 0;
};

/// Running per-(method, horizon, maneuver) means. Merging tables from
/// parallel shards is order-independent up to floating-point association,
/// so shards are merged in a fixed order by the callers that care.
class MetricsTable {
 public:
  void add(const std::string& method, int horizon_s,
           const std::string& maneuver, double value);
  void merge(const MetricsTable& other);

  bool contains(const std::string& method, int horizon_s,
                const std::string& maneuver) const;
  double mean(const std::string& method, int horizon_s,
              const std::string& maneuver) const;
  long long count(const std::string& method, int horizon_s,
                  const std::string& maneuver) const;

  /// Mean over every maneuver bucket for one method and horizon.
  double overall_mean(const std::string& method, int horizon_s) const;

  const std::map<MetricsKey, MetricsBucket>& rows() const { return rows_; }
  bool empty() const { return rows_.empty(); }

  /// CSV with header method,horizon_s,maneuver,mean_cte_m,count, rows in
  /// sorted key order.
  std::string to_csv() const;

 private:
  std::map<MetricsKey, MetricsBucket> rows_;
};

struct HorizonError {
  std::string method;
  int horizon_s = 0;
  double error_m = 0.0;
};

/// Cross-track error of one predicted trajectory against the ground truth at
/// each reporting horizon present in the prediction.
std::vector<HorizonError> horizon_errors(const std::string& method,
                                         const TimedTrajectory& predicted,
                                         const TimedTrajectory& gt);

/// Scores every method output against the ground truth and files the errors
/// under the given maneuver label.
MetricsTable evaluate(const std::map<std::string, TimedTrajectory>& outputs,
                      const TimedTrajectory& gt, const std::string& maneuver);

}  // namespace ustitch
