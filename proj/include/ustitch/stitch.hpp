#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ustitch/geom.hpp"

namespace ustitch {

/// One short-term prediction step: a 2-D Gaussian over position.
struct GaussianWaypoint {
  Point2 mean;
  Cov2 cov;
};

/// Uncertainty-aware short-term trajectory: H waypoints at cadence dt.
struct PredictedTrajectory {
  double dt = 0.1;  // seconds
  std::vector<GaussianWaypoint> waypoints;

  std::size_t horizon() const { return waypoints.size(); }
};

struct StitchParams {
  double lambda0 = 0.55;
  int iterations = 10;
  double alpha = 0.5;
  double c = 1.0;
  double sample_step = 1.0;      // s, meters
  double shrink_distance = 10.0; // d, meters
  std::size_t target_length = 0; // N; 0 = grow until ~100 m of path or goal end
  bool use_schedule = true;      // false: lambda_t stays lambda0 past breakaway
};

/// Stitched output: N spatial points, the first prefix_length of which come
/// from per-waypoint optimization; breakaway is the last step still
/// compatible with the goal.
struct SolutionPath {
  std::vector<Point2> points;
  std::size_t prefix_length = 0;
  std::size_t breakaway = 0;
};

/// Compatibility of one waypoint with the goal: 1 when the footprint overlaps
/// the goal polyline, otherwise the best corner score exp(-D^2/2) where D is
/// the Mahalanobis distance from the corner's Gaussian to its projection on
/// the goal.
double compatibility_score(const GaussianWaypoint& wp, const Polyline& goal,
                           const OrientedBox& footprint,
                           ProjectionMetric metric = ProjectionMetric::kEuclidean);

/// Latest 1-based step whose score clears alpha; 0 when none does.
std::size_t breakaway_horizon(const PredictedTrajectory& traj,
                              const Polyline& goal,
                              const std::vector<OrientedBox>& footprints,
                              double alpha);

/// Regularization weight for step t (1-based) given breakaway horizon
/// breakaway_t. Constant lambda0 through the breakaway, then grows as
/// lambda0 + ||cov^-1 (mean - proj)|| * (t - T) / c.
double lambda_schedule(std::size_t t, std::size_t breakaway_t,
                       const GaussianWaypoint& wp, const Polyline& goal,
                       const StitchParams& params);

/// The alternating-minimization objective
/// (y-mean)^T cov^-1 (y-mean) + lambda |y-g|^2.
double waypoint_objective(const Point2& y, const Point2& g, const Point2& mean,
                          const Cov2& cov, double lambda);

/// Alternates goal projection with the closed-form quadratic update
/// y = (cov^-1 + lambda I)^-1 (cov^-1 mean + lambda g). lambda = 0 returns
/// the mean unchanged.
Point2 solve_waypoint(const GaussianWaypoint& wp, const Polyline& goal,
                      double lambda, int iterations);

/// Same iteration, recording (y, g) after every step. Used by convergence
/// diagnostics and tests.
std::vector<std::pair<Point2, Point2>> solve_waypoint_trace(
    const GaussianWaypoint& wp, const Polyline& goal, double lambda,
    int iterations);

/// Footprints centered at the trajectory means, headed along the local
/// direction of travel (central difference; goal tangent when means
/// coincide).
std::vector<OrientedBox> make_footprints(const PredictedTrajectory& traj,
                                         const Polyline& goal,
                                         double actor_length,
                                         double actor_width);

/// Per-waypoint solve of the whole horizon. Returns the H prefix points and
/// the breakaway step.
std::pair<std::vector<Point2>, std::size_t> stitch_prefix(
    const PredictedTrajectory& traj, const Polyline& goal,
    const std::vector<OrientedBox>& footprints, const StitchParams& params);

/// Extends the prefix beyond the horizon: shrinks the terminal offset to
/// zero linearly over shrink_distance along the unused goal suffix, then
/// follows the resampled goal remainder.
SolutionPath extend_path(const std::vector<Point2>& prefix,
                         std::size_t breakaway, const Polyline& goal,
                         const StitchParams& params);

/// Full pipeline: footprints, breakaway, prefix, extension.
SolutionPath stitch(const PredictedTrajectory& traj, const Polyline& goal,
                    double actor_length, double actor_width,
                    const StitchParams& params);

}  // namespace ustitch
