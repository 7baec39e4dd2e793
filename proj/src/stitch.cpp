#include "ustitch/stitch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ustitch {

namespace {

void validate(const StitchParams& params) {
  if (params.lambda0 < 0.0) {
    throw std::invalid_argument("lambda0 must be nonnegative");
  }
  if (params.iterations < 1) {
    throw std::invalid_argument("iterations must be at least 1");
  }
  if (!(params.c > 0.0)) {
    throw std::invalid_argument("c must be positive");
  }
  if (!(params.sample_step > 0.0) ||
      params.sample_step > params.shrink_distance) {
    throw std::invalid_argument("need 0 < sample_step <= shrink_distance");
  }
}

Point2 left_normal(double heading) {
  return {-std::sin(heading), std::cos(heading)};
}

}  // namespace

double compatibility_score(const GaussianWaypoint& wp, const Polyline& goal,
                           const OrientedBox& footprint,
                           ProjectionMetric metric) {
  if (box_intersects_polyline(footprint, goal)) {
    return 1.0;
  }
  double best = 0.0;
  for (const Point2& corner : footprint.corners()) {
    const Point2 proj = mahalanobis_project(goal, corner, wp.cov, metric);
    const double d = mahalanobis_distance(proj, corner, wp.cov);
    best = std::max(best, std::exp(-0.5 * d * d));
  }
  return best;
}

std::size_t breakaway_horizon(const PredictedTrajectory& traj,
                              const Polyline& goal,
                              const std::vector<OrientedBox>& footprints,
                              double alpha) {
  const std::size_t h = traj.horizon();
  if (footprints.size() != h) {
    throw std::invalid_argument("need one footprint per waypoint");
  }
  for (std::size_t t = h; t >= 1; --t) {
    if (compatibility_score(traj.waypoints[t - 1], goal, footprints[t - 1]) >=
        alpha) {
      return t;
    }
  }
  return 0;  // no compatible waypoint: break away immediately
}

double lambda_schedule(std::size_t t, std::size_t breakaway_t,
                       const GaussianWaypoint& wp, const Polyline& goal,
                       const StitchParams& params) {
  if (t <= breakaway_t || !params.use_schedule) {
    return params.lambda0;
  }
  const Cov2 prec = wp.cov.regularized().inverse();
  const Point2 proj = project_point(goal, wp.mean).point;
  const double numerator = norm(prec.apply(wp.mean - proj));
  // f(t) = 1 / (t - T), so dividing by c*f(t) multiplies by (t - T) / c.
  return params.lambda0 +
         numerator * static_cast<double>(t - breakaway_t) / params.c;
}

double waypoint_objective(const Point2& y, const Point2& g, const Point2& mean,
                          const Cov2& cov, double lambda) {
  const Cov2 prec = cov.regularized().inverse();
  const Point2 v = y - mean;
  return dot(v, prec.apply(v)) + lambda * squared_norm(y - g);
}

namespace {

Point2 closed_form_update(const Cov2& prec, const Point2& mean,
                          const Point2& g, double lambda) {
  // Solve (prec + lambda I) y = prec mean + lambda g.
  const double a = prec.xx + lambda;
  const double b = prec.xy;
  const double d = prec.yy + lambda;
  const double det = a * d - b * b;
  if (!(det > 1e-300)) {
    throw NotPositiveDefiniteError("singular system in waypoint update");
  }
  const Point2 rhs = prec.apply(mean) + g * lambda;
  return {(d * rhs.x - b * rhs.y) / det, (a * rhs.y - b * rhs.x) / det};
}

}  // namespace

std::vector<std::pair<Point2, Point2>> solve_waypoint_trace(
    const GaussianWaypoint& wp, const Polyline& goal, double lambda,
    int iterations) {
  if (lambda < 0.0) {
    throw std::invalid_argument("lambda must be nonnegative");
  }
  if (iterations < 1) {
    throw std::invalid_argument("iterations must be at least 1");
  }
  std::vector<std::pair<Point2, Point2>> trace;
  trace.reserve(static_cast<std::size_t>(iterations));
  if (lambda == 0.0) {
    // Unregularized maximum likelihood; the goal term vanishes.
    const Point2 g = project_point(goal, wp.mean).point;
    trace.assign(static_cast<std::size_t>(iterations), {wp.mean, g});
    return trace;
  }
  const Cov2 prec = wp.cov.regularized().inverse();
  Point2 y = wp.mean;
  for (int m = 0; m < iterations; ++m) {
    const Point2 g = project_point(goal, y).point;
    y = closed_form_update(prec, wp.mean, g, lambda);
    trace.emplace_back(y, g);
  }
  return trace;
}

Point2 solve_waypoint(const GaussianWaypoint& wp, const Polyline& goal,
                      double lambda, int iterations) {
  if (lambda == 0.0) {
    return wp.mean;
  }
  return solve_waypoint_trace(wp, goal, lambda, iterations).back().first;
}

std::vector<OrientedBox> make_footprints(const PredictedTrajectory& traj,
                                         const Polyline& goal,
                                         double actor_length,
                                         double actor_width) {
  const auto& wps = traj.waypoints;
  const std::size_t h = wps.size();
  std::vector<OrientedBox> boxes;
  boxes.reserve(h);
  for (std::size_t t = 0; t < h; ++t) {
    const Point2& prev = wps[t > 0 ? t - 1 : t].mean;
    const Point2& next = wps[t + 1 < h ? t + 1 : t].mean;
    const Point2 d = next - prev;
    double heading;
    if (norm(d) < 1e-6) {
      heading = heading_at(goal, project_point(goal, wps[t].mean).arc);
    } else {
      heading = std::atan2(d.y, d.x);
    }
    boxes.emplace_back(wps[t].mean, heading, actor_length, actor_width);
  }
  return boxes;
}

std::pair<std::vector<Point2>, std::size_t> stitch_prefix(
    const PredictedTrajectory& traj, const Polyline& goal,
    const std::vector<OrientedBox>& footprints, const StitchParams& params) {
  validate(params);
  const std::size_t h = traj.horizon();
  const std::size_t breakaway =
      params.use_schedule
          ? breakaway_horizon(traj, goal, footprints, params.alpha)
          : h;
  std::vector<Point2> points;
  points.reserve(h);
  for (std::size_t t = 1; t <= h; ++t) {
    const GaussianWaypoint& wp = traj.waypoints[t - 1];
    const double lambda = lambda_schedule(t, breakaway, wp, goal, params);
    points.push_back(solve_waypoint(wp, goal, lambda, params.iterations));
  }
  return {std::move(points), breakaway};
}

SolutionPath extend_path(const std::vector<Point2>& prefix,
                         std::size_t breakaway, const Polyline& goal,
                         const StitchParams& params) {
  validate(params);
  if (prefix.empty()) {
    throw std::invalid_argument("prefix must be nonempty");
  }
  SolutionPath out;
  out.points = prefix;
  out.prefix_length = prefix.size();
  out.breakaway = breakaway;

  const Projection terminal = project_point(goal, prefix.back());
  const double remaining = goal.length() - terminal.arc;
  const double s = params.sample_step;

  // Signed perpendicular offset of the terminal prefix point from the goal.
  const double head = heading_at(goal, terminal.arc);
  const double offset = dot(prefix.back() - terminal.point, left_normal(head));

  const auto budget_left = [&](double path_len) {
    if (params.target_length > 0) {
      return out.points.size() < params.target_length;
    }
    return path_len < 100.0;
  };

  double path_len = 0.0;
  for (std::size_t i = 1; i < prefix.size(); ++i) {
    path_len += distance(prefix[i - 1], prefix[i]);
  }

  const auto append = [&](const Point2& p) {
    path_len += distance(out.points.back(), p);
    out.points.push_back(p);
  };

  // Decay the offset to exactly zero over floor(d/s) samples; when the goal
  // ends sooner, decay over what is left of it.
  const double span = std::min(params.shrink_distance, remaining);
  const std::size_t steps = static_cast<std::size_t>(std::floor(span / s));
  for (std::size_t k = 1; k <= steps; ++k) {
    const double arc = terminal.arc + static_cast<double>(k) * s;
    const double scale =
        static_cast<double>(steps - k) / static_cast<double>(steps);
    const Point2 base = point_at(goal, arc);
    append(base + left_normal(heading_at(goal, arc)) * (offset * scale));
  }

  // Attach the goal remainder at the same sampling distance. When the goal
  // had no room for even one decay sample there is nothing left to attach.
  const bool on_goal = steps > 0 || std::abs(offset) <= kMinSegmentLength;
  double arc = terminal.arc + static_cast<double>(steps + 1) * s;
  while (arc < goal.length() - kMinSegmentLength && budget_left(path_len)) {
    append(point_at(goal, arc));
    arc += s;
  }
  if (on_goal && arc >= goal.length() - kMinSegmentLength &&
      budget_left(path_len) &&
      distance(out.points.back(), goal.vertices().back()) > kMinSegmentLength) {
    append(goal.vertices().back());
  }
  return out;
}

SolutionPath stitch(const PredictedTrajectory& traj, const Polyline& goal,
                    double actor_length, double actor_width,
                    const StitchParams& params) {
  if (traj.horizon() < 1 || !(traj.dt > 0.0)) {
    throw std::invalid_argument("trajectory must have dt > 0 and H >= 1");
  }
  const auto footprints =
      make_footprints(traj, goal, actor_length, actor_width);
  auto [prefix, breakaway] = stitch_prefix(traj, goal, footprints, params);
  return extend_path(prefix, breakaway, goal, params);
}

}  // namespace ustitch
