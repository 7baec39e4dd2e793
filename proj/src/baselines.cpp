#include "ustitch/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ustitch {

TimedTrajectory ballistic(const ActorState& state0, int horizon_steps,
                          double dt) {
  if (horizon_steps < 0) {
    throw std::invalid_argument("ballistic horizon_steps must be >= 0");
  }
  if (!(dt > 0.0)) {
    throw std::invalid_argument("ballistic dt must be > 0");
  }
  const double v0 = std::max(state0.speed, 0.0);
  const double a0 = state0.acceleration;
  const Point2 dir{std::cos(state0.heading), std::sin(state0.heading)};
  // Time at which a decelerating actor comes to rest and stays there.
  const double stop_t = a0 < 0.0 ? v0 / -a0 : -1.0;
  TimedTrajectory out;
  out.dt = dt;
  out.states.reserve(static_cast<std::size_t>(horizon_steps) + 1);
  for (int k = 0; k <= horizon_steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const double m = a0 < 0.0 ? std::min(t, stop_t) : t;
    ActorState st = state0;
    st.position = state0.position + dir * (v0 * m + 0.5 * a0 * m * m);
    st.speed = std::max(v0 + a0 * t, 0.0);
    out.states.push_back(st);
  }
  return out;
}

TimedTrajectory pp_on_goal(const ActorState& state0, const Polyline& goal,
                           int horizon_steps,
                           const SpeedProfileParams& profile_params) {
  return rollout(state0, goal, horizon_steps, kDefaultDt, kDefaultLookahead,
                 profile_params);
}

SolutionPath linear_stitch(const PredictedTrajectory& traj,
                           const Polyline& goal, double n_seconds,
                           const StitchParams& params) {
  const auto keep = static_cast<std::size_t>(
      std::floor(n_seconds / traj.dt + 1e-9));
  if (keep < 1 || keep > traj.horizon()) {
    throw std::invalid_argument(
        "linear stitch window must cover between one waypoint and the "
        "prediction horizon");
  }
  std::vector<Point2> prefix;
  prefix.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) {
    prefix.push_back(traj.waypoints[i].mean);
  }
  return extend_path(prefix, keep, goal, params);
}

}  // namespace ustitch
