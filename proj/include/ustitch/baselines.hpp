#pragma once

#include "ustitch/stitch.hpp"
#include "ustitch/tracker.hpp"

namespace ustitch {

/// Constant-heading extrapolation: speed integrates the initial acceleration
/// and is clamped below at zero, with no upper bound and no jerk decay.
TimedTrajectory ballistic(const ActorState& state0, int horizon_steps,
                          double dt);

/// Pure-pursuit rollout directly on the goal path, ignoring the prediction.
TimedTrajectory pp_on_goal(const ActorState& state0, const Polyline& goal,
                           int horizon_steps,
                           const SpeedProfileParams& profile_params);

/// Keeps the first n_seconds of predicted means verbatim, then blends onto
/// the goal with the same shrinking-offset extension the stitcher uses.
/// Covariances are ignored.
SolutionPath linear_stitch(const PredictedTrajectory& traj,
                           const Polyline& goal, double n_seconds,
                           const StitchParams& params);

}  // namespace ustitch
