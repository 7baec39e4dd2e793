#pragma once

#include <vector>

#include "ustitch/geom.hpp"

namespace ustitch {

// Tracking constants used throughout the benchmark.
inline constexpr double kDefaultDt = 0.1;            // seconds
inline constexpr int kDefaultHorizonSteps = 60;      // 6 s at 0.1 s
inline constexpr double kDefaultLookahead = 5.0;     // meters
inline constexpr double kTurnRadiusStandard = 5.0;   // meters
inline constexpr double kTurnRadiusLarge = 10.0;     // meters

struct ActorState {
  Point2 position;
  double heading = 0.0;       // radians, (-pi, pi]
  double speed = 0.0;         // m/s, >= 0
  double acceleration = 0.0;  // m/s^2
  double length = 4.8;
  double width = 2.0;
  bool is_large = false;
};

struct SpeedProfileParams {
  double hold_duration = 2.0;  // seconds the initial acceleration is held
  double jerk = 1.0;           // m/s^3 decay rate toward zero acceleration
  double v_min = 0.0;
  double v_max = 15.0;
};

/// Speed at time t: initial acceleration held for hold_duration, then its
/// magnitude decays to zero at `jerk`, with the speed clamped to
/// [v_min, v_max] throughout.
double profile_speed(double v0, double a0, double t,
                     const SpeedProfileParams& params);

/// Closed-form integral of profile_speed over [0, t].
double profile_distance(double v0, double a0, double t,
                        const SpeedProfileParams& params);

/// The profile anchored at an actor's initial speed and acceleration.
struct SpeedProfile {
  double v0 = 0.0;
  double a0 = 0.0;
  SpeedProfileParams params;

  static SpeedProfile from_state(const ActorState& state,
                                 const SpeedProfileParams& params) {
    return {state.speed, state.acceleration, params};
  }
  double speed_at(double t) const { return profile_speed(v0, a0, t, params); }
  double distance_at(double t) const {
    return profile_distance(v0, a0, t, params);
  }
};

struct TimedTrajectory {
  double dt = kDefaultDt;
  std::vector<ActorState> states;  // states[k] is at time k*dt, starting at 0

  std::vector<Point2> positions() const;
};

/// One pure-pursuit update: steer toward the point `lookahead` meters down
/// the path, curvature clamped to the vehicle turn radius, advancing
/// speed * step_dt along the resulting arc. The new speed comes from the
/// profile at elapsed + step_dt.
ActorState pure_pursuit_step(const ActorState& state, const Polyline& path,
                             double lookahead, double step_dt,
                             const SpeedProfile& profile, double elapsed);

/// Tracks the path for horizon_steps * output_dt seconds, two controller
/// sub-steps per output step. states[0] is the initial state.
TimedTrajectory rollout(const ActorState& state0, const Polyline& path,
                        int horizon_steps, double output_dt, double lookahead,
                        const SpeedProfileParams& profile_params);

/// Reassigns arrival times to a spatial path: the state at step k sits at
/// arc length profile.distance_at(k*dt) along it, extrapolating along the
/// terminal heading once the path is exhausted.
TimedTrajectory retime(const std::vector<Point2>& path_points,
                       const ActorState& state0,
                       const SpeedProfileParams& profile_params,
                       double output_dt, int horizon_steps);

}  // namespace ustitch
