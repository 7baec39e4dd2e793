#include "ustitch/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ustitch {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_profile(const SpeedProfileParams& p) {
  if (p.hold_duration < 0.0) {
    throw std::invalid_argument("speed profile hold_duration must be >= 0");
  }
  if (p.jerk < 0.0) {
    throw std::invalid_argument("speed profile jerk must be >= 0");
  }
  if (!(p.v_min <= p.v_max)) {
    throw std::invalid_argument("speed profile needs v_min <= v_max");
  }
}

// Integral of the unclamped acceleration over [0, t]. The acceleration keeps
// its initial sign until it decays to zero, so this is monotone in t.
double accel_integral(double a0, double t, const SpeedProfileParams& p) {
  const double mag = std::abs(a0);
  if (mag == 0.0 || t <= 0.0) return 0.0;
  const double hold = std::min(t, p.hold_duration);
  const double span = p.jerk > 0.0 ? mag / p.jerk : kInf;
  const double u = std::clamp(t - p.hold_duration, 0.0, span);
  double total = mag * hold + mag * u;
  if (u > 0.0) total -= 0.5 * p.jerk * u * u;
  return a0 >= 0.0 ? total : -total;
}

// Integral of accel_integral over [0, t], for a0 >= 0.
double accel_double_integral(double a0, double t, const SpeedProfileParams& p) {
  if (a0 == 0.0 || t <= 0.0) return 0.0;
  const double t1 = p.hold_duration;
  const double hold = std::min(t, t1);
  const double span = p.jerk > 0.0 ? a0 / p.jerk : kInf;
  const double u = std::clamp(t - t1, 0.0, span);
  double total = 0.5 * a0 * hold * hold;
  total += a0 * t1 * u + 0.5 * a0 * u * u;
  if (u > 0.0) total -= p.jerk * u * u * u / 6.0;
  const double tail = t - t1 - u;
  if (tail > 0.0) {
    total += (a0 * t1 + 0.5 * a0 * span) * tail;
  }
  return total;
}

// Earliest t with accel_integral(t) == delta, for a0 > 0 and delta >= 0.
double saturation_time(double a0, double delta, const SpeedProfileParams& p) {
  if (delta <= 0.0) return 0.0;
  const double t1 = p.hold_duration;
  if (a0 * t1 >= delta) return delta / a0;
  if (p.jerk <= 0.0) return delta / a0;
  const double span = a0 / p.jerk;
  const double rem = delta - a0 * t1;
  if (rem > 0.5 * a0 * span) return kInf;
  const double disc = std::max(0.0, a0 * a0 - 2.0 * p.jerk * rem);
  return t1 + (a0 - std::sqrt(disc)) / p.jerk;
}

}  // namespace

double profile_speed(double v0, double a0, double t,
                     const SpeedProfileParams& params) {
  validate_profile(params);
  const double v0c = std::clamp(v0, params.v_min, params.v_max);
  return std::clamp(v0c + accel_integral(a0, t, params), params.v_min,
                    params.v_max);
}

double profile_distance(double v0, double a0, double t,
                        const SpeedProfileParams& params) {
  validate_profile(params);
  if (t <= 0.0) return 0.0;
  if (a0 < 0.0) {
    // Mirror speeds so the acceleration points up; distances flip sign back.
    SpeedProfileParams mirrored = params;
    mirrored.v_min = -params.v_max;
    mirrored.v_max = -params.v_min;
    return -profile_distance(-v0, -a0, t, mirrored);
  }
  const double v0c = std::clamp(v0, params.v_min, params.v_max);
  if (a0 == 0.0) return v0c * t;
  // The unclamped speed rises monotonically, so it pins to v_max at one
  // instant and stays there.
  const double tc = saturation_time(a0, params.v_max - v0c, params);
  const double te = std::min(t, tc);
  double dist = v0c * te + accel_double_integral(a0, te, params);
  if (t > tc) dist += params.v_max * (t - tc);
  return dist;
}

std::vector<Point2> TimedTrajectory::positions() const {
  std::vector<Point2> out;
  out.reserve(states.size());
  for (const ActorState& s : states) out.push_back(s.position);
  return out;
}

ActorState pure_pursuit_step(const ActorState& state, const Polyline& path,
                             double lookahead, double step_dt,
                             const SpeedProfile& profile, double elapsed) {
  if (!(lookahead > 0.0)) {
    throw std::invalid_argument("pure pursuit lookahead must be > 0");
  }
  if (!(step_dt > 0.0)) {
    throw std::invalid_argument("pure pursuit step_dt must be > 0");
  }
  ActorState next = state;
  const Projection proj = project_point(path, state.position);
  const Point2 target = point_at(path, proj.arc + lookahead);
  const Point2 rel = target - state.position;
  const double ch = std::cos(state.heading);
  const double sh = std::sin(state.heading);
  const double lateral = -sh * rel.x + ch * rel.y;
  const double dist2 = squared_norm(rel);
  const double ds = state.speed * step_dt;
  if (dist2 > kMinSegmentLength * kMinSegmentLength && ds > 0.0) {
    const double r_min =
        state.is_large ? kTurnRadiusLarge : kTurnRadiusStandard;
    const double kappa =
        std::clamp(2.0 * lateral / dist2, -1.0 / r_min, 1.0 / r_min);
    if (std::abs(kappa) < 1e-12) {
      next.position = state.position + Point2{ch, sh} * ds;
    } else {
      // Exact advance along the circular arc of curvature kappa.
      const double theta = state.heading + kappa * ds;
      next.position.x = state.position.x + (std::sin(theta) - sh) / kappa;
      next.position.y = state.position.y + (ch - std::cos(theta)) / kappa;
      next.heading = normalize_angle(theta);
    }
  }
  next.speed = profile.speed_at(elapsed + step_dt);
  return next;
}

TimedTrajectory rollout(const ActorState& state0, const Polyline& path,
                        int horizon_steps, double output_dt, double lookahead,
                        const SpeedProfileParams& profile_params) {
  if (horizon_steps < 0) {
    throw std::invalid_argument("rollout horizon_steps must be >= 0");
  }
  if (!(output_dt > 0.0)) {
    throw std::invalid_argument("rollout output_dt must be > 0");
  }
  const SpeedProfile profile = SpeedProfile::from_state(state0, profile_params);
  TimedTrajectory out;
  out.dt = output_dt;
  out.states.reserve(static_cast<std::size_t>(horizon_steps) + 1);
  out.states.push_back(state0);
  ActorState state = state0;
  const double sub_dt = 0.5 * output_dt;
  for (int k = 0; k < horizon_steps; ++k) {
    const double t = static_cast<double>(k) * output_dt;
    state = pure_pursuit_step(state, path, lookahead, sub_dt, profile, t);
    state = pure_pursuit_step(state, path, lookahead, sub_dt, profile,
                              t + sub_dt);
    out.states.push_back(state);
  }
  return out;
}

TimedTrajectory retime(const std::vector<Point2>& path_points,
                       const ActorState& state0,
                       const SpeedProfileParams& profile_params,
                       double output_dt, int horizon_steps) {
  if (horizon_steps < 0) {
    throw std::invalid_argument("retime horizon_steps must be >= 0");
  }
  if (!(output_dt > 0.0)) {
    throw std::invalid_argument("retime output_dt must be > 0");
  }
  const SpeedProfile profile = SpeedProfile::from_state(state0, profile_params);
  const std::vector<Point2> pts = dedup_points(path_points);
  TimedTrajectory out;
  out.dt = output_dt;
  out.states.reserve(static_cast<std::size_t>(horizon_steps) + 1);
  if (pts.size() < 2) {
    const Point2 at = pts.empty() ? state0.position : pts.front();
    for (int k = 0; k <= horizon_steps; ++k) {
      ActorState st = state0;
      st.position = at;
      st.speed = profile.speed_at(static_cast<double>(k) * output_dt);
      out.states.push_back(st);
    }
    return out;
  }
  const Polyline line(pts);
  const double total = line.length();
  const double terminal_heading = heading_at(line, total);
  const Point2 terminal_dir{std::cos(terminal_heading),
                            std::sin(terminal_heading)};
  for (int k = 0; k <= horizon_steps; ++k) {
    const double t = static_cast<double>(k) * output_dt;
    const double arc = profile.distance_at(t);
    ActorState st = state0;
    if (arc <= total) {
      st.position = point_at(line, arc);
      st.heading = heading_at(line, arc);
    } else {
      st.position = line.vertices().back() + terminal_dir * (arc - total);
      st.heading = terminal_heading;
    }
    st.speed = profile.speed_at(t);
    out.states.push_back(st);
  }
  return out;
}

}  // namespace ustitch
