#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ustitch/baselines.hpp"

using namespace ustitch;

TEST_CASE("ballistic rolls to a stop under braking") {
  ActorState s;
  s.position = {0.0, 0.0};
  s.heading = 0.0;
  s.speed = 1.0;
  s.acceleration = -1.0;
  const TimedTrajectory traj = ballistic(s, 30, 0.1);
  REQUIRE(traj.states.size() == 31);
  // Stops after 1 s having covered half a meter, then stays put.
  CHECK(traj.states[10].position.x == doctest::Approx(0.5));
  CHECK(traj.states[30].position.x == doctest::Approx(0.5));
  CHECK(traj.states[10].speed == doctest::Approx(0.0));
  CHECK(traj.states[30].speed == 0.0);
  // Monotone in between: d(0.5 s) = 0.375.
  CHECK(traj.states[5].position.x == doctest::Approx(0.375));
}

TEST_CASE("ballistic has no speed cap") {
  ActorState s;
  s.speed = 10.0;
  s.acceleration = 2.0;
  const TimedTrajectory traj = ballistic(s, 30, 0.1);
  CHECK(traj.states[30].speed == doctest::Approx(16.0));
  CHECK(traj.states[30].position.x == doctest::Approx(10.0 * 3 + 9.0));
}

TEST_CASE("ballistic follows the initial heading") {
  ActorState s;
  s.position = {2.0, 1.0};
  s.heading = kPi / 2;
  s.speed = 4.0;
  const TimedTrajectory traj = ballistic(s, 10, 0.1);
  CHECK(traj.states[10].position.x == doctest::Approx(2.0));
  CHECK(traj.states[10].position.y == doctest::Approx(5.0));
  CHECK(traj.states[10].heading == s.heading);
}

TEST_CASE("ballistic validation") {
  ActorState s;
  CHECK_THROWS_AS(ballistic(s, -1, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(ballistic(s, 10, 0.0), std::invalid_argument);
}

TEST_CASE("pp_on_goal is a rollout on the goal path") {
  const Polyline goal({{0.0, 0.0}, {300.0, 0.0}});
  ActorState s;
  s.speed = 9.0;
  const SpeedProfileParams params;
  const TimedTrajectory a = pp_on_goal(s, goal, 60, params);
  const TimedTrajectory b =
      rollout(s, goal, 60, kDefaultDt, kDefaultLookahead, params);
  REQUIRE(a.states.size() == b.states.size());
  for (std::size_t k = 0; k < a.states.size(); ++k) {
    CHECK(a.states[k].position == b.states[k].position);
    CHECK(a.states[k].speed == b.states[k].speed);
  }
}

TEST_CASE("linear_stitch keeps the mean prefix verbatim") {
  const Polyline goal({{-10.0, 0.0}, {400.0, 0.0}});
  PredictedTrajectory traj;
  traj.dt = 0.1;
  for (int t = 1; t <= 60; ++t) {
    traj.waypoints.push_back(
        {{t * 0.37, 0.2 + 1e-3 * t * t}, Cov2::identity()});
  }
  StitchParams params;
  const SolutionPath sol = linear_stitch(traj, goal, 3.0, params);
  CHECK(sol.prefix_length == 30);
  CHECK(sol.breakaway == 30);
  REQUIRE(sol.points.size() > 30);
  for (std::size_t i = 0; i < 30; ++i) {
    // Bitwise: the window is copied, not recomputed.
    CHECK(sol.points[i].x == traj.waypoints[i].mean.x);
    CHECK(sol.points[i].y == traj.waypoints[i].mean.y);
  }
}

TEST_CASE("linear_stitch window arithmetic is robust to cadence rounding") {
  const Polyline goal({{-10.0, 0.0}, {400.0, 0.0}});
  PredictedTrajectory traj;
  traj.dt = 0.1;  // 0.1 is not exact in binary; 3.0/0.1 could round to 29.
  for (int t = 1; t <= 60; ++t) {
    traj.waypoints.push_back({{t * 0.5, 0.0}, Cov2::identity()});
  }
  for (int n = 1; n <= 6; ++n) {
    const SolutionPath sol =
        linear_stitch(traj, goal, static_cast<double>(n), StitchParams{});
    CHECK(sol.prefix_length == static_cast<std::size_t>(n) * 10);
  }
}

TEST_CASE("linear_stitch rejects out-of-range windows") {
  const Polyline goal({{-10.0, 0.0}, {400.0, 0.0}});
  PredictedTrajectory traj;
  traj.dt = 0.1;
  for (int t = 1; t <= 60; ++t) {
    traj.waypoints.push_back({{t * 0.5, 0.0}, Cov2::identity()});
  }
  CHECK_THROWS_AS(linear_stitch(traj, goal, 0.0, StitchParams{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(linear_stitch(traj, goal, 6.1, StitchParams{}),
                  std::invalid_argument);
  CHECK_NOTHROW(linear_stitch(traj, goal, 6.0, StitchParams{}));
}
