#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "oracles.hpp"
#include "ustitch/eval.hpp"
#include "ustitch/scenario.hpp"

using namespace ustitch;

namespace {

TimedTrajectory straight_track(const Point2& from, const Point2& step,
                               int steps, double dt = 0.1) {
  TimedTrajectory t;
  t.dt = dt;
  for (int k = 0; k <= steps; ++k) {
    ActorState s;
    s.position = from + step * static_cast<double>(k);
    t.states.push_back(s);
  }
  return t;
}

}  // namespace

TEST_CASE("cross_track_error interior distances") {
  const Polyline gt({{0.0, 0.0}, {20.0, 0.0}});
  CHECK(cross_track_error({12.0, 1.0}, gt) == doctest::Approx(1.0));
  CHECK(cross_track_error({12.0, -1.0}, gt) == doctest::Approx(1.0));
  CHECK(cross_track_error({12.0, 0.0}, gt) == doctest::Approx(0.0));
}

TEST_CASE("cross_track_error past the ends ignores along-track slack") {
  const Polyline gt({{0.0, 0.0}, {10.0, 0.0}});
  // 5 m past the end but only 2 m off axis: the lead does not count.
  CHECK(cross_track_error({15.0, 2.0}, gt) == doctest::Approx(2.0));
  CHECK(cross_track_error({40.0, 0.0}, gt) == doctest::Approx(0.0));
  // Behind the start likewise.
  CHECK(cross_track_error({-5.0, 3.0}, gt) == doctest::Approx(3.0));

  // The ray continues the end segment's direction, not the x axis.
  const Polyline bent({{0.0, 0.0}, {10.0, 0.0}, {10.0, 10.0}});
  CHECK(cross_track_error({10.0, 15.0}, bent) == doctest::Approx(0.0));
  CHECK(cross_track_error({12.0, 15.0}, bent) == doctest::Approx(2.0));
}

TEST_CASE("cross_track_error is rigid-motion invariant") {
  Rng rng(41);
  for (int i = 0; i < 60; ++i) {
    const Polyline gt = oracle::random_lane_goal(rng);
    const Point2 p{rng.uniform(-80.0, 80.0), rng.uniform(-80.0, 80.0)};
    const double base = cross_track_error(p, gt);

    const double ang = rng.uniform(-kPi, kPi);
    const Point2 shift{rng.uniform(-200.0, 200.0),
                       rng.uniform(-200.0, 200.0)};
    const double c = std::cos(ang);
    const double s = std::sin(ang);
    const auto xf = [&](const Point2& q) {
      return Point2{c * q.x - s * q.y + shift.x, s * q.x + c * q.y + shift.y};
    };
    std::vector<Point2> moved;
    for (const Point2& v : gt.vertices()) moved.push_back(xf(v));
    CHECK(cross_track_error(xf(p), Polyline(moved)) ==
          doctest::Approx(base).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("select_goal_path_index picks the followed candidate") {
  const std::vector<Polyline> candidates{
      Polyline({{-10.0, 0.0}, {200.0, 0.0}}),
      Polyline({{-10.0, 5.0}, {200.0, 5.0}}),
  };
  const Point2 actor{0.0, 0.0};
  const Polyline low = Polyline({{0.0, 0.3}, {50.0, 0.3}});
  const Polyline high = Polyline({{0.0, 4.2}, {50.0, 4.2}});
  CHECK(select_goal_path_index(candidates, low, actor) == 0);
  CHECK(select_goal_path_index(candidates, high, actor) == 1);
  CHECK(&select_goal_path(candidates, high, actor) == &candidates[1]);
}

TEST_CASE("select_goal_path_index range and ties") {
  const Polyline gt({{0.0, 0.0}, {10.0, 0.0}});
  SUBCASE("far candidates are not considered") {
    const std::vector<Polyline> candidates{
        Polyline({{-10.0, 500.0}, {200.0, 500.0}}),
    };
    CHECK_THROWS_AS(select_goal_path_index(candidates, gt, {0.0, 0.0}),
                    NoGoalError);
  }
  SUBCASE("a candidate within exactly 100 m still counts") {
    const std::vector<Polyline> candidates{
        Polyline({{-10.0, 99.0}, {200.0, 99.0}}),
    };
    CHECK(select_goal_path_index(candidates, gt, {0.0, 0.0}) == 0);
  }
  SUBCASE("ties keep the earliest index") {
    const std::vector<Polyline> candidates{
        Polyline({{-10.0, 1.0}, {200.0, 1.0}}),
        Polyline({{-10.0, 1.0}, {200.0, 1.0}}),
        Polyline({{-10.0, -1.0}, {200.0, -1.0}}),
    };
    CHECK(select_goal_path_index(candidates, gt, {0.0, 0.0}) == 0);
  }
}

TEST_CASE("dtw_distance worked example") {
  const std::vector<Point2> a{{0.0, 0.0}, {1.0, 0.0}};
  const std::vector<Point2> b{{0.0, 1.0}, {1.0, 1.0}};
  CHECK(dtw_distance(a, b) == doctest::Approx(2.0));
  CHECK(dtw_distance(a, a) == doctest::Approx(0.0));
  CHECK_THROWS_AS(dtw_distance({}, a), std::invalid_argument);
  CHECK_THROWS_AS(dtw_distance(a, {}), std::invalid_argument);
}

TEST_CASE("dtw_distance matches the full-matrix recurrence") {
  Rng rng(42);
  for (int i = 0; i < 80; ++i) {
    std::vector<Point2> a;
    std::vector<Point2> b;
    const int na = rng.uniform_int(1, 12);
    const int nb = rng.uniform_int(1, 12);
    for (int k = 0; k < na; ++k) {
      a.push_back({rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0)});
    }
    for (int k = 0; k < nb; ++k) {
      b.push_back({rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0)});
    }
    const double want = oracle::dtw_full(a, b);
    CHECK(dtw_distance(a, b) == doctest::Approx(want).epsilon(1e-12));
    CHECK(dtw_distance(b, a) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("select_mode_index prefers the mode along the goal") {
  const Polyline goal({{0.0, 0.0}, {60.0, 0.0}});
  PredictedTrajectory off;
  PredictedTrajectory along;
  off.dt = along.dt = 0.1;
  for (int t = 1; t <= 30; ++t) {
    along.waypoints.push_back({{t * 0.5, 0.1}, Cov2::identity()});
    off.waypoints.push_back({{t * 0.5, 8.0}, Cov2::identity()});
  }
  CHECK(select_mode_index({off, along}, goal) == 1);
  CHECK(select_mode_index({along, off}, goal) == 0);
  // Ties keep the earliest.
  CHECK(select_mode_index({off, off}, goal) == 0);
  const std::vector<PredictedTrajectory> modes{off, along};
  CHECK(&select_mode(modes, goal) == &modes[1]);
  CHECK_THROWS_AS(select_mode_index({}, goal), std::invalid_argument);
}

TEST_CASE("metrics table accumulates and merges") {
  MetricsTable t;
  t.add("us", 6, "straight", 1.0);
  t.add("us", 6, "straight", 2.0);
  t.add("us", 6, "left_turn", 6.0);
  t.add("pp", 1, "straight", 0.5);

  CHECK(t.contains("us", 6, "straight"));
  CHECK_FALSE(t.contains("us", 5, "straight"));
  CHECK(t.mean("us", 6, "straight") == doctest::Approx(1.5));
  CHECK(t.count("us", 6, "straight") == 2);
  // Overall mean is sample-weighted across maneuvers.
  CHECK(t.overall_mean("us", 6) == doctest::Approx(3.0));
  CHECK_THROWS_AS(t.overall_mean("us", 4), std::out_of_range);

  MetricsTable other;
  other.add("us", 6, "straight", 3.0);
  t.merge(other);
  CHECK(t.count("us", 6, "straight") == 3);
  CHECK(t.mean("us", 6, "straight") == doctest::Approx(2.0));
}

TEST_CASE("metrics csv is sorted and fixed-format") {
  MetricsTable t;
  t.add("us", 2, "straight", 0.125);
  t.add("ballistic", 1, "left_turn", 2.0);
  const std::string csv = t.to_csv();
  CHECK(csv ==
        "method,horizon_s,maneuver,mean_cte_m,count\n"
        "ballistic,1,left_turn,2.000000,1\n"
        "us,2,straight,0.125000,1\n");
}

TEST_CASE("horizon_errors samples the prediction at whole seconds") {
  const TimedTrajectory gt = straight_track({0.0, 0.0}, {0.1, 0.0}, 60);
  TimedTrajectory pred = straight_track({0.0, 0.5}, {0.1, 0.0}, 60);
  const auto errs = horizon_errors("m", pred, gt);
  REQUIRE(errs.size() == 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(errs[i].horizon_s == i + 1);
    CHECK(errs[i].error_m == doctest::Approx(0.5));
    CHECK(errs[i].method == "m");
  }

  // A shorter prediction only reports the horizons it reaches.
  TimedTrajectory shorter = straight_track({0.0, 0.5}, {0.1, 0.0}, 31);
  const auto some = horizon_errors("m", shorter, gt);
  REQUIRE(some.size() == 3);
  CHECK(some.back().horizon_s == 3);
}

TEST_CASE("horizon_errors against a stationary ground truth") {
  // All GT states on one point: error degrades to plain distance.
  const TimedTrajectory gt = straight_track({1.0, 1.0}, {0.0, 0.0}, 60);
  const TimedTrajectory pred = straight_track({1.0, 4.0}, {0.0, 0.0}, 60);
  const auto errs = horizon_errors("m", pred, gt);
  REQUIRE(errs.size() == 6);
  CHECK(errs[0].error_m == doctest::Approx(3.0));
}

TEST_CASE("evaluate files every method under the maneuver") {
  const TimedTrajectory gt = straight_track({0.0, 0.0}, {0.1, 0.0}, 60);
  std::map<std::string, TimedTrajectory> outputs;
  outputs["a"] = straight_track({0.0, 1.0}, {0.1, 0.0}, 60);
  outputs["b"] = straight_track({0.0, 2.0}, {0.1, 0.0}, 60);
  const MetricsTable t = evaluate(outputs, gt, "straight");
  CHECK(t.mean("a", 3, "straight") == doctest::Approx(1.0));
  CHECK(t.mean("b", 6, "straight") == doctest::Approx(2.0));
  CHECK(t.count("a", 1, "straight") == 1);
  CHECK_FALSE(t.contains("a", 1, "left_turn"));
}
