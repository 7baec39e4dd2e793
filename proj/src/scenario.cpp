#include "ustitch/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <utility>

#include "json.hpp"

namespace ustitch {

namespace {

using ojson = nlohmann::ordered_json;
using njson = nlohmann::json;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

double Rng::normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
  return r * std::cos(2.0 * kPi * u2);
}

int Rng::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(base ^ (a * 0xA24BAED4963EE407ull)) ^
                    (b * 0x9FB21C651E98DF25ull));
}

std::string to_string(Maneuver m) {
  switch (m) {
    case Maneuver::kStraight:
      return "straight";
    case Maneuver::kLeftTurn:
      return "left_turn";
    case Maneuver::kRightTurn:
      return "right_turn";
    case Maneuver::kIntersection:
      return "intersection_straight_vs_turn";
    case Maneuver::kUTurn:
      return "u_turn";
  }
  throw std::invalid_argument("unknown maneuver value");
}

Maneuver maneuver_from_string(const std::string& name) {
  for (const Maneuver m : kAllManeuvers) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument("unknown maneuver name: " + name);
}

int GeneratorConfig::total() const {
  int sum = 0;
  for (const int c : counts) sum += c;
  return sum;
}

Polyline gen_goal(Maneuver m, double radius, double lead_in,
                  double lead_out) {
  if (m == Maneuver::kIntersection) {
    throw std::invalid_argument(
        "intersection scenes pair a turn goal with a straight goal; generate "
        "each separately");
  }
  if (!(lead_in > 0.0) || !(lead_out > 0.0)) {
    throw std::invalid_argument("goal tangent lengths must be > 0");
  }
  if (m == Maneuver::kStraight) {
    return Polyline({{0.0, 0.0}, {lead_in + lead_out, 0.0}});
  }
  if (!(radius > 0.0)) {
    throw std::invalid_argument("goal arc radius must be > 0");
  }
  const double sweep = m == Maneuver::kUTurn ? kPi : 0.5 * kPi;
  const double sgn = m == Maneuver::kRightTurn ? -1.0 : 1.0;
  std::vector<Point2> pts;
  pts.push_back({0.0, 0.0});
  pts.push_back({lead_in, 0.0});
  const Point2 center{lead_in, sgn * radius};
  const int n = static_cast<int>(std::ceil(sweep * radius / 0.5));
  for (int k = 1; k <= n; ++k) {
    const double phi = sweep * static_cast<double>(k) / n;
    pts.push_back(center +
                  Point2{std::sin(phi), -sgn * std::cos(phi)} * radius);
  }
  const double exit_heading = sgn * sweep;
  pts.push_back(pts.back() +
                Point2{std::cos(exit_heading), std::sin(exit_heading)} *
                    lead_out);
  return Polyline(dedup_points(pts));
}

TimedTrajectory gen_ground_truth(const Polyline& goal, double cut_gain,
                                 const ActorState& state0,
                                 const SpeedProfileParams& profile_params) {
  if (cut_gain < 0.0) {
    throw std::invalid_argument("corner cut gain must be >= 0");
  }
  const std::vector<Point2> pts = resample(goal, 0.5).vertices();
  const std::size_t n = pts.size();
  std::vector<double> curvature(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const Point2 a = pts[i] - pts[i - 1];
    const Point2 b = pts[i + 1] - pts[i];
    const double la = norm(a);
    const double lb = norm(b);
    if (la < kMinSegmentLength || lb < kMinSegmentLength) continue;
    const double turn =
        normalize_angle(std::atan2(b.y, b.x) - std::atan2(a.y, a.x));
    curvature[i] = turn / (0.5 * (la + lb));
  }
  // Moving average over roughly +-2 m keeps the warp onset gradual.
  constexpr int kWindow = 4;
  std::vector<double> smooth(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= kWindow ? i - kWindow : 0;
    const std::size_t hi = std::min(n - 1, i + kWindow);
    double sum = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) sum += curvature[j];
    smooth[i] = sum / static_cast<double>(hi - lo + 1);
  }
  std::vector<Point2> warped(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i > 0 ? i - 1 : 0;
    const std::size_t hi = std::min(n - 1, i + 1);
    Point2 dir = pts[hi] - pts[lo];
    const double len = norm(dir);
    if (len < kMinSegmentLength) dir = Point2{1.0, 0.0};
    else dir = dir * (1.0 / len);
    const Point2 left{-dir.y, dir.x};
    // Positive curvature turns left, so the inside of the curve is the left.
    const double offset =
        std::clamp(20.0 * cut_gain * smooth[i], -1.5, 1.5);
    warped[i] = pts[i] + left * offset;
  }
  return retime(warped, state0, profile_params, kDefaultDt,
                kDefaultHorizonSteps);
}

PredictedTrajectory gen_prediction(const TimedTrajectory& gt,
                                   double base_sigma, double noise_scale,
                                   double cov_growth, double aspect,
                                   const DivergenceSpec& divergence,
                                   Rng& rng) {
  if (gt.states.size() < 2) {
    throw std::invalid_argument("prediction needs at least one ground-truth step");
  }
  if (!(base_sigma > 0.0)) {
    throw std::invalid_argument("base_sigma must be > 0");
  }
  if (noise_scale < 0.0 || cov_growth < 0.0) {
    throw std::invalid_argument("noise_scale and cov_growth must be >= 0");
  }
  if (!(aspect > 0.0) || aspect > 1.0) {
    throw std::invalid_argument("covariance aspect must be in (0, 1]");
  }
  const int horizon = std::min<int>(kDefaultHorizonSteps,
                                    static_cast<int>(gt.states.size()) - 1);
  // Correlated noise: white draws blurred with a gaussian kernel whose
  // weights are L2-normalized so the marginal sigma stays noise_scale.
  constexpr int kHalf = 12;
  constexpr double kKernelSigma = 5.0;
  std::vector<Point2> noise(horizon, Point2{0.0, 0.0});
  if (noise_scale > 0.0) {
    std::array<double, 2 * kHalf + 1> w{};
    double sq = 0.0;
    for (int j = -kHalf; j <= kHalf; ++j) {
      w[j + kHalf] = std::exp(-0.5 * j * j / (kKernelSigma * kKernelSigma));
      sq += w[j + kHalf] * w[j + kHalf];
    }
    const double scale = noise_scale / std::sqrt(sq);
    std::vector<Point2> raw(static_cast<std::size_t>(horizon) + 2 * kHalf);
    for (Point2& r : raw) {
      r.x = rng.normal();
      r.y = rng.normal();
    }
    for (int t = 0; t < horizon; ++t) {
      Point2 acc{0.0, 0.0};
      for (int j = -kHalf; j <= kHalf; ++j) {
        acc = acc + raw[static_cast<std::size_t>(t + kHalf + j)] * w[j + kHalf];
      }
      noise[t] = acc * scale;
    }
  }
  PredictedTrajectory out;
  out.dt = gt.dt;
  out.waypoints.reserve(static_cast<std::size_t>(horizon));
  const auto last = gt.states.size() - 1;
  for (int t = 1; t <= horizon; ++t) {
    const std::size_t lo = static_cast<std::size_t>(t) - 1;
    const std::size_t hi = std::min(static_cast<std::size_t>(t) + 1, last);
    const Point2 d = gt.states[hi].position - gt.states[lo].position;
    const double theta =
        norm(d) > kMinSegmentLength ? std::atan2(d.y, d.x)
                                    : gt.states[static_cast<std::size_t>(t)].heading;
    Point2 mean = gt.states[static_cast<std::size_t>(t)].position +
                  noise[static_cast<std::size_t>(t) - 1];
    if (divergence.enabled) {
      const double grown =
          std::max(0.0, static_cast<double>(t) * gt.dt - divergence.start_s);
      const Point2 left{-std::sin(theta), std::cos(theta)};
      mean = mean + left * (static_cast<double>(divergence.side) *
                            divergence.rate * grown);
    }
    const double s2 =
        base_sigma * base_sigma + cov_growth * static_cast<double>(t) * gt.dt;
    out.waypoints.push_back(
        {mean, Cov2::rotated_diagonal(s2, s2 * aspect, theta)});
  }
  return out;
}

namespace {

struct ScenePose {
  double angle = 0.0;
  Point2 shift;
  double c = 1.0;
  double s = 0.0;

  ScenePose(double a, Point2 t)
      : angle(a), shift(t), c(std::cos(a)), s(std::sin(a)) {}

  Point2 apply(const Point2& p) const {
    return {c * p.x - s * p.y + shift.x, s * p.x + c * p.y + shift.y};
  }
  double apply_heading(double h) const { return normalize_angle(h + angle); }
  Cov2 apply_cov(const Cov2& m) const {
    return {c * c * m.xx - 2.0 * s * c * m.xy + s * s * m.yy,
            s * c * m.xx + (c * c - s * s) * m.xy - s * c * m.yy,
            s * s * m.xx + 2.0 * s * c * m.xy + c * c * m.yy};
  }
  Polyline apply(const Polyline& line) const {
    std::vector<Point2> pts;
    pts.reserve(line.vertices().size());
    for (const Point2& p : line.vertices()) pts.push_back(apply(p));
    return Polyline(pts);
  }
  void apply(TimedTrajectory& traj) const {
    for (ActorState& st : traj.states) {
      st.position = apply(st.position);
      st.heading = apply_heading(st.heading);
    }
  }
  void apply(PredictedTrajectory& traj) const {
    for (GaussianWaypoint& wp : traj.waypoints) {
      wp.mean = apply(wp.mean);
      wp.cov = apply_cov(wp.cov);
    }
  }
};

void validate_range(double lo, double hi, const char* what) {
  if (!(lo <= hi)) {
    throw std::invalid_argument(std::string(what) + " range must have min <= max");
  }
}

void validate_config(const GeneratorConfig& cfg) {
  for (const int c : cfg.counts) {
    if (c < 0) throw std::invalid_argument("scenario counts must be >= 0");
  }
  if (!(cfg.radius_min > 0.0)) {
    throw std::invalid_argument("radius_min must be > 0");
  }
  validate_range(cfg.radius_min, cfg.radius_max, "radius");
  validate_range(cfg.lead_in_min, cfg.lead_in_max, "lead_in");
  validate_range(cfg.lead_out_min, cfg.lead_out_max, "lead_out");
  validate_range(cfg.speed_min, cfg.speed_max, "speed");
  validate_range(cfg.accel_min, cfg.accel_max, "accel");
  validate_range(cfg.cov_aspect_min, cfg.cov_aspect_max, "cov_aspect");
  validate_range(cfg.divergence_rate_min, cfg.divergence_rate_max,
                 "divergence rate");
  validate_range(cfg.divergence_start_min, cfg.divergence_start_max,
                 "divergence start");
  if (cfg.speed_min < 0.0) {
    throw std::invalid_argument("speed_min must be >= 0");
  }
  if (!(cfg.base_sigma > 0.0)) {
    throw std::invalid_argument("base_sigma must be > 0");
  }
  if (cfg.noise_scale < 0.0 || cfg.cov_growth < 0.0 ||
      cfg.corner_cut_gain < 0.0) {
    throw std::invalid_argument(
        "noise_scale, cov_growth and corner_cut_gain must be >= 0");
  }
  if (!(cfg.cov_aspect_min > 0.0) || cfg.cov_aspect_max > 1.0) {
    throw std::invalid_argument("cov_aspect range must lie in (0, 1]");
  }
  if (cfg.divergence_prob < 0.0 || cfg.divergence_prob > 1.0) {
    throw std::invalid_argument("divergence_prob must be in [0, 1]");
  }
}

}  // namespace

std::vector<ScenarioRecord> generate_records(const GeneratorConfig& cfg) {
  validate_config(cfg);
  std::vector<ScenarioRecord> out;
  out.reserve(static_cast<std::size_t>(cfg.total()));
  const SpeedProfileParams profile;
  for (std::size_t mi = 0; mi < kAllManeuvers.size(); ++mi) {
    const Maneuver m = kAllManeuvers[mi];
    for (int i = 0; i < cfg.counts[mi]; ++i) {
      const std::uint64_t seed =
          mix_seed(cfg.seed, mi, static_cast<std::uint64_t>(i));
      Rng rng(seed);
      const double radius =
          m == Maneuver::kUTurn
              ? rng.uniform(cfg.radius_min, std::min(cfg.radius_max, 10.0))
              : rng.uniform(cfg.radius_min, cfg.radius_max);
      const double lead_in = rng.uniform(cfg.lead_in_min, cfg.lead_in_max);
      const double lead_out = rng.uniform(cfg.lead_out_min, cfg.lead_out_max);
      const double v0 = rng.uniform(cfg.speed_min, cfg.speed_max);
      const double a0 = rng.uniform(cfg.accel_min, cfg.accel_max);

      ScenarioRecord rec;
      rec.maneuver = m;
      rec.seed = seed;
      char id[64];
      std::snprintf(id, sizeof(id), "%s-%04d", to_string(m).c_str(), i);
      rec.id = id;

      Maneuver turn = m;
      if (m == Maneuver::kIntersection) {
        turn = rng.uniform() < 0.5 ? Maneuver::kLeftTurn
                                   : Maneuver::kRightTurn;
        rec.goal_candidates.push_back(
            gen_goal(turn, radius, lead_in, lead_out));
        rec.goal_candidates.push_back(
            gen_goal(Maneuver::kStraight, radius, lead_in, lead_out));
      } else {
        rec.goal_candidates.push_back(gen_goal(m, radius, lead_in, lead_out));
      }
      rec.true_goal = 0;

      if (m == Maneuver::kIntersection) {
        // The predictor believes the actor keeps straight, drifting away
        // from the turn it actually makes.
        rec.divergence.enabled = true;
        rec.divergence.side = turn == Maneuver::kLeftTurn ? -1 : 1;
      } else if (rng.uniform() < cfg.divergence_prob) {
        rec.divergence.enabled = true;
        switch (m) {
          case Maneuver::kStraight:
            rec.divergence.side = rng.uniform() < 0.5 ? -1 : 1;
            break;
          case Maneuver::kRightTurn:
            rec.divergence.side = 1;
            break;
          default:  // left turns and u-turns drift outward, to the right
            rec.divergence.side = -1;
            break;
        }
      }
      if (rec.divergence.enabled) {
        rec.divergence.rate =
            rng.uniform(cfg.divergence_rate_min, cfg.divergence_rate_max);
        rec.divergence.start_s =
            rng.uniform(cfg.divergence_start_min, cfg.divergence_start_max);
      }

      rec.actor.position = {0.0, 0.0};
      rec.actor.heading = 0.0;
      rec.actor.speed = v0;
      rec.actor.acceleration = a0;

      const double gain = cfg.corner_cut_gain * rng.uniform(0.5, 1.0);
      rec.ground_truth =
          gen_ground_truth(rec.goal_candidates[rec.true_goal], gain,
                           rec.actor, profile);
      const double aspect =
          rng.uniform(cfg.cov_aspect_min, cfg.cov_aspect_max);
      rec.predicted.push_back(gen_prediction(rec.ground_truth, cfg.base_sigma,
                                             cfg.noise_scale, cfg.cov_growth,
                                             aspect, rec.divergence, rng));

      const ScenePose pose(rng.uniform(-kPi, kPi),
                           {rng.uniform(-400.0, 400.0),
                            rng.uniform(-400.0, 400.0)});
      rec.actor.position = pose.apply(rec.actor.position);
      rec.actor.heading = pose.apply_heading(rec.actor.heading);
      std::vector<Polyline> placed;
      placed.reserve(rec.goal_candidates.size());
      for (const Polyline& g : rec.goal_candidates) placed.push_back(pose.apply(g));
      rec.goal_candidates = std::move(placed);
      pose.apply(rec.ground_truth);
      for (PredictedTrajectory& p : rec.predicted) pose.apply(p);

      out.push_back(std::move(rec));
    }
  }
  return out;
}

namespace {

ojson point_to_json(const Point2& p) { return ojson::array({p.x, p.y}); }

Point2 point_from_json(const njson& j) {
  if (!j.is_array() || j.size() != 2) {
    throw ScenarioFormatError("point must be a [x, y] array");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

ojson line_to_json(const Polyline& line) {
  ojson arr = ojson::array();
  for (const Point2& p : line.vertices()) arr.push_back(point_to_json(p));
  return arr;
}

std::vector<Point2> points_from_json(const njson& j) {
  std::vector<Point2> pts;
  pts.reserve(j.size());
  for (const njson& e : j) pts.push_back(point_from_json(e));
  return pts;
}

ojson config_to_json(const GeneratorConfig& cfg) {
  ojson counts;
  for (std::size_t i = 0; i < kAllManeuvers.size(); ++i) {
    counts[to_string(kAllManeuvers[i])] = cfg.counts[i];
  }
  return ojson{
      {"seed", cfg.seed},
      {"counts", counts},
      {"radius", {cfg.radius_min, cfg.radius_max}},
      {"lead_in", {cfg.lead_in_min, cfg.lead_in_max}},
      {"lead_out", {cfg.lead_out_min, cfg.lead_out_max}},
      {"speed", {cfg.speed_min, cfg.speed_max}},
      {"accel", {cfg.accel_min, cfg.accel_max}},
      {"corner_cut_gain", cfg.corner_cut_gain},
      {"base_sigma", cfg.base_sigma},
      {"noise_scale", cfg.noise_scale},
      {"cov_growth", cfg.cov_growth},
      {"cov_aspect", {cfg.cov_aspect_min, cfg.cov_aspect_max}},
      {"divergence",
       {{"prob", cfg.divergence_prob},
        {"rate", {cfg.divergence_rate_min, cfg.divergence_rate_max}},
        {"start", {cfg.divergence_start_min, cfg.divergence_start_max}}}},
  };
}

void read_pair(const njson& j, const char* key, double& lo, double& hi) {
  if (!j.contains(key)) return;
  const njson& v = j.at(key);
  if (!v.is_array() || v.size() != 2) {
    throw ScenarioFormatError(std::string(key) + " must be a [min, max] pair");
  }
  lo = v[0].get<double>();
  hi = v[1].get<double>();
}

GeneratorConfig config_from_json(const njson& j) {
  GeneratorConfig cfg;
  cfg.seed = j.value("seed", cfg.seed);
  if (j.contains("counts")) {
    const njson& counts = j.at("counts");
    if (!counts.is_object()) {
      throw ScenarioFormatError(
          "counts must be an object keyed by maneuver name");
    }
    for (const auto& [key, value] : counts.items()) {
      bool known = false;
      for (std::size_t i = 0; i < kAllManeuvers.size(); ++i) {
        if (key == to_string(kAllManeuvers[i])) {
          cfg.counts[i] = value.get<int>();
          known = true;
          break;
        }
      }
      if (!known) {
        throw ScenarioFormatError("counts: unknown maneuver \"" + key + "\"");
      }
    }
  }
  read_pair(j, "radius", cfg.radius_min, cfg.radius_max);
  read_pair(j, "lead_in", cfg.lead_in_min, cfg.lead_in_max);
  read_pair(j, "lead_out", cfg.lead_out_min, cfg.lead_out_max);
  read_pair(j, "speed", cfg.speed_min, cfg.speed_max);
  read_pair(j, "accel", cfg.accel_min, cfg.accel_max);
  cfg.corner_cut_gain = j.value("corner_cut_gain", cfg.corner_cut_gain);
  cfg.base_sigma = j.value("base_sigma", cfg.base_sigma);
  cfg.noise_scale = j.value("noise_scale", cfg.noise_scale);
  cfg.cov_growth = j.value("cov_growth", cfg.cov_growth);
  read_pair(j, "cov_aspect", cfg.cov_aspect_min, cfg.cov_aspect_max);
  if (j.contains("divergence")) {
    const njson& d = j.at("divergence");
    cfg.divergence_prob = d.value("prob", cfg.divergence_prob);
    read_pair(d, "rate", cfg.divergence_rate_min, cfg.divergence_rate_max);
    read_pair(d, "start", cfg.divergence_start_min, cfg.divergence_start_max);
  }
  return cfg;
}

ojson trajectory_to_json(const TimedTrajectory& traj) {
  ojson positions = ojson::array();
  ojson headings = ojson::array();
  ojson speeds = ojson::array();
  for (const ActorState& st : traj.states) {
    positions.push_back(point_to_json(st.position));
    headings.push_back(st.heading);
    speeds.push_back(st.speed);
  }
  return ojson{{"dt", traj.dt},
               {"positions", positions},
               {"headings", headings},
               {"speeds", speeds}};
}

TimedTrajectory trajectory_from_json(const njson& j, const ActorState& actor) {
  TimedTrajectory traj;
  traj.dt = j.at("dt").get<double>();
  const njson& positions = j.at("positions");
  const njson& headings = j.at("headings");
  const njson& speeds = j.at("speeds");
  if (positions.size() != headings.size() ||
      positions.size() != speeds.size()) {
    throw ScenarioFormatError(
        "positions, headings and speeds must have equal length");
  }
  traj.states.reserve(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    ActorState st = actor;
    st.position = point_from_json(positions[i]);
    st.heading = headings[i].get<double>();
    st.speed = speeds[i].get<double>();
    traj.states.push_back(st);
  }
  return traj;
}

ojson prediction_to_json(const PredictedTrajectory& traj) {
  ojson means = ojson::array();
  ojson covs = ojson::array();
  for (const GaussianWaypoint& wp : traj.waypoints) {
    means.push_back(point_to_json(wp.mean));
    covs.push_back(ojson::array({wp.cov.xx, wp.cov.xy, wp.cov.yy}));
  }
  return ojson{{"dt", traj.dt}, {"means", means}, {"covs", covs}};
}

PredictedTrajectory prediction_from_json(const njson& j) {
  PredictedTrajectory traj;
  traj.dt = j.at("dt").get<double>();
  const njson& means = j.at("means");
  const njson& covs = j.at("covs");
  if (means.size() != covs.size()) {
    throw ScenarioFormatError("means and covs must have equal length");
  }
  traj.waypoints.reserve(means.size());
  for (std::size_t i = 0; i < means.size(); ++i) {
    const njson& c = covs[i];
    if (!c.is_array() || c.size() != 3) {
      throw ScenarioFormatError("covariance must be a [xx, xy, yy] array");
    }
    traj.waypoints.push_back({point_from_json(means[i]),
                              Cov2{c[0].get<double>(), c[1].get<double>(),
                                   c[2].get<double>()}});
  }
  return traj;
}

ojson record_to_json(const ScenarioRecord& rec) {
  ojson goals = ojson::array();
  for (const Polyline& g : rec.goal_candidates) goals.push_back(line_to_json(g));
  ojson preds = ojson::array();
  for (const PredictedTrajectory& p : rec.predicted) {
    preds.push_back(prediction_to_json(p));
  }
  return ojson{
      {"id", rec.id},
      {"maneuver", to_string(rec.maneuver)},
      {"seed", rec.seed},
      {"actor",
       {{"position", point_to_json(rec.actor.position)},
        {"heading", rec.actor.heading},
        {"speed", rec.actor.speed},
        {"acceleration", rec.actor.acceleration},
        {"length", rec.actor.length},
        {"width", rec.actor.width},
        {"is_large", rec.actor.is_large}}},
      {"goals", goals},
      {"true_goal", rec.true_goal},
      {"divergence",
       {{"enabled", rec.divergence.enabled},
        {"rate", rec.divergence.rate},
        {"start_s", rec.divergence.start_s},
        {"side", rec.divergence.side}}},
      {"ground_truth", trajectory_to_json(rec.ground_truth)},
      {"predicted", preds},
  };
}

ScenarioRecord record_from_json(const njson& j) {
  ScenarioRecord rec;
  rec.id = j.at("id").get<std::string>();
  rec.maneuver = maneuver_from_string(j.at("maneuver").get<std::string>());
  rec.seed = j.at("seed").get<std::uint64_t>();
  const njson& actor = j.at("actor");
  rec.actor.position = point_from_json(actor.at("position"));
  rec.actor.heading = actor.at("heading").get<double>();
  rec.actor.speed = actor.at("speed").get<double>();
  rec.actor.acceleration = actor.at("acceleration").get<double>();
  rec.actor.length = actor.at("length").get<double>();
  rec.actor.width = actor.at("width").get<double>();
  rec.actor.is_large = actor.at("is_large").get<bool>();
  for (const njson& g : j.at("goals")) {
    rec.goal_candidates.emplace_back(points_from_json(g));
  }
  rec.true_goal = j.at("true_goal").get<std::size_t>();
  if (rec.true_goal >= rec.goal_candidates.size()) {
    throw ScenarioFormatError("true_goal is out of range");
  }
  const njson& div = j.at("divergence");
  rec.divergence.enabled = div.at("enabled").get<bool>();
  rec.divergence.rate = div.at("rate").get<double>();
  rec.divergence.start_s = div.at("start_s").get<double>();
  rec.divergence.side = div.at("side").get<int>();
  rec.ground_truth = trajectory_from_json(j.at("ground_truth"), rec.actor);
  for (const njson& p : j.at("predicted")) {
    rec.predicted.push_back(prediction_from_json(p));
  }
  if (rec.predicted.empty()) {
    throw ScenarioFormatError("scenario needs at least one prediction mode");
  }
  return rec;
}

}  // namespace

void save_scenarios(const std::string& path, const ScenarioSet& set) {
  ojson doc;
  doc["schema_version"] = 1;
  doc["config"] = config_to_json(set.config);
  ojson records = ojson::array();
  for (const ScenarioRecord& rec : set.records) {
    records.push_back(record_to_json(rec));
  }
  doc["scenarios"] = std::move(records);
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open " + path + " for writing");
  }
  out << doc.dump() << "\n";
  if (!out) {
    throw std::runtime_error("failed writing " + path);
  }
}

ScenarioSet load_scenarios(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  njson doc;
  try {
    doc = njson::parse(in);
  } catch (const njson::exception& e) {
    throw ScenarioFormatError(path + ": " + e.what());
  }
  ScenarioSet set;
  try {
    const int version = doc.at("schema_version").get<int>();
    if (version != 1) {
      throw ScenarioFormatError("unsupported schema_version " +
                                std::to_string(version));
    }
    set.config = config_from_json(doc.at("config"));
  } catch (const ScenarioFormatError& e) {
    throw ScenarioFormatError(path + ": " + e.what());
  } catch (const njson::exception& e) {
    throw ScenarioFormatError(path + ": " + e.what());
  }
  const njson& records = doc.at("scenarios");
  set.records.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    try {
      set.records.push_back(record_from_json(records[i]));
    } catch (const ScenarioFormatError& e) {
      throw ScenarioFormatError(path + ": scenario " + std::to_string(i) +
                                ": " + e.what());
    } catch (const njson::exception& e) {
      throw ScenarioFormatError(path + ": scenario " + std::to_string(i) +
                                ": " + e.what());
    } catch (const std::invalid_argument& e) {
      throw ScenarioFormatError(path + ": scenario " + std::to_string(i) +
                                ": " + e.what());
    }
  }
  return set;
}

GeneratorConfig load_generator_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  njson doc;
  try {
    doc = njson::parse(in);
  } catch (const njson::exception& e) {
    throw ScenarioFormatError(path + ": " + e.what());
  }
  try {
    return config_from_json(doc);
  } catch (const ScenarioFormatError& e) {
    throw ScenarioFormatError(path + ": " + e.what());
  } catch (const njson::exception& e) {
    throw ScenarioFormatError(path + ": " + e.what());
  }
}

}  // namespace ustitch
