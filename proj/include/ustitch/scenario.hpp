#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ustitch/stitch.hpp"
#include "ustitch/tracker.hpp"

namespace ustitch {

/// Deterministic random source. Only this engine and these derivations are
/// used so that generated scenarios are identical across platforms and
/// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1), 53 mantissa bits.
  double uniform();
  double uniform(double lo, double hi);

  /// Standard normal via Box-Muller, one value per two engine draws.
  double normal();

  /// Uniform integer in [lo, hi], both inclusive.
  int uniform_int(int lo, int hi);

 private:
  std::mt19937_64 engine_;
};

/// Stable seed derivation for per-scenario streams.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b);

enum class Maneuver {
  kStraight,
  kLeftTurn,
  kRightTurn,
  kIntersection,
  kUTurn,
};

inline constexpr std::array<Maneuver, 5> kAllManeuvers{
    Maneuver::kStraight,    Maneuver::kLeftTurn, Maneuver::kRightTurn,
    Maneuver::kIntersection, Maneuver::kUTurn,
};

std::string to_string(Maneuver m);
Maneuver maneuver_from_string(const std::string& name);

/// Lateral drift injected into predicted means to mimic a predictor that
/// commits to the wrong route.
struct DivergenceSpec {
  bool enabled = false;
  double rate = 0.0;     // m/s of lateral offset growth
  double start_s = 0.0;  // onset time
  int side = 1;          // +1 drifts left of the motion direction, -1 right
};

struct GeneratorConfig {
  std::uint64_t seed = 2024;
  /// Scenario counts in kAllManeuvers order.
  std::array<int, 5> counts{787, 60, 53, 70, 30};

  double radius_min = 8.0;
  double radius_max = 20.0;
  double lead_in_min = 8.0;
  double lead_in_max = 16.0;
  double lead_out_min = 90.0;
  double lead_out_max = 130.0;
  double speed_min = 3.0;
  double speed_max = 12.0;
  double accel_min = -1.0;
  double accel_max = 1.5;

  double corner_cut_gain = 1.0;  // how aggressively ground truth cuts corners
  double base_sigma = 0.3;       // waypoint sigma at t=0, meters
  double noise_scale = 0.12;     // smoothed mean noise sigma, meters
  double cov_growth = 0.5;       // covariance scale growth, m^2 per second
  double cov_aspect_min = 0.25;  // lateral/longitudinal variance ratio
  double cov_aspect_max = 1.0;

  double divergence_prob = 0.25;  // chance of drift outside intersections
  double divergence_rate_min = 0.6;
  double divergence_rate_max = 1.3;
  double divergence_start_min = 1.0;
  double divergence_start_max = 2.5;

  int total() const;
};

struct ScenarioRecord {
  std::string id;
  Maneuver maneuver = Maneuver::kStraight;
  std::uint64_t seed = 0;
  ActorState actor;
  std::vector<Polyline> goal_candidates;
  std::size_t true_goal = 0;  // candidate the ground truth follows
  TimedTrajectory ground_truth;
  std::vector<PredictedTrajectory> predicted;
  DivergenceSpec divergence;
};

struct ScenarioSet {
  GeneratorConfig config;
  std::vector<ScenarioRecord> records;
};

class ScenarioFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lane-like goal path in a canonical frame: starts at the origin heading
/// +x with a straight lead-in, then the maneuver arc (radius ignored for
/// straight) sampled at chords of at most 0.5 m, then a straight lead-out.
Polyline gen_goal(Maneuver m, double radius, double lead_in, double lead_out);

/// Ground truth follows the goal but cuts corners: each point shifts toward
/// the inside of the local curve by cut_gain * 20 * curvature, capped at
/// 1.5 m, then the warped path is retimed with the actor's speed profile.
TimedTrajectory gen_ground_truth(const Polyline& goal, double cut_gain,
                                 const ActorState& state0,
                                 const SpeedProfileParams& profile_params);

/// Single prediction mode: ground-truth positions plus smoothed noise and
/// optional lateral drift, with motion-aligned covariances whose scale grows
/// linearly in time. aspect is the lateral/longitudinal variance ratio.
PredictedTrajectory gen_prediction(const TimedTrajectory& gt,
                                   double base_sigma, double noise_scale,
                                   double cov_growth, double aspect,
                                   const DivergenceSpec& divergence, Rng& rng);

/// Full benchmark set; every record derives its own stream from the config
/// seed, the maneuver index, and the record index, so the output depends
/// only on the config.
std::vector<ScenarioRecord> generate_records(const GeneratorConfig& config);

void save_scenarios(const std::string& path, const ScenarioSet& set);
ScenarioSet load_scenarios(const std::string& path);
GeneratorConfig load_generator_config(const std::string& path);

}  // namespace ustitch
