#pragma once

// Declarative experiment description. Values are stored in file units
// (degrees, pounds) so a load/serialize/load cycle is exact; the accessors
// convert to radians and kilograms.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "irltrack/core/types.hpp"
#include "irltrack/plant/joint.hpp"
#include "irltrack/traj/trajectory.hpp"

namespace irltrack::harness {

using Mat3 = std::array<std::array<double, 3>, 3>;
using Mat4 = std::array<std::array<double, 4>, 4>;

enum class ControllerKind { kIrl, kHomfac };
enum class ActorInit { kGreedyPlusNoise, kExplicit };

struct JointConfig {
  std::string name;
  double initial_angle_deg = 0.0;
  double u_max = 1.0;
  double homfac_phi0 = 15.0;
  bool actor_noise = true;  // gets the initialisation noise under greedy_plus_noise
  std::array<double, 3> gains{};  // used under the explicit rule
  Mat4 critic{};
  Mat3 q{};
  double r = 1.0;

  // Plant.
  double inertia_base = 0.05;
  double link_mass = 1.0;
  double link_length = 0.3;
  double viscous_friction = 1.0;
  double gravity_gain = 5.0;
  double actuator_gain = 0.2;
  double coupling_gain = 0.0;
  double rest_angle_deg = 0.0;
  int coupled_with = 0;  // 1-based joint number, 0 for none

  traj::TrajectorySpec trajectory;

  double initial_angle() const;
  plant::JointParams plant_params() const;
  CriticWeights critic_weights(double inversion_guard) const;
  CostWeights cost_weights() const;

  friend bool operator==(const JointConfig&, const JointConfig&) = default;
};

struct RatesConfig {
  double control_interval = 0.125;  // s
  std::size_t steps = 960;
  double sensor_hz = 50.0;
  double dt_inner = 1e-3;
  double homfac_interval = 0.2;
  double counts_per_turn = 3686400.0;
  friend bool operator==(const RatesConfig&, const RatesConfig&) = default;
};

struct LearningConfig {
  double alpha_c = 0.05;
  double alpha_a = 0.01;
  ResidualMode residual = ResidualMode::kSigned;
  bool convergence_gate = true;
  double convergence_sigma = 1e-4;
  std::size_t convergence_window = 16;
  double inversion_guard = kDefaultInversionGuard;
  friend bool operator==(const LearningConfig&, const LearningConfig&) = default;
};

struct ActorInitConfig {
  ActorInit rule = ActorInit::kGreedyPlusNoise;
  double noise_std = 0.1;
  friend bool operator==(const ActorInitConfig&, const ActorInitConfig&) = default;
};

/// Actor-weight disturbance over the first window_fraction of the episode.
struct DisturbanceConfig {
  double window_fraction = 0.2;
  double variance = 0.025;
  double sigma() const;
  friend bool operator==(const DisturbanceConfig&, const DisturbanceConfig&) = default;
};

struct PayloadConfig {
  plant::PayloadKind kind = plant::PayloadKind::kNone;
  double mass_lb = 0.0;
  double step_time = 0.0;
  double ramp_start = 0.0;
  double ramp_end = 0.0;
  plant::PayloadSchedule schedule() const;
  friend bool operator==(const PayloadConfig&, const PayloadConfig&) = default;
};

struct HomfacConfig {
  std::vector<double> alpha{0.5, 0.25, 0.125, 0.125};
  double eta = 0.8;
  double lambda = 0.1;
  double mu = 0.01;
  double rho = 0.8;
  double epsilon_reset = 1e-5;
  bool angles_in_degrees = true;  // units the estimator sees
  friend bool operator==(const HomfacConfig&, const HomfacConfig&) = default;
};

struct ExperimentConfig {
  int id = 1;
  std::string name;
  ControllerKind controller = ControllerKind::kIrl;
  std::uint64_t seed = 1;
  double duration = 120.0;
  double actuation_sign = 1.0;  // IRL output polarity
  RatesConfig rates;
  LearningConfig learning;
  ActorInitConfig actor_init;
  std::optional<DisturbanceConfig> disturbance;
  PayloadConfig payload;
  HomfacConfig homfac;
  std::vector<JointConfig> joints;

  /// Throws ConfigError naming the first offending key.
  void validate() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Parses and validates a TOML experiment file. Unknown keys are rejected.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<string>");
/// TOML text that parse_config reads back to an equal config.
std::string serialize_config(const ExperimentConfig& cfg);

const char* controller_name(ControllerKind kind);
ControllerKind controller_from_name(const std::string& name);

}  // namespace irltrack::harness
