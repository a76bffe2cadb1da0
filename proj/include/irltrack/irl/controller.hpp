#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <random>

#include "irltrack/core/types.hpp"
#include "irltrack/irl/episode.hpp"

namespace irltrack::irl {

struct IrlSettings {
  double interval = 0.125;  // nu, s
  std::size_t steps = 960;  // N
  LearningRates rates{0.05, 0.01};
  ResidualMode mode = ResidualMode::kSigned;
  bool convergence_gate = true;
  double convergence_sigma = 1e-4;
  std::size_t convergence_window = 16;
  double u_max = 1.0;
  /// Sign applied between the controller's u and the plant input.
  double actuation_sign = 1.0;
};

/// Actor-weight disturbance: zero-mean Gaussian with standard deviation
/// `sigma`, active for steps with t < until.
struct NoiseWindow {
  double sigma = 0.0;
  double until = 0.0;
  bool active(double t) const { return sigma > 0.0 && t < until; }
};

/// Adds an independent N(0, sigma^2) draw to each gain. sigma = 0 is the identity.
ActorWeights disturb_actor(const ActorWeights& a, double sigma, std::mt19937_64& rng);

struct ControllerState {
  double u = 0.0;
  ErrorWindow x;
  CriticWeights critic = CriticWeights::identity();
  ActorWeights actor;
  std::size_t step = 0;
  std::optional<std::size_t> converged_at;
};

struct UpdateResult {
  ControllerState state;
  double s_hat = 0.0;
  double s_tilde = 0.0;
  double u_tilde = 0.0;
};

/// One value-iteration step on the transition (now -> next): critic first,
/// actor target from the updated critic, actor second. The actor learns from
/// its nominal output w . now.x. Only critic, actor and step change; shifting
/// the window and accumulating u belong to the caller.
UpdateResult update_step(const ControllerState& state, const AugmentedState& now,
                         const AugmentedState& next, const CostWeights& cw,
                         const IrlSettings& settings);

/// Online actor-critic controller for one joint.
class IrlJointController final : public JointController {
 public:
  IrlJointController(const IrlSettings& settings, const CostWeights& cost,
                     const CriticWeights& critic, const ActorWeights& actor, double u0 = 0.0,
                     NoiseWindow noise = {}, std::uint64_t seed = 0);

  double command(const StepInput& in) override;
  StepRecord complete(double theta_next, double theta_d_next) override;

  const ControllerState& state() const { return state_; }

 private:
  IrlSettings settings_;
  CostWeights cost_;
  NoiseWindow noise_;
  std::mt19937_64 rng_;
  ControllerState state_;
  std::deque<CriticWeights> history_;
  bool started_ = false;

  StepInput in_;
  ActorWeights applied_;
  double eta_ = 0.0;
};

struct EpisodeResult {
  std::vector<StepRecord> log;
  Termination reason = Termination::kCompleted;
  std::string message;
  std::optional<std::size_t> failed_step;
  ControllerState final_state;
};

/// Single-joint episode of the online loop against `plant`.
EpisodeResult run_episode(const IrlSettings& settings, const CostWeights& cost,
                          const CriticWeights& critic, const ActorWeights& actor,
                          plant::Plant& plant, const traj::TrajectorySpec& reference,
                          std::size_t joint, double u0 = 0.0, NoiseWindow noise = {},
                          std::uint64_t seed = 0);

}  // namespace irltrack::irl
