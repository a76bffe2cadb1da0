#include "irltrack/irl/controller.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "irltrack/core/errors.hpp"
#include "irltrack/core/ops.hpp"

namespace irltrack::irl {

ActorWeights disturb_actor(const ActorWeights& a, double sigma, std::mt19937_64& rng) {
  if (sigma < 0.0) throw PreconditionError("disturbance sigma must be non-negative");
  if (sigma == 0.0) return a;
  std::normal_distribution<double> noise(0.0, sigma);
  ActorWeights out = a;
  for (int k = 0; k < 3; ++k) out.w(k) += noise(rng);
  return out;
}

UpdateResult update_step(const ControllerState& state, const AugmentedState& now,
                         const AugmentedState& next, const CostWeights& cw,
                         const IrlSettings& settings) {
  UpdateResult r;
  r.s_hat = value(state.critic, now);
  r.s_tilde = critic_target(cw, now, next, state.critic, settings.interval);
  r.state = state;
  r.state.critic = critic_update(state.critic, now, r.s_hat, r.s_tilde, settings.rates.alpha_c,
                                 settings.mode);
  r.u_tilde = actor_target(r.state.critic, now.x);
  const double eta_nominal = correction(state.actor, now.x);
  r.state.actor = actor_update(state.actor, now.x, eta_nominal, r.u_tilde,
                               settings.rates.alpha_a, settings.mode);
  ++r.state.step;
  return r;
}

IrlJointController::IrlJointController(const IrlSettings& settings, const CostWeights& cost,
                                       const CriticWeights& critic, const ActorWeights& actor,
                                       double u0, NoiseWindow noise, std::uint64_t seed)
    : settings_(settings), cost_(cost), noise_(noise), rng_(seed) {
  if (!(settings_.u_max > 0.0)) throw PreconditionError("saturation bound must be positive");
  if (!actor.finite() || !std::isfinite(u0)) throw PreconditionError("initial actor must be finite");
  state_.u = std::clamp(u0, -settings_.u_max, settings_.u_max);
  state_.critic = critic;
  state_.actor = actor;
  history_.push_back(critic);
}

double IrlJointController::command(const StepInput& in) {
  if (!started_) {
    state_.x = ErrorWindow::backfilled(in.theta_d - in.theta);
    started_ = true;
  }
  in_ = in;
  applied_ = noise_.active(in.t) ? disturb_actor(state_.actor, noise_.sigma, rng_) : state_.actor;
  eta_ = correction(applied_, state_.x);
  if (!std::isfinite(eta_)) throw DivergenceError("correction became non-finite", in.step);
  state_.u = std::clamp(state_.u + eta_, -settings_.u_max, settings_.u_max);
  return settings_.actuation_sign * state_.u;
}

StepRecord IrlJointController::complete(double theta_next, double theta_d_next) {
  const AugmentedState now{state_.x, eta_};
  const ErrorWindow x_next = state_.x.shifted(theta_d_next - theta_next);
  const AugmentedState next{x_next, correction(state_.actor, x_next)};

  double s_hat = 0.0;
  double s_tilde = 0.0;
  double u_tilde = 0.0;
  if (state_.converged_at) {
    s_hat = value(state_.critic, now);
    s_tilde = critic_target(cost_, now, next, state_.critic, settings_.interval);
    u_tilde = actor_target(state_.critic, now.x);
    ++state_.step;
  } else {
    const std::size_t step = state_.step;
    UpdateResult r;
    try {
      r = update_step(state_, now, next, cost_, settings_);
    } catch (const SingularBlockError& e) {
      throw SingularBlockError(e.detail(), step);
    } catch (const DivergenceError& e) {
      throw DivergenceError(e.detail(), step);
    }
    state_.critic = r.state.critic;
    state_.actor = r.state.actor;
    state_.step = r.state.step;
    s_hat = r.s_hat;
    s_tilde = r.s_tilde;
    u_tilde = r.u_tilde;

    history_.push_back(state_.critic);
    if (history_.size() > settings_.convergence_window + 1) history_.pop_front();
    if (settings_.convergence_gate) {
      const std::vector<CriticWeights> window(history_.begin(), history_.end());
      if (converged(window, settings_.convergence_sigma, settings_.convergence_window)) {
        state_.converged_at = step;
      }
    }
  }
  state_.x = x_next;

  StepRecord rec;
  rec.t = in_.t;
  rec.theta = in_.theta;
  rec.theta_d = in_.theta_d;
  rec.epsilon = now.x.e0;
  rec.eta = eta_;
  rec.u = state_.u;
  rec.s_hat = s_hat;
  rec.s_tilde = s_tilde;
  rec.actor = applied_;
  rec.critic_fro = state_.critic.frobenius();
  rec.payload_kg = in_.payload;
  rec.u_tilde = u_tilde;
  rec.critic_min_minor = state_.critic.smallest_leading_minor();
  return rec;
}

EpisodeResult run_episode(const IrlSettings& settings, const CostWeights& cost,
                          const CriticWeights& critic, const ActorWeights& actor,
                          plant::Plant& plant, const traj::TrajectorySpec& reference,
                          std::size_t joint, double u0, NoiseWindow noise, std::uint64_t seed) {
  if (settings.steps < 1) throw PreconditionError("episode needs at least one step");
  IrlJointController ctrl(settings, cost, critic, actor, u0, noise, seed);
  const LockstepJoint j{joint, &reference, &ctrl};
  EpisodeOutcome out = run_lockstep(plant, std::span(&j, 1), settings.interval, settings.steps);
  EpisodeResult r;
  r.log = std::move(out.logs.front());
  r.reason = out.reason;
  r.message = std::move(out.message);
  r.failed_step = out.failed_step;
  r.final_state = ctrl.state();
  return r;
}

}  // namespace irltrack::irl
