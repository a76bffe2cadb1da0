#include "irltrack/plant/arm.hpp"

#include <cmath>
#include <string>

#include "irltrack/core/errors.hpp"

namespace irltrack::plant {

Eigen::VectorXd accelerations(const PlantState& s, std::span<const double> u, double payload,
                              std::span<const JointParams> params) {
  const auto n = static_cast<Eigen::Index>(params.size());
  Eigen::VectorXd free(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const JointParams& p = params[i];
    const double torque = p.actuator_gain * u[i] - p.viscous_friction * s.omega(i) -
                          p.gravity(payload) * std::sin(s.theta(i) - p.rest_angle);
    free(i) = torque / p.inertia(payload);
  }
  // th''_i = free_i + c_i th''_j with j the neighbour of i and i the neighbour of j.
  Eigen::VectorXd acc = free;
  for (Eigen::Index i = 0; i < n; ++i) {
    const int j = params[i].neighbor;
    if (j < 0) continue;
    const double ci = params[i].coupling_gain;
    const double cj = params[j].coupling_gain;
    acc(i) = (free(i) + ci * free(j)) / (1.0 - ci * cj);
  }
  return acc;
}

PlantState step_dynamics(const PlantState& s, std::span<const double> u, double dt,
                         std::span<const JointParams> params, const PayloadSchedule& schedule) {
  const double h = dt;
  const auto deriv = [&](const PlantState& at, double t) {
    return accelerations(at, u, schedule.mass_at(t), params);
  };
  const auto offset = [&](const Eigen::VectorXd& dth, const Eigen::VectorXd& dw, double k) {
    PlantState o;
    o.theta = s.theta + k * dth;
    o.omega = s.omega + k * dw;
    return o;
  };

  const Eigen::VectorXd k1t = s.omega;
  const Eigen::VectorXd k1w = deriv(s, s.t);
  const PlantState s2 = offset(k1t, k1w, h / 2);
  const Eigen::VectorXd k2t = s2.omega;
  const Eigen::VectorXd k2w = deriv(s2, s.t + h / 2);
  const PlantState s3 = offset(k2t, k2w, h / 2);
  const Eigen::VectorXd k3t = s3.omega;
  const Eigen::VectorXd k3w = deriv(s3, s.t + h / 2);
  const PlantState s4 = offset(k3t, k3w, h);
  const Eigen::VectorXd k4t = s4.omega;
  const Eigen::VectorXd k4w = deriv(s4, s.t + h);

  PlantState out;
  out.theta = s.theta + (h / 6) * (k1t + 2 * k2t + 2 * k3t + k4t);
  out.omega = s.omega + (h / 6) * (k1w + 2 * k2w + 2 * k3w + k4w);
  out.t = s.t + h;
  out.payload_mass = schedule.mass_at(out.t);
  if (!out.theta.allFinite() || !out.omega.allFinite()) {
    throw DivergenceError("plant state became non-finite at t = " + std::to_string(out.t));
  }
  return out;
}

double energy(const PlantState& s, std::span<const JointParams> params) {
  double e = 0.0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    const JointParams& p = params[i];
    e += 0.5 * p.inertia(s.payload_mass) * s.omega(k) * s.omega(k) +
         p.gravity(s.payload_mass) * (1.0 - std::cos(s.theta(k) - p.rest_angle));
  }
  return e;
}

ArmPlant::ArmPlant(std::vector<JointParams> params, PayloadSchedule schedule,
                   const Eigen::VectorXd& initial_theta, ArmOptions options)
    : params_(std::move(params)),
      schedule_(schedule),
      options_(options),
      encoder_(options.sensor_hz, options.counts_per_turn) {
  if (params_.empty()) throw PreconditionError("arm needs at least one joint");
  if (static_cast<std::size_t>(initial_theta.size()) != params_.size()) {
    throw PreconditionError("initial angle count does not match joint count");
  }
  for (std::size_t i = 0; i < params_.size(); ++i) {
    params_[i].validate();
    const int j = params_[i].neighbor;
    if (j < 0) continue;
    if (j >= static_cast<int>(params_.size()) || j == static_cast<int>(i) ||
        params_[j].neighbor != static_cast<int>(i)) {
      throw PreconditionError("joint coupling must pair two distinct joints mutually");
    }
  }
  schedule_.validate();
  if (!(options_.dt_inner > 0.0)) throw PreconditionError("dt_inner must be positive");
  steps_per_sample_ = std::llround(1.0 / (options_.sensor_hz * options_.dt_inner));
  if (steps_per_sample_ < 1) throw PreconditionError("sensor faster than the integrator");

  state_.theta = initial_theta;
  state_.omega = Eigen::VectorXd::Zero(initial_theta.size());
  state_.t = 0.0;
  state_.payload_mass = schedule_.mass_at(0.0);
  encoder_.sample(state_.theta);
}

void ArmPlant::actuate(std::span<const double> u, double interval) {
  if (u.size() != params_.size()) throw PreconditionError("actuation size does not match joints");
  if (options_.dt_inner > interval / 10.0 * (1.0 + 1e-12)) {
    throw PreconditionError("dt_inner must be at most a tenth of the control interval");
  }
  const std::int64_t n = std::llround(interval / options_.dt_inner);
  for (std::int64_t k = 0; k < n; ++k) {
    state_ = step_dynamics(state_, u, options_.dt_inner, params_, schedule_);
    ++inner_steps_;
    // Integer step count keeps time free of accumulated rounding.
    state_.t = static_cast<double>(inner_steps_) * options_.dt_inner;
    state_.payload_mass = schedule_.mass_at(state_.t);
    if (inner_steps_ % steps_per_sample_ == 0) encoder_.sample(state_.theta);
  }
}

}  // namespace irltrack::plant
