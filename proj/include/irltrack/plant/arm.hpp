#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <vector>

#include "irltrack/plant/encoder.hpp"
#include "irltrack/plant/joint.hpp"
#include "irltrack/plant/plant.hpp"

namespace irltrack::plant {

struct PlantState {
  Eigen::VectorXd theta;  // rad
  Eigen::VectorXd omega;  // rad/s
  double t = 0.0;
  double payload_mass = 0.0;  // kg
};

/// Joint accelerations at `s` under actuation `u` with payload `payload`.
/// Coupled joints come in mutual pairs and are solved jointly.
Eigen::VectorXd accelerations(const PlantState& s, std::span<const double> u, double payload,
                              std::span<const JointParams> params);

/// One classical RK4 step of length dt. The payload is read from the schedule
/// at each stage time. Throws DivergenceError on a non-finite result.
PlantState step_dynamics(const PlantState& s, std::span<const double> u, double dt,
                         std::span<const JointParams> params, const PayloadSchedule& schedule);

/// Total mechanical energy sum(1/2 J w^2 + G (1 - cos(th - rest))).
double energy(const PlantState& s, std::span<const JointParams> params);

struct ArmOptions {
  double dt_inner = 1e-3;
  double sensor_hz = 50.0;
  double counts_per_turn = kCountsPerTurn;
};

/// Multi-joint arm integrated at dt_inner and observed through the encoder.
class ArmPlant final : public Plant {
 public:
  ArmPlant(std::vector<JointParams> params, PayloadSchedule schedule,
           const Eigen::VectorXd& initial_theta, ArmOptions options = {});

  std::size_t joints() const override { return params_.size(); }
  double time() const override { return state_.t; }
  double measured(std::size_t joint) const override { return encoder_.read()(joint); }
  double payload() const override { return schedule_.mass_at(state_.t); }
  void actuate(std::span<const double> u, double interval) override;

  const PlantState& state() const { return state_; }
  const ArmOptions& options() const { return options_; }

 private:
  std::vector<JointParams> params_;
  PayloadSchedule schedule_;
  ArmOptions options_;
  Encoder encoder_;
  PlantState state_;
  std::int64_t inner_steps_ = 0;
  std::int64_t steps_per_sample_;
};

}  // namespace irltrack::plant
