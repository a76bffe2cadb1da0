#pragma once

// High-order model-free adaptive control (compact-form dynamic linearisation
// with a weighted history of pseudo-partial-derivative estimates).

#include <cstdint>
#include <vector>

#include "irltrack/irl/episode.hpp"

namespace irltrack::homfac {

struct HomfacParams {
  std::vector<double> alpha{0.5, 0.25, 0.125, 0.125};  // weights over past estimates
  double eta = 0.8;      // estimator step, (0, 2]
  double lambda = 0.1;   // control penalty
  double mu = 0.01;      // estimator penalty
  double rho = 0.8;      // control step, (0, 1]
  double phi0 = 15.0;    // initial estimate; its sign is the assumed plant direction
  double epsilon_reset = 1e-5;

  std::size_t order() const { return alpha.size(); }
  /// Scales alpha to sum to one and checks every bound.
  void normalize_and_validate();
};

struct HomfacState {
  std::vector<double> phi_history;  // most recent first
  double u_prev = 0.0;
  double du_prev = 0.0;  // u(t-1) - u(t-2)
  double y_prev = 0.0;
};

HomfacState homfac_init(const HomfacParams& p, double u0, double y0);

struct HomfacStep {
  double u = 0.0;
  double phi = 0.0;
  HomfacState state;
};

/// phi(t) = sum_j alpha_j phi(t-j) + eta du (dy - phi(t-1) du) / (mu + du^2),
///   reset to phi0 if |phi| <= epsilon_reset or its sign differs from phi0;
/// u(t)   = u(t-1) + rho phi (y_d_next - y) / (lambda + phi^2).
/// Throws DivergenceError on non-finite output.
HomfacStep homfac_step(const HomfacState& state, double y, double y_d_next, const HomfacParams& p);

class HomfacJointController final : public irl::JointController {
 public:
  /// `angle_scale` converts measured radians into the units the parameters
  /// were tuned in (180/pi for degrees).
  HomfacJointController(const HomfacParams& params, double u_max, double u0 = 0.0,
                        double angle_scale = 1.0);

  double command(const irl::StepInput& in) override;
  irl::StepRecord complete(double theta_next, double theta_d_next) override;

  const HomfacState& state() const { return state_; }

 private:
  HomfacParams params_;
  double u_max_;
  double u0_;
  double angle_scale_;
  HomfacState state_;
  bool started_ = false;
  irl::StepInput in_;
  double phi_ = 0.0;
  double du_ = 0.0;
};

}  // namespace irltrack::homfac
