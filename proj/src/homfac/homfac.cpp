#include "irltrack/homfac/homfac.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "irltrack/core/errors.hpp"

namespace irltrack::homfac {

void HomfacParams::normalize_and_validate() {
  if (alpha.empty()) throw PreconditionError("HOMFAC alpha must not be empty");
  for (double a : alpha) {
    if (!std::isfinite(a) || a < 0.0) throw PreconditionError("HOMFAC alpha entries must be >= 0");
  }
  const double sum = std::accumulate(alpha.begin(), alpha.end(), 0.0);
  if (!(sum > 0.0)) throw PreconditionError("HOMFAC alpha must have a positive sum");
  for (double& a : alpha) a /= sum;
  if (!(eta > 0.0 && eta <= 2.0)) throw PreconditionError("HOMFAC eta must lie in (0, 2]");
  if (!(lambda > 0.0)) throw PreconditionError("HOMFAC lambda must be positive");
  if (!(mu > 0.0)) throw PreconditionError("HOMFAC mu must be positive");
  if (!(rho > 0.0 && rho <= 1.0)) throw PreconditionError("HOMFAC rho must lie in (0, 1]");
  if (!std::isfinite(phi0) || phi0 == 0.0) throw PreconditionError("HOMFAC phi0 must be non-zero");
  if (!(epsilon_reset >= 0.0)) throw PreconditionError("HOMFAC epsilon_reset must be >= 0");
}

HomfacState homfac_init(const HomfacParams& p, double u0, double y0) {
  HomfacState s;
  s.phi_history.assign(p.order(), p.phi0);
  s.u_prev = u0;
  s.du_prev = 0.0;
  s.y_prev = y0;
  return s;
}

HomfacStep homfac_step(const HomfacState& state, double y, double y_d_next, const HomfacParams& p) {
  if (state.phi_history.size() != p.order()) {
    throw PreconditionError("HOMFAC state was not initialised for this order");
  }
  const double dy = y - state.y_prev;
  const double du = state.du_prev;
  double phi = 0.0;
  for (std::size_t j = 0; j < p.order(); ++j) phi += p.alpha[j] * state.phi_history[j];
  phi += p.eta * du * (dy - state.phi_history.front() * du) / (p.mu + du * du);
  if (std::abs(phi) <= p.epsilon_reset || std::signbit(phi) != std::signbit(p.phi0)) phi = p.phi0;

  HomfacStep out;
  out.phi = phi;
  out.u = state.u_prev + p.rho * phi * (y_d_next - y) / (p.lambda + phi * phi);
  if (!std::isfinite(out.u) || !std::isfinite(phi)) {
    throw DivergenceError("HOMFAC produced a non-finite control");
  }
  out.state.phi_history.reserve(p.order());
  out.state.phi_history.push_back(phi);
  out.state.phi_history.insert(out.state.phi_history.end(), state.phi_history.begin(),
                               state.phi_history.end() - 1);
  out.state.u_prev = out.u;
  out.state.du_prev = out.u - state.u_prev;
  out.state.y_prev = y;
  return out;
}

HomfacJointController::HomfacJointController(const HomfacParams& params, double u_max, double u0,
                                             double angle_scale)
    : params_(params), u_max_(u_max), u0_(u0), angle_scale_(angle_scale) {
  params_.normalize_and_validate();
  if (!(u_max_ > 0.0)) throw PreconditionError("saturation bound must be positive");
  if (!(angle_scale_ > 0.0)) throw PreconditionError("angle scale must be positive");
}

double HomfacJointController::command(const irl::StepInput& in) {
  if (!started_) {
    state_ = homfac_init(params_, u0_, angle_scale_ * in.theta);
    started_ = true;
  }
  in_ = in;
  const double u_before = state_.u_prev;
  HomfacStep s;
  try {
    s = homfac_step(state_, angle_scale_ * in.theta, angle_scale_ * in.theta_d_next, params_);
  } catch (const DivergenceError& e) {
    throw DivergenceError(e.detail(), in.step);
  }
  state_ = std::move(s.state);
  // The actuator saturates; the estimator must see the increment actually applied.
  state_.u_prev = std::clamp(state_.u_prev, -u_max_, u_max_);
  state_.du_prev = state_.u_prev - u_before;
  phi_ = s.phi;
  du_ = state_.du_prev;
  return state_.u_prev;
}

irl::StepRecord HomfacJointController::complete(double, double) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  irl::StepRecord rec;
  rec.t = in_.t;
  rec.theta = in_.theta;
  rec.theta_d = in_.theta_d;
  rec.epsilon = in_.theta_d - in_.theta;
  rec.eta = du_;
  rec.u = state_.u_prev;
  rec.s_hat = nan;
  rec.s_tilde = nan;
  rec.actor = ActorWeights(phi_, nan, nan);
  rec.critic_fro = nan;
  rec.payload_kg = in_.payload;
  rec.u_tilde = nan;
  rec.critic_min_minor = nan;
  return rec;
}

}  // namespace irltrack::homfac
