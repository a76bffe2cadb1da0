#include "irltrack/core/ops.hpp"

#include <cmath>

#include "irltrack/core/errors.hpp"
#include "irltrack/kernels/quad4.hpp"

namespace irltrack {

namespace {

double residual_factor(double residual, ResidualMode mode) {
  return mode == ResidualMode::kSigned ? residual : 0.5 * residual * residual;
}

}  // namespace

double correction(const ActorWeights& a, const ErrorWindow& x) {
  return a.w(0) * x.e0 + a.w(1) * x.e1 + a.w(2) * x.e2;
}

double value(const CriticWeights& c, const AugmentedState& v) {
  const Eigen::Vector4d flat = v.flat();
  return 0.5 * kernels::active().quad_form(c.m().data(), flat.data());
}

double utility(const CostWeights& cw, const ErrorWindow& x, double eta) {
  const Eigen::Vector3d xv = x.vec();
  return 0.5 * (xv.dot(cw.q() * xv) + cw.r() * eta * eta);
}

double integral_utility(const CostWeights& cw, std::span<const AugmentedState> samples,
                        double interval) {
  if (samples.size() < 2) throw PreconditionError("integral_utility needs at least two samples");
  const double h = interval / static_cast<double>(samples.size() - 1);
  double inner = 0.0;
  for (std::size_t k = 1; k + 1 < samples.size(); ++k) {
    inner += utility(cw, samples[k].x, samples[k].eta);
  }
  const double ends = utility(cw, samples.front().x, samples.front().eta) +
                      utility(cw, samples.back().x, samples.back().eta);
  return h * (0.5 * ends + inner);
}

double critic_target(const CostWeights& cw, const AugmentedState& now, const AugmentedState& next,
                     const CriticWeights& c, double interval) {
  const AugmentedState pair[2] = {now, next};
  return integral_utility(cw, pair, interval) + value(c, next);
}

CriticWeights critic_update(const CriticWeights& c, const AugmentedState& v, double s_hat,
                            double s_tilde, double alpha_c, ResidualMode mode) {
  const double f = residual_factor(s_hat - s_tilde, mode);
  Eigen::Matrix4d m = c.m();
  const Eigen::Vector4d flat = v.flat();
  kernels::active().sym_rank1_update(m.data(), flat.data(), -alpha_c * f);
  if (!m.allFinite()) throw DivergenceError("critic update produced non-finite weights");
  return CriticWeights(m, c.inversion_guard());
}

ActorWeights greedy_gains(const CriticWeights& c) {
  const double h = c.etaeta();
  if (!(std::abs(h) > c.inversion_guard())) {
    throw SingularBlockError("critic eta-eta block below inversion guard");
  }
  return ActorWeights(-c.etax() / h);
}

double actor_target(const CriticWeights& c, const ErrorWindow& x) {
  return correction(greedy_gains(c), x);
}

ActorWeights actor_update(const ActorWeights& a, const ErrorWindow& x, double eta_hat,
                          double u_tilde, double alpha_a, ResidualMode mode) {
  const double f = residual_factor(eta_hat - u_tilde, mode);
  ActorWeights out(a.w - alpha_a * f * x.vec().transpose());
  if (!out.finite()) throw DivergenceError("actor update produced non-finite weights");
  return out;
}

bool converged(std::span<const CriticWeights> history, double sigma, std::size_t window) {
  if (history.size() < window + 1) return false;
  const std::size_t first = history.size() - window - 1;
  for (std::size_t k = first; k + 1 < history.size(); ++k) {
    if (!((history[k + 1].m() - history[k].m()).norm() <= sigma)) return false;
  }
  return true;
}

}  // namespace irltrack
