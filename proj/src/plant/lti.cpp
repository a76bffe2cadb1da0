#include "irltrack/plant/lti.hpp"

#include <cmath>

#include "irltrack/core/errors.hpp"

namespace irltrack::plant {

void ScalarLtiPlant::actuate(std::span<const double> u, double interval) {
  if (u.size() != 1) throw PreconditionError("scalar plant takes one actuation");
  theta_ = a_ * theta_ + b_ * u[0];
  ++steps_;
  t_ = static_cast<double>(steps_) * interval;
}

namespace {

Eigen::RowVector3d kernel_gains(const Eigen::Matrix4d& h) {
  if (!(std::abs(h(3, 3)) > kDefaultInversionGuard)) {
    throw OracleError("oracle kernel lost its eta-eta block");
  }
  return -h.bottomLeftCorner<1, 3>() / h(3, 3);
}

}  // namespace

OracleResult scalar_lti_oracle(double a, double b, const Eigen::Matrix3d& q, double r,
                               double interval, OracleImprovement mode, double tol,
                               std::size_t max_iterations,
                               const std::function<void(const Eigen::Matrix4d&)>& on_iterate) {
  if (!std::isfinite(a) || !(std::abs(a) < 1e6)) throw PreconditionError("oracle needs bounded a");
  if (!std::isfinite(b) || b == 0.0) throw PreconditionError("oracle needs b != 0");

  // V -> X' (3x4) for the window shift driven by the plant.
  Eigen::Matrix<double, 3, 4> f = Eigen::Matrix<double, 3, 4>::Zero();
  f(0, 0) = 1.0 + a;
  f(0, 1) = -a;
  f(0, 3) = -b;
  f(1, 0) = 1.0;
  f(2, 1) = 1.0;

  Eigen::Matrix4d w = Eigen::Matrix4d::Zero();
  w.topLeftCorner<3, 3>() = q;
  w(3, 3) = r;
  const Eigen::Matrix4d half_w = 0.5 * interval * w;

  const auto transition = [&](const Eigen::RowVector3d& g) {
    Eigen::Matrix<double, 4, 3> lift;
    lift.topRows<3>().setIdentity();
    lift.row(3) = g;
    return Eigen::Matrix4d(lift * f);
  };

  Eigen::Matrix4d h = mode == OracleImprovement::kKernelGreedy ? half_w : Eigen::Matrix4d::Zero();
  if (on_iterate) on_iterate(h);
  for (std::size_t it = 1; it <= max_iterations; ++it) {
    Eigen::Matrix4d next;
    if (mode == OracleImprovement::kKernelGreedy) {
      const Eigen::Matrix4d t = transition(kernel_gains(h));
      next = half_w + t.transpose() * half_w * t + t.transpose() * h * t;
    } else {
      const Eigen::Matrix4d lookahead = h + half_w;
      const Eigen::Matrix4d t = transition(kernel_gains(lookahead));
      next = half_w + t.transpose() * lookahead * t;
    }
    next = 0.5 * (next + next.transpose()).eval();
    if (!next.allFinite()) throw OracleError("oracle kernel diverged");
    const double change = (next - h).cwiseAbs().maxCoeff();
    h = next;
    if (on_iterate) on_iterate(h);
    if (change < tol) {
      const Eigen::Matrix4d policy_kernel =
          mode == OracleImprovement::kKernelGreedy ? h : Eigen::Matrix4d(h + half_w);
      return {h, ActorWeights(kernel_gains(policy_kernel)), it};
    }
  }
  throw OracleError("oracle did not converge within the iteration budget");
}

}  // namespace irltrack::plant
