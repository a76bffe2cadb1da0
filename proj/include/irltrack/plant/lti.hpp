#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <functional>
#include <span>

#include "irltrack/core/types.hpp"
#include "irltrack/plant/plant.hpp"

namespace irltrack::plant {

/// theta[k+1] = a theta[k] + b u[k], measured exactly. One joint.
class ScalarLtiPlant final : public Plant {
 public:
  ScalarLtiPlant(double a, double b, double theta0 = 0.0) : a_(a), b_(b), theta_(theta0) {}

  std::size_t joints() const override { return 1; }
  double time() const override { return t_; }
  double measured(std::size_t) const override { return theta_; }
  double payload() const override { return 0.0; }
  void actuate(std::span<const double> u, double interval) override;

 private:
  double a_;
  double b_;
  double theta_;
  double t_ = 0.0;
  std::size_t steps_ = 0;
};

/// How the oracle improves the policy each sweep.
enum class OracleImprovement {
  /// eta' = -H_ee^-1 H_ex X' on the current kernel: the fixed point the online
  /// tuning laws converge to.
  kKernelGreedy,
  /// eta' minimises the full lookahead nu/2 U + S. Monotone from S = 0.
  kExactMinimizer,
};

struct OracleResult {
  Eigen::Matrix4d kernel;
  ActorWeights gains;
  std::size_t iterations = 0;
};

/// Exact value iteration on the error system of the scalar LTI plant under a
/// constant reference:
///   e[k+1] = (1 + a) e[k] - a e[k-1] - b eta[k]
/// with V = [X; eta] and the trapezoidal utility. Iterates the 4x4 kernel
/// map until the max-abs change is below `tol`; throws OracleError otherwise.
/// `on_iterate` sees every kernel in the sequence, starting with the first.
OracleResult scalar_lti_oracle(double a, double b, const Eigen::Matrix3d& q, double r,
                               double interval,
                               OracleImprovement mode = OracleImprovement::kKernelGreedy,
                               double tol = 1e-10, std::size_t max_iterations = 1000000,
                               const std::function<void(const Eigen::Matrix4d&)>& on_iterate = {});

}  // namespace irltrack::plant
