#include "irltrack/core/types.hpp"

#include <Eigen/LU>
#include <cmath>
#include <limits>

#include "irltrack/core/errors.hpp"

namespace irltrack {

bool ErrorWindow::finite() const {
  return std::isfinite(e0) && std::isfinite(e1) && std::isfinite(e2);
}

CriticWeights::CriticWeights(const Eigen::Matrix4d& m, double inversion_guard)
    : m_(m), guard_(inversion_guard) {
  if (!m_.allFinite()) throw DivergenceError("critic matrix has non-finite entries");
  if (!(inversion_guard > 0.0)) throw PreconditionError("inversion guard must be positive");
  const double asym = (m_ - m_.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTolerance) {
    throw PreconditionError("critic matrix is not symmetric (max |m - m'| = " +
                            std::to_string(asym) + ")");
  }
  if (!(m_(3, 3) > guard_)) {
    throw SingularBlockError("critic eta-eta block " + std::to_string(m_(3, 3)) +
                             " is not above the inversion guard");
  }
}

double CriticWeights::smallest_leading_minor() const {
  double smallest = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 4; ++k) {
    smallest = std::min(smallest, m_.topLeftCorner(k, k).determinant());
  }
  return smallest;
}

bool leading_minors_positive(const Eigen::MatrixXd& m) {
  for (Eigen::Index k = 1; k <= m.rows(); ++k) {
    if (!(m.topLeftCorner(k, k).determinant() > 0.0)) return false;
  }
  return true;
}

CostWeights::CostWeights(const Eigen::Matrix3d& q, double r) : q_(q), r_(r) {
  if (!q_.allFinite() || !std::isfinite(r_)) throw PreconditionError("cost weights must be finite");
  if ((q_ - q_.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance) {
    throw PreconditionError("Q is not symmetric");
  }
  if (!leading_minors_positive(q_)) throw PreconditionError("Q is not positive definite");
  if (!(r_ > 0.0)) throw PreconditionError("R must be positive");
}

LearningRates::LearningRates(double critic, double actor) : alpha_c(critic), alpha_a(actor) {
  if (!(alpha_c > 0.0 && alpha_c < 1.0)) throw PreconditionError("alpha_c must lie in (0, 1)");
  if (!(alpha_a > 0.0 && alpha_a < 1.0)) throw PreconditionError("alpha_a must lie in (0, 1)");
}

}  // namespace irltrack
