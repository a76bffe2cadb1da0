#pragma once

#include <Eigen/Core>

namespace irltrack {

inline constexpr double kDefaultInversionGuard = 1e-8;
inline constexpr double kSymmetryTolerance = 1e-9;

/// Tracking errors X(t) = [e(t), e(t-nu), e(t-2nu)], radians.
struct ErrorWindow {
  double e0 = 0.0;
  double e1 = 0.0;
  double e2 = 0.0;

  /// Window with all three taps equal to `e` (pre-episode backfill).
  static ErrorWindow backfilled(double e) { return {e, e, e}; }

  /// Newest sample enters at e0; e2 falls off.
  ErrorWindow shifted(double e_new) const { return {e_new, e0, e1}; }

  Eigen::Vector3d vec() const { return {e0, e1, e2}; }
  bool finite() const;

  friend bool operator==(const ErrorWindow&, const ErrorWindow&) = default;
};

/// V = [X; eta].
struct AugmentedState {
  ErrorWindow x;
  double eta = 0.0;

  Eigen::Vector4d flat() const { return {x.e0, x.e1, x.e2, eta}; }
};

/// Symmetric 4x4 critic kernel with [xx, x-eta; eta-x, eta-eta] blocks.
///
/// Construction enforces symmetry, finiteness and the eta-eta inversion guard.
/// Positive-definiteness is reported, not enforced.
class CriticWeights {
 public:
  explicit CriticWeights(const Eigen::Matrix4d& m, double inversion_guard = kDefaultInversionGuard);

  static CriticWeights identity() { return CriticWeights(Eigen::Matrix4d::Identity()); }

  const Eigen::Matrix4d& m() const { return m_; }
  Eigen::Matrix3d xx() const { return m_.topLeftCorner<3, 3>(); }
  Eigen::Vector3d xeta() const { return m_.topRightCorner<3, 1>(); }
  Eigen::RowVector3d etax() const { return m_.bottomLeftCorner<1, 3>(); }
  double etaeta() const { return m_(3, 3); }
  double inversion_guard() const { return guard_; }

  double frobenius() const { return m_.norm(); }
  /// Smallest of the four leading principal minors; > 0 iff positive definite.
  double smallest_leading_minor() const;
  bool positive_definite() const { return smallest_leading_minor() > 0.0; }

  friend bool operator==(const CriticWeights& a, const CriticWeights& b) { return a.m_ == b.m_; }

 private:
  Eigen::Matrix4d m_;
  double guard_;
};

/// Actor gains [w0, w_nu, w_2nu].
struct ActorWeights {
  Eigen::RowVector3d w = Eigen::RowVector3d::Zero();

  ActorWeights() = default;
  explicit ActorWeights(const Eigen::RowVector3d& gains) : w(gains) {}
  ActorWeights(double w0, double w_nu, double w_2nu) : w(w0, w_nu, w_2nu) {}

  bool finite() const { return w.allFinite(); }
  friend bool operator==(const ActorWeights& a, const ActorWeights& b) { return a.w == b.w; }
};

/// Utility weights: Q symmetric positive definite, R > 0.
class CostWeights {
 public:
  CostWeights(const Eigen::Matrix3d& q, double r);

  static CostWeights identity() { return CostWeights(Eigen::Matrix3d::Identity(), 1.0); }

  const Eigen::Matrix3d& q() const { return q_; }
  double r() const { return r_; }

 private:
  Eigen::Matrix3d q_;
  double r_;
};

struct LearningRates {
  double alpha_c;
  double alpha_a;

  LearningRates(double critic, double actor);
};

/// Scalar factor used by the tuning laws. kSigned is the chain-rule gradient of
/// the squared-error objectives; kLiteral multiplies by the squared error itself.
enum class ResidualMode { kSigned, kLiteral };

/// Leading principal minors of a symmetric matrix, all > 0.
bool leading_minors_positive(const Eigen::MatrixXd& m);

}  // namespace irltrack
