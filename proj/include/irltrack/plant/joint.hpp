#pragma once

namespace irltrack::plant {

inline constexpr double kGravity = 9.81;
inline constexpr double kKgPerLb = 0.45359237;

/// One revolute joint modelled as a damped, gravity-loaded pendulum:
///   J(m) th'' = K u - b th' - G(m) sin(th - rest) + c th''_neighbor
///   J(m) = inertia_base + m l^2,  G(m) = gravity_gain + m g l
struct JointParams {
  double inertia_base = 0.05;      // kg m^2
  double link_mass = 1.0;          // kg, folded into gravity_gain
  double link_length = 0.3;        // m, lever arm of the payload
  double viscous_friction = 1.0;   // N m s / rad
  double gravity_gain = 5.0;       // N m, link-only restoring amplitude
  double actuator_gain = 0.2;      // N m per actuation unit
  double coupling_gain = 0.0;      // in [0, 0.5]
  double rest_angle = 0.0;         // rad, angle where the restoring term vanishes
  int neighbor = -1;               // 0-based index of the coupled joint, -1 for none

  double inertia(double payload) const { return inertia_base + payload * link_length * link_length; }
  double gravity(double payload) const { return gravity_gain + payload * kGravity * link_length; }

  /// Throws PreconditionError on violated invariants.
  void validate() const;
};

enum class PayloadKind { kNone, kConstant, kStep, kRamp };

/// Payload carried at the end effector as a function of time.
struct PayloadSchedule {
  PayloadKind kind = PayloadKind::kNone;
  double mass = 0.0;        // kg
  double step_time = 0.0;   // s
  double ramp_start = 0.0;  // s
  double ramp_end = 0.0;    // s

  static PayloadSchedule none() { return {}; }
  static PayloadSchedule constant(double kg) { return {PayloadKind::kConstant, kg, 0, 0, 0}; }
  static PayloadSchedule step(double kg, double at) { return {PayloadKind::kStep, kg, at, 0, 0}; }
  static PayloadSchedule ramp(double kg, double from, double to) {
    return {PayloadKind::kRamp, kg, 0, from, to};
  }

  /// Mass at time t. Steps are right-continuous; ramps are linear between
  /// ramp_start and ramp_end and flat outside.
  double mass_at(double t) const;
  void validate() const;
};

}  // namespace irltrack::plant
