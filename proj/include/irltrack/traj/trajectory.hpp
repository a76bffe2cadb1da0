#pragma once

#include <utility>
#include <vector>

namespace irltrack::traj {

enum class Kind { kExpGrowDecay, kLinearRamp, kStepHold, kSinusoid, kPiecewiseSamples };

/// Joint-space reference. Angles are degrees here; sample() returns radians.
struct TrajectorySpec {
  Kind kind = Kind::kStepHold;
  double amplitude = 0.0;      // deg
  double time_constant = 1.0;  // s, exp_grow_decay
  double slope = 0.0;          // deg/s, linear_ramp
  double step_time = 0.0;      // s, step_hold
  double step_value = 0.0;     // deg, step_hold
  double frequency = 0.0;      // Hz, sinusoid
  double phase = 0.0;          // rad, sinusoid
  double offset = 0.0;         // deg
  double duration = 1.0;       // s
  std::vector<std::pair<double, double>> points;  // (s, deg), piecewise_samples

  /// Throws PreconditionError on violated invariants.
  void validate() const;
  friend bool operator==(const TrajectorySpec&, const TrajectorySpec&) = default;
};

/// Reference angle at t in radians. Throws RangeError outside [0, duration].
///   exp_grow_decay  offset + A (1 - e^{-t/tau}) up to 3 tau, then decays from there
///   linear_ramp     offset + slope t
///   step_hold       offset, then offset + step_value from step_time on
///   sinusoid        offset + A sin(2 pi f t + phase)
///   piecewise       linear interpolation, held flat beyond the end points
double sample(const TrajectorySpec& spec, double t);

/// True for the kinds with a single jump (step metrics apply).
bool is_step(const TrajectorySpec& spec);

const char* kind_name(Kind kind);
/// Inverse of kind_name; throws PreconditionError for unknown names.
Kind kind_from_name(const char* name);

}  // namespace irltrack::traj
