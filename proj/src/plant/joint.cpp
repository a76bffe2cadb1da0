#include "irltrack/plant/joint.hpp"

#include <cmath>

#include "irltrack/core/errors.hpp"

namespace irltrack::plant {

void JointParams::validate() const {
  const double all[] = {inertia_base,  link_mass,    link_length,   viscous_friction,
                        gravity_gain,  actuator_gain, coupling_gain, rest_angle};
  for (double v : all) {
    if (!std::isfinite(v)) throw PreconditionError("joint parameters must be finite");
  }
  if (!(inertia_base > 0.0)) throw PreconditionError("inertia_base must be positive");
  if (!(actuator_gain > 0.0)) throw PreconditionError("actuator_gain must be positive");
  if (!(coupling_gain >= 0.0 && coupling_gain <= 0.5)) {
    throw PreconditionError("coupling_gain must lie in [0, 0.5]");
  }
  if (link_mass < 0.0 || link_length < 0.0 || viscous_friction < 0.0 || gravity_gain < 0.0) {
    throw PreconditionError("link mass, length, friction and gravity gain must be non-negative");
  }
}

double PayloadSchedule::mass_at(double t) const {
  switch (kind) {
    case PayloadKind::kNone:
      return 0.0;
    case PayloadKind::kConstant:
      return mass;
    case PayloadKind::kStep:
      return t >= step_time ? mass : 0.0;
    case PayloadKind::kRamp:
      if (t <= ramp_start) return 0.0;
      if (t >= ramp_end) return mass;
      return mass * (t - ramp_start) / (ramp_end - ramp_start);
  }
  return 0.0;
}

void PayloadSchedule::validate() const {
  if (!std::isfinite(mass) || mass < 0.0) throw PreconditionError("payload mass must be >= 0");
  if (kind == PayloadKind::kRamp && !(ramp_start < ramp_end)) {
    throw PreconditionError("payload ramp needs ramp_start < ramp_end");
  }
  if (kind == PayloadKind::kStep && !std::isfinite(step_time)) {
    throw PreconditionError("payload step time must be finite");
  }
}

}  // namespace irltrack::plant
