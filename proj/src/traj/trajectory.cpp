#include "irltrack/traj/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "irltrack/core/errors.hpp"

namespace irltrack::traj {

namespace {

constexpr double kRadPerDeg = std::numbers::pi / 180.0;

struct KindName {
  Kind kind;
  const char* name;
};

constexpr KindName kNames[] = {
    {Kind::kExpGrowDecay, "exp_grow_decay"},   {Kind::kLinearRamp, "linear_ramp"},
    {Kind::kStepHold, "step_hold"},            {Kind::kSinusoid, "sinusoid"},
    {Kind::kPiecewiseSamples, "piecewise_samples"},
};

double piecewise(const std::vector<std::pair<double, double>>& pts, double t) {
  if (t <= pts.front().first) return pts.front().second;
  if (t >= pts.back().first) return pts.back().second;
  const auto hi = std::upper_bound(pts.begin(), pts.end(), t,
                                   [](double v, const auto& p) { return v < p.first; });
  const auto lo = hi - 1;
  const double s = (t - lo->first) / (hi->first - lo->first);
  return lo->second + s * (hi->second - lo->second);
}

}  // namespace

void TrajectorySpec::validate() const {
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw PreconditionError("trajectory duration must be positive");
  }
  if (kind == Kind::kExpGrowDecay && !(time_constant > 0.0)) {
    throw PreconditionError("trajectory time_constant must be positive");
  }
  if (kind == Kind::kSinusoid && !(frequency >= 0.0)) {
    throw PreconditionError("sinusoid frequency must be non-negative");
  }
  if (kind == Kind::kPiecewiseSamples) {
    if (points.size() < 2) throw PreconditionError("piecewise trajectory needs two points");
    for (std::size_t k = 1; k < points.size(); ++k) {
      if (!(points[k].first > points[k - 1].first)) {
        throw PreconditionError("piecewise sample times must increase strictly");
      }
    }
  }
}

double sample(const TrajectorySpec& spec, double t) {
  if (!(t >= 0.0 && t <= spec.duration)) {
    throw RangeError("trajectory sampled at t = " + std::to_string(t) + " outside [0, " +
                     std::to_string(spec.duration) + "]");
  }
  double deg = spec.offset;
  switch (spec.kind) {
    case Kind::kExpGrowDecay: {
      const double tau = spec.time_constant;
      if (t <= 3.0 * tau) {
        deg += spec.amplitude * (1.0 - std::exp(-t / tau));
      } else {
        deg += spec.amplitude * (1.0 - std::exp(-3.0)) * std::exp(-(t - 3.0 * tau) / tau);
      }
      break;
    }
    case Kind::kLinearRamp:
      deg += spec.slope * t;
      break;
    case Kind::kStepHold:
      if (t >= spec.step_time) deg += spec.step_value;
      break;
    case Kind::kSinusoid:
      deg += spec.amplitude * std::sin(2.0 * std::numbers::pi * spec.frequency * t + spec.phase);
      break;
    case Kind::kPiecewiseSamples:
      deg = piecewise(spec.points, t);
      break;
  }
  return deg * kRadPerDeg;
}

bool is_step(const TrajectorySpec& spec) { return spec.kind == Kind::kStepHold; }

const char* kind_name(Kind kind) {
  for (const auto& k : kNames) {
    if (k.kind == kind) return k.name;
  }
  return "unknown";
}

Kind kind_from_name(const char* name) {
  for (const auto& k : kNames) {
    if (std::string_view(name) == k.name) return k.kind;
  }
  throw PreconditionError(std::string("unknown trajectory kind '") + name + "'");
}

}  // namespace irltrack::traj
