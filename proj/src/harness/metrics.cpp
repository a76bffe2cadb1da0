#include "irltrack/harness/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "irltrack/core/errors.hpp"

namespace irltrack::harness {

namespace {

double rms(std::span<const irl::StepRecord> log) {
  if (log.empty()) return 0.0;
  double s = 0.0;
  for (const auto& r : log) s += r.epsilon * r.epsilon;
  return std::sqrt(s / static_cast<double>(log.size()));
}

std::span<const irl::StepRecord> tail(std::span<const irl::StepRecord> log, double fraction) {
  const auto n = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(log.size())));
  return log.last(std::clamp<std::size_t>(n, 1, log.size()));
}

}  // namespace

JointMetrics compute_metrics(std::span<const irl::StepRecord> log, const MetricOptions& opts,
                             std::optional<std::size_t> convergence_step) {
  if (log.empty()) throw PreconditionError("metrics need a non-empty log");
  JointMetrics m;
  m.convergence_step = convergence_step;
  m.rms_error = rms(log);
  m.final10_rms = rms(tail(log, 0.1));
  for (const auto& r : tail(log, 0.2)) m.final20_max_abs = std::max(m.final20_max_abs, std::abs(r.epsilon));
  m.final_abs_error = std::abs(log.back().epsilon);

  // A reference with exactly one change is a step.
  std::size_t jumps = 0;
  std::size_t jump_at = 0;
  for (std::size_t k = 1; k < log.size(); ++k) {
    if (log[k].theta_d != log[k - 1].theta_d) {
      ++jumps;
      jump_at = k;
    }
  }
  double excursion = 0.0;
  for (const auto& r : log) excursion = std::max(excursion, std::abs(r.theta_d - log.front().theta_d));

  m.reference_instant = opts.settle_from;
  if (jumps == 1) {
    const double step = log[jump_at].theta_d - log[jump_at - 1].theta_d;
    const double target = log[jump_at].theta_d;
    const double dir = step > 0.0 ? 1.0 : -1.0;
    double peak = 0.0;
    for (std::size_t k = jump_at; k < log.size(); ++k) {
      peak = std::max(peak, dir * (log[k].theta - target) / std::abs(step) * 100.0);
    }
    m.step_size = step;
    m.overshoot_pct = peak;
    m.reference_instant = std::max(log[jump_at].t, opts.settle_from);
    excursion = std::abs(step);
  }
  m.band = std::max(opts.band_fraction * excursion, opts.min_band);

  // Settling: first instant at or after the reference after which |e| stays in band.
  std::optional<double> settled_at;
  for (std::size_t k = log.size(); k-- > 0;) {
    if (log[k].t < m.reference_instant) break;
    if (std::abs(log[k].epsilon) > m.band) break;
    settled_at = log[k].t;
  }
  if (settled_at) m.settling_time = *settled_at - m.reference_instant;

  for (const auto& r : log) {
    if (r.t >= m.reference_instant) {
      m.max_abs_post_reference = std::max(m.max_abs_post_reference, std::abs(r.epsilon));
    }
  }
  return m;
}

}  // namespace irltrack::harness
