#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "irltrack/irl/episode.hpp"

namespace irltrack::harness {

struct MetricOptions {
  /// Settling and post-disturbance figures are measured from this instant.
  /// Step references use the later of the step time and this instant.
  double settle_from = 0.0;
  /// Settling band as a fraction of the reference excursion (or step size).
  double band_fraction = 0.02;
  /// Lower bound on the band so a stationary reference still has one, rad.
  double min_band = 1e-3;
};

struct JointMetrics {
  std::optional<double> overshoot_pct;  // step references only
  std::optional<double> step_size;      // rad
  std::optional<double> settling_time;  // s after the reference instant; empty if unsettled
  double band = 0.0;                    // rad
  double reference_instant = 0.0;       // s
  double rms_error = 0.0;               // rad, full horizon
  double final10_rms = 0.0;             // rad, last 10% of the log
  double final20_max_abs = 0.0;         // rad, last 20% of the log
  double max_abs_post_reference = 0.0;  // rad, from the reference instant on
  double final_abs_error = 0.0;         // rad
  std::optional<std::size_t> convergence_step;
};

/// Metrics of one joint log. A reference that changes exactly once is treated
/// as a step; percent overshoot = max over post-step samples of
/// sign(step) (theta - theta_final_ref) / |step| * 100, floored at 0.
/// Throws PreconditionError on an empty log.
JointMetrics compute_metrics(std::span<const irl::StepRecord> log, const MetricOptions& opts = {},
                             std::optional<std::size_t> convergence_step = std::nullopt);

struct MetricsReport {
  std::string controller;
  std::uint64_t seed = 0;
  std::string termination = "completed";
  std::string message;
  std::vector<std::string> joint_names;
  std::vector<JointMetrics> joints;
};

}  // namespace irltrack::harness
