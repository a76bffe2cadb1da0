#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "irltrack/harness/metrics.hpp"
#include "irltrack/irl/episode.hpp"

namespace irltrack::harness {

/// Column order of joint<k>.csv.
inline constexpr const char* kJointCsvHeader =
    "t,theta,theta_d,epsilon,eta,u,S_hat,S_tilde,w0,w_nu,w_2nu,critic_fro,payload_kg";

inline constexpr const char* kMetricsCsvHeader =
    "joint,name,controller,seed,termination,overshoot_pct,step_size_rad,settling_time_s,band_rad,"
    "rms_error_rad,final10_rms_rad,final20_max_abs_rad,max_abs_post_reference_rad,"
    "final_abs_error_rad,convergence_step";

/// Doubles are written in shortest round-trip form, so files are byte-stable.
std::string format_joint_csv(std::span<const irl::StepRecord> log);
void write_joint_csv(const std::filesystem::path& path, std::span<const irl::StepRecord> log);
/// Reads a joint CSV back. Fields beyond the file schema are left at defaults.
std::vector<irl::StepRecord> read_joint_csv(const std::filesystem::path& path);

std::string format_metrics_csv(const MetricsReport& report);
void write_metrics_csv(const std::filesystem::path& path, const MetricsReport& report);

}  // namespace irltrack::harness
