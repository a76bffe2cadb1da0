#include "irltrack/harness/csv.hpp"

#include <fmt/format.h>

#include <charconv>
#include <limits>
#include <fstream>
#include <sstream>

#include "irltrack/core/errors.hpp"

namespace irltrack::harness {

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

template <typename T>
std::string opt(const std::optional<T>& v) {
  return v ? fmt::format("{}", *v) : std::string("NA");
}

double parse_double(std::string_view field, const std::string& where) {
  // std::from_chars rejects "nan" spelled by fmt on some libstdc++ versions.
  if (field == "nan" || field == "-nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw Error("malformed number '" + std::string(field) + "' in " + where);
  }
  return v;
}

}  // namespace

std::string format_joint_csv(std::span<const irl::StepRecord> log) {
  fmt::memory_buffer buf;
  fmt::format_to(std::back_inserter(buf), "{}\n", kJointCsvHeader);
  for (const auto& r : log) {
    fmt::format_to(std::back_inserter(buf), "{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.t, r.theta,
                   r.theta_d, r.epsilon, r.eta, r.u, r.s_hat, r.s_tilde, r.actor.w(0), r.actor.w(1),
                   r.actor.w(2), r.critic_fro, r.payload_kg);
  }
  return fmt::to_string(buf);
}

void write_joint_csv(const std::filesystem::path& path, std::span<const irl::StepRecord> log) {
  write_file(path, format_joint_csv(log));
}

std::vector<irl::StepRecord> read_joint_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kJointCsvHeader) {
    throw Error(path.string() + " does not carry the joint CSV header");
  }
  std::vector<irl::StepRecord> log;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    double v[13];
    std::size_t n = 0;
    std::size_t start = 0;
    const std::string where = path.string() + ":" + std::to_string(row);
    while (n < 13) {
      const std::size_t comma = line.find(',', start);
      const std::string_view field(line.data() + start,
                                   (comma == std::string::npos ? line.size() : comma) - start);
      v[n++] = parse_double(field, where);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (n != 13) throw Error("expected 13 columns at " + where);
    irl::StepRecord r;
    r.t = v[0];
    r.theta = v[1];
    r.theta_d = v[2];
    r.epsilon = v[3];
    r.eta = v[4];
    r.u = v[5];
    r.s_hat = v[6];
    r.s_tilde = v[7];
    r.actor = ActorWeights(v[8], v[9], v[10]);
    r.critic_fro = v[11];
    r.payload_kg = v[12];
    log.push_back(r);
  }
  return log;
}

std::string format_metrics_csv(const MetricsReport& report) {
  fmt::memory_buffer buf;
  fmt::format_to(std::back_inserter(buf), "{}\n", kMetricsCsvHeader);
  for (std::size_t k = 0; k < report.joints.size(); ++k) {
    const JointMetrics& m = report.joints[k];
    const std::string name = k < report.joint_names.size() ? report.joint_names[k] : "";
    fmt::format_to(std::back_inserter(buf), "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", k + 1,
                   name, report.controller, report.seed, report.termination, opt(m.overshoot_pct),
                   opt(m.step_size), opt(m.settling_time), m.band, m.rms_error, m.final10_rms,
                   m.final20_max_abs, m.max_abs_post_reference, m.final_abs_error,
                   opt(m.convergence_step));
  }
  return fmt::to_string(buf);
}

void write_metrics_csv(const std::filesystem::path& path, const MetricsReport& report) {
  write_file(path, format_metrics_csv(report));
}

}  // namespace irltrack::harness
