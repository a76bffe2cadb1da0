// irltrack: run experiments, recompute metrics from logs, sweep configs.

#include <fmt/format.h>
#include <fnmatch.h>

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "irltrack/core/errors.hpp"
#include "irltrack/harness/csv.hpp"
#include "irltrack/harness/experiment.hpp"

namespace fs = std::filesystem;
using namespace irltrack;

namespace {

void print_summary(const harness::MetricsReport& rep) {
  fmt::print("controller={} seed={} termination={}\n", rep.controller, rep.seed, rep.termination);
  if (!rep.message.empty()) fmt::print("  reason: {}\n", rep.message);
  for (std::size_t k = 0; k < rep.joints.size(); ++k) {
    const auto& m = rep.joints[k];
    fmt::print("  joint{} {:<10} rms={:.3e} rad  final20_max={:.4f} deg  overshoot={}  settling={}\n",
               k + 1, rep.joint_names[k], m.rms_error, m.final20_max_abs * 180.0 / 3.14159265358979,
               m.overshoot_pct ? fmt::format("{:.2f}%", *m.overshoot_pct) : "n/a",
               m.settling_time ? fmt::format("{:.3f}s", *m.settling_time) : "unsettled");
  }
}

int run_one(const fs::path& config, std::optional<std::string> controller,
            std::optional<std::uint64_t> seed, const fs::path& out) {
  const harness::ExperimentConfig cfg = harness::load_config(config);
  harness::RunOverrides ov;
  if (controller) ov.controller = harness::controller_from_name(*controller);
  ov.seed = seed;
  const harness::ExperimentResult res = harness::run_experiment(cfg, ov);
  harness::write_outputs(res, out);
  fmt::print("{} -> {}\n", config.string(), out.string());
  print_summary(res.report);
  if (!res.completed()) {
    std::cerr << "aborted: " << res.outcome.message << "\n";
    return 2;
  }
  return 0;
}

std::vector<fs::path> expand(const std::string& pattern) {
  const fs::path p(pattern);
  const fs::path dir = p.has_parent_path() ? p.parent_path() : fs::path(".");
  const std::string name = p.filename().string();
  std::vector<fs::path> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && fnmatch(name.c_str(), e.path().filename().c_str(), 0) == 0) {
      out.push_back(e.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IRL actor-critic trajectory tracking experiments"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run one experiment config");
  std::string config;
  std::string controller;
  std::uint64_t seed = 0;
  std::string out = "out";
  run->add_option("--config", config, "Experiment TOML file")->required()->check(CLI::ExistingFile);
  auto* ctrl_opt = run->add_option("--controller", controller, "Override controller")
                       ->check(CLI::IsMember({"irl", "homfac"}));
  auto* seed_opt = run->add_option("--seed", seed, "Override seed");
  run->add_option("--out", out, "Output directory");

  auto* metrics = app.add_subcommand("metrics", "Recompute metrics from joint CSV logs");
  std::string log_dir;
  metrics->add_option("--log", log_dir, "Log directory")->required()->check(CLI::ExistingDirectory);
  harness::MetricOptions metric_opts;
  metrics->add_option("--settle-from", metric_opts.settle_from,
                      "Measure settling from this time, s (the disturbance window end)");

  auto* sweep = app.add_subcommand("sweep", "Run every config matching a glob");
  std::string pattern;
  std::string sweep_out = "out";
  sweep->add_option("--configs", pattern, "Glob such as configs/exp*.toml")->required();
  sweep->add_option("--out", sweep_out, "Parent output directory (one subdirectory per config)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      return run_one(config, *ctrl_opt ? std::optional(controller) : std::nullopt,
                     *seed_opt ? std::optional(seed) : std::nullopt, out);
    }
    if (*metrics) {
      std::cout << harness::format_metrics_csv(harness::metrics_from_logs(log_dir, metric_opts));
      return 0;
    }
    if (*sweep) {
      const auto files = expand(pattern);
      if (files.empty()) {
        std::cerr << "no configs match " << pattern << "\n";
        return 1;
      }
      int status = 0;
      for (const auto& f : files) {
        status = std::max(status, run_one(f, std::nullopt, std::nullopt, fs::path(sweep_out) / f.stem()));
      }
      return status;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
