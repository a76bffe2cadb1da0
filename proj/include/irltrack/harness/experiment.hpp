#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "irltrack/harness/config.hpp"
#include "irltrack/harness/metrics.hpp"
#include "irltrack/irl/episode.hpp"

namespace irltrack::harness {

struct RunOverrides {
  std::optional<ControllerKind> controller;
  std::optional<std::uint64_t> seed;
};

struct ExperimentResult {
  ExperimentConfig config;  // after overrides
  irl::EpisodeOutcome outcome;
  std::vector<ActorWeights> initial_actors;
  MetricsReport report;

  bool completed() const { return outcome.reason == irl::Termination::kCompleted; }
};

/// Initial actor gains per joint: the explicit gains, or the greedy gains of
/// the joint's critic plus N(0, noise_std^2) on joints flagged actor_noise.
std::vector<ActorWeights> initial_actors(const ExperimentConfig& cfg);

/// Runs every joint in lockstep against one coupled plant. Deterministic in
/// (config, seed). Controller aborts are reported, not thrown.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOverrides& overrides = {});

/// Writes joint<k>.csv and metrics.csv under `dir`.
void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir);

/// Metrics recomputed from the joint CSVs in a log directory. Joint names,
/// seed and termination are taken from metrics.csv when it exists.
MetricsReport metrics_from_logs(const std::filesystem::path& dir, const MetricOptions& opts = {});

}  // namespace irltrack::harness
