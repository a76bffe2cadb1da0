#include "irltrack/harness/experiment.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "irltrack/core/errors.hpp"
#include "irltrack/core/ops.hpp"
#include "irltrack/harness/csv.hpp"
#include "irltrack/homfac/homfac.hpp"
#include "irltrack/irl/controller.hpp"
#include "irltrack/plant/arm.hpp"

namespace irltrack::harness {

namespace {

// Independent, reproducible stream per (seed, purpose).
std::mt19937_64 stream(std::uint64_t seed, std::uint32_t purpose) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    purpose};
  return std::mt19937_64(seq);
}

constexpr std::uint32_t kActorInitStream = 0;

JointMetrics empty_metrics() {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  JointMetrics m;
  m.rms_error = m.final10_rms = m.final20_max_abs = m.max_abs_post_reference = nan;
  m.final_abs_error = nan;
  return m;
}

}  // namespace

std::vector<ActorWeights> initial_actors(const ExperimentConfig& cfg) {
  std::vector<ActorWeights> out;
  std::mt19937_64 rng = stream(cfg.seed, kActorInitStream);
  for (const JointConfig& j : cfg.joints) {
    if (cfg.actor_init.rule == ActorInit::kExplicit) {
      out.emplace_back(j.gains[0], j.gains[1], j.gains[2]);
      continue;
    }
    ActorWeights a = greedy_gains(j.critic_weights(cfg.learning.inversion_guard));
    if (j.actor_noise && cfg.actor_init.noise_std > 0.0) {
      std::normal_distribution<double> noise(0.0, cfg.actor_init.noise_std);
      for (int k = 0; k < 3; ++k) a.w(k) += noise(rng);
    }
    out.push_back(a);
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& base, const RunOverrides& overrides) {
  ExperimentResult res;
  res.config = base;
  ExperimentConfig& cfg = res.config;
  if (overrides.controller) cfg.controller = *overrides.controller;
  if (overrides.seed) cfg.seed = *overrides.seed;
  cfg.validate();

  std::vector<plant::JointParams> params;
  Eigen::VectorXd theta0(static_cast<Eigen::Index>(cfg.joints.size()));
  for (std::size_t k = 0; k < cfg.joints.size(); ++k) {
    params.push_back(cfg.joints[k].plant_params());
    theta0(static_cast<Eigen::Index>(k)) = cfg.joints[k].initial_angle();
  }
  plant::ArmOptions opts;
  opts.dt_inner = cfg.rates.dt_inner;
  opts.sensor_hz = cfg.rates.sensor_hz;
  opts.counts_per_turn = cfg.rates.counts_per_turn;
  plant::ArmPlant arm(params, cfg.payload.schedule(), theta0, opts);

  irl::NoiseWindow noise;
  if (cfg.disturbance) {
    noise.sigma = cfg.disturbance->sigma();
    noise.until = cfg.disturbance->window_fraction * cfg.duration;
  }

  res.initial_actors = initial_actors(cfg);
  std::vector<std::unique_ptr<irl::JointController>> controllers;
  std::vector<const irl::IrlJointController*> irl_controllers;
  double interval = cfg.rates.control_interval;
  std::size_t steps = cfg.rates.steps;
  if (cfg.controller == ControllerKind::kHomfac) {
    interval = cfg.rates.homfac_interval;
    steps = static_cast<std::size_t>(std::floor(cfg.duration / interval + 1e-9));
  }

  for (std::size_t k = 0; k < cfg.joints.size(); ++k) {
    const JointConfig& j = cfg.joints[k];
    if (cfg.controller == ControllerKind::kIrl) {
      irl::IrlSettings s;
      s.interval = cfg.rates.control_interval;
      s.steps = cfg.rates.steps;
      s.rates = LearningRates(cfg.learning.alpha_c, cfg.learning.alpha_a);
      s.mode = cfg.learning.residual;
      s.convergence_gate = cfg.learning.convergence_gate;
      s.convergence_sigma = cfg.learning.convergence_sigma;
      s.convergence_window = cfg.learning.convergence_window;
      s.u_max = j.u_max;
      s.actuation_sign = cfg.actuation_sign;
      std::mt19937_64 seeder = stream(cfg.seed, static_cast<std::uint32_t>(k + 1));
      auto c = std::make_unique<irl::IrlJointController>(
          s, j.cost_weights(), j.critic_weights(cfg.learning.inversion_guard),
          res.initial_actors[k], 0.0, noise, seeder());
      irl_controllers.push_back(c.get());
      controllers.push_back(std::move(c));
    } else {
      homfac::HomfacParams p;
      p.alpha = cfg.homfac.alpha;
      p.eta = cfg.homfac.eta;
      p.lambda = cfg.homfac.lambda;
      p.mu = cfg.homfac.mu;
      p.rho = cfg.homfac.rho;
      p.phi0 = j.homfac_phi0;
      p.epsilon_reset = cfg.homfac.epsilon_reset;
      const double scale = cfg.homfac.angles_in_degrees ? 180.0 / std::numbers::pi : 1.0;
      controllers.push_back(
          std::make_unique<homfac::HomfacJointController>(p, j.u_max, 0.0, scale));
    }
  }

  std::vector<irl::LockstepJoint> wiring;
  for (std::size_t k = 0; k < cfg.joints.size(); ++k) {
    wiring.push_back({k, &cfg.joints[k].trajectory, controllers[k].get()});
  }
  res.outcome = irl::run_lockstep(arm, wiring, interval, steps);

  MetricsReport& rep = res.report;
  rep.controller = controller_name(cfg.controller);
  rep.seed = cfg.seed;
  rep.termination = irl::termination_name(res.outcome.reason);
  rep.message = res.outcome.message;
  MetricOptions mo;
  if (cfg.disturbance) mo.settle_from = cfg.disturbance->window_fraction * cfg.duration;
  for (std::size_t k = 0; k < cfg.joints.size(); ++k) {
    rep.joint_names.push_back(cfg.joints[k].name);
    const auto& log = res.outcome.logs[k];
    std::optional<std::size_t> conv;
    if (!irl_controllers.empty()) conv = irl_controllers[k]->state().converged_at;
    rep.joints.push_back(log.empty() ? empty_metrics() : compute_metrics(log, mo, conv));
  }
  return res;
}

void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (std::size_t k = 0; k < result.outcome.logs.size(); ++k) {
    write_joint_csv(dir / ("joint" + std::to_string(k + 1) + ".csv"), result.outcome.logs[k]);
  }
  write_metrics_csv(dir / "metrics.csv", result.report);
}

MetricsReport metrics_from_logs(const std::filesystem::path& dir, const MetricOptions& opts) {
  MetricsReport rep;
  for (std::size_t k = 1;; ++k) {
    const auto path = dir / ("joint" + std::to_string(k) + ".csv");
    if (!std::filesystem::exists(path)) break;
    const auto log = read_joint_csv(path);
    if (rep.controller.empty() && !log.empty()) {
      rep.controller = std::isnan(log.front().s_hat) ? "homfac" : "irl";
    }
    rep.joint_names.push_back("joint" + std::to_string(k));
    rep.joints.push_back(log.empty() ? empty_metrics() : compute_metrics(log, opts));
  }
  if (rep.joints.empty()) throw Error("no joint<k>.csv files in " + dir.string());
  rep.termination = "unknown";

  // Labels that the joint logs do not carry come from an existing summary.
  std::ifstream in(dir / "metrics.csv");
  std::string line;
  if (in && std::getline(in, line)) {
    while (std::getline(in, line)) {
      std::vector<std::string> f;
      std::stringstream ss(line);
      for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
      if (f.size() < 5) continue;
      std::size_t k = 0;
      if (std::from_chars(f[0].data(), f[0].data() + f[0].size(), k).ec != std::errc() || k < 1 || k > rep.joints.size()) continue;
      rep.joint_names[k - 1] = f[1];
      rep.controller = f[2];
      std::from_chars(f[3].data(), f[3].data() + f[3].size(), rep.seed);
      rep.termination = f[4];
    }
  }
  return rep;
}

}  // namespace irltrack::harness
