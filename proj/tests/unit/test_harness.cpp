#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "irltrack/core/errors.hpp"
#include "irltrack/core/ops.hpp"
#include "irltrack/harness/config.hpp"
#include "irltrack/harness/csv.hpp"
#include "irltrack/harness/experiment.hpp"
#include "irltrack/harness/metrics.hpp"

using namespace irltrack;
using namespace irltrack::harness;
namespace fs = std::filesystem;

namespace {

fs::path config_path(const std::string& stem) {
  return fs::path(IRLTRACK_SOURCE_DIR) / "configs" / (stem + ".toml");
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string replaced(std::string text, const std::string& from, const std::string& to) {
  const auto at = text.find(from);
  REQUIRE(at != std::string::npos);
  return text.replace(at, from.size(), to);
}

std::string config_error_key(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "<accepted>";
}

irl::StepRecord record(double t, double theta, double theta_d) {
  irl::StepRecord r;
  r.t = t;
  r.theta = theta;
  r.theta_d = theta_d;
  r.epsilon = theta_d - theta;
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("irltrack_test_" + name);
  fs::remove_all(p);
  return p;
}

const char* const kBundled[] = {"exp1", "exp2", "exp3", "exp4", "exp4_d40", "exp4_d60", "exp4_d100", "exp5"};

}  // namespace

TEST_SUITE("exp-harness config") {
  TEST_CASE("bundled exp1 carries the published constants") {
    const ExperimentConfig c = load_config(config_path("exp1"));
    CHECK(c.id == 1);
    CHECK(c.rates.control_interval == 0.125);
    CHECK(c.rates.steps == 960);
    CHECK(c.learning.alpha_a == 0.01);
    CHECK(c.learning.alpha_c == 0.05);
    REQUIRE(c.joints.size() == 4);
    CHECK(c.joints[0].critic[0][0] == 0.80350);
    CHECK(c.joints[3].critic[3][3] == 1.2790);
    CHECK(c.joints[1].r == 0.00876);
    CHECK(c.joints[3].r == 0.019686);
    CHECK(c.joints[2].q[0][2] == 0.63923);
    CHECK(c.homfac.alpha == std::vector<double>{0.5, 0.25, 0.125, 0.125});
    CHECK(c.joints[2].homfac_phi0 == 25.0);
    const double init[] = {0.0, 90.0, 180.0, -135.0};
    for (int k = 0; k < 4; ++k) {
      CHECK(c.joints[k].initial_angle_deg == init[k]);
      CHECK(c.joints[k].initial_angle() == doctest::Approx(init[k] * std::numbers::pi / 180.0));
    }
    CHECK(c.actor_init.noise_std == 0.1);
    CHECK(c.joints[2].actor_noise);
    CHECK_FALSE(c.joints[3].actor_noise);
  }

  TEST_CASE("every bundled config loads and round-trips") {
    for (const char* stem : kBundled) {
      CAPTURE(stem);
      const ExperimentConfig a = load_config(config_path(stem));
      const ExperimentConfig b = parse_config(serialize_config(a));
      CHECK(a == b);
      CHECK(serialize_config(b) == serialize_config(a));
    }
  }

  TEST_CASE("experiment 5 controls a single joint, the others four") {
    for (const char* stem : kBundled) {
      const ExperimentConfig c = load_config(config_path(stem));
      CHECK(c.joints.size() == (c.id == 5 ? 1u : 4u));
    }
    const ExperimentConfig e5 = load_config(config_path("exp5"));
    CHECK(e5.joints[0].initial_angle_deg == -45.0);
  }

  TEST_CASE("disturbance rows") {
    const std::pair<const char*, std::pair<double, double>> rows[] = {
        {"exp4", {0.2, 0.025}}, {"exp4_d40", {0.4, 0.025}}, {"exp4_d60", {0.6, 0.020}}, {"exp4_d100", {1.0, 0.0125}}};
    for (const auto& [stem, row] : rows) {
      const ExperimentConfig c = load_config(config_path(stem));
      REQUIRE(c.disturbance.has_value());
      CHECK(c.disturbance->window_fraction == row.first);
      CHECK(c.disturbance->variance == row.second);
      CHECK(c.disturbance->sigma() == doctest::Approx(std::sqrt(row.second)));
    }
  }

  TEST_CASE("critic rate outside (0, 1) is rejected") {
    const std::string text = read_text(config_path("exp1"));
    CHECK(config_error_key(replaced(text, "alpha_c = 0.05", "alpha_c = 1.5")) == "learning.alpha_c");
  }

  TEST_CASE("non-PD Q is rejected naming the matrix") {
    const std::string text = read_text(config_path("exp1"));
    const std::string bad = replaced(text, "[0.51503, 0.25789, 0.06581]", "[-0.51503, 0.25789, 0.06581]");
    CHECK(config_error_key(bad) == "joints[1].q");
  }

  TEST_CASE("unknown keys are rejected by path") {
    const std::string text = read_text(config_path("exp1"));
    CHECK(config_error_key(replaced(text, "alpha_a = 0.01", "alpha_a = 0.01\nalpha_x = 2")) ==
          "learning.alpha_x");
    CHECK(config_error_key(replaced(text, "seed = 1", "seed = 1\nextra = true")) == "extra");
    CHECK(config_error_key(replaced(text, "time_constant = 10.0", "time_constant = 10.0\nslope_deg_per_s = 1.0")) ==
          "joints[1].trajectory.slope_deg_per_s");
  }

  TEST_CASE("wrong joint count for the experiment id is rejected") {
    const std::string text = read_text(config_path("exp1"));
    CHECK(config_error_key(replaced(text, "id = 1", "id = 5")) != "<accepted>");
  }

  TEST_CASE("payload units: 3 lb is 1.36078 kg") {
    const ExperimentConfig c = load_config(config_path("exp2"));
    const double kg = c.payload.schedule().mass_at(0.0);
    CHECK(kg == 3.0 * plant::kKgPerLb);
    CHECK(std::abs(kg - 1.36078) < 5e-6);
  }
}

TEST_SUITE("exp-harness metrics") {
  TEST_CASE("perfect tracking: no overshoot, settled at once") {
    std::vector<irl::StepRecord> log;
    for (int k = 0; k < 100; ++k) {
      const double ref = k < 40 ? 0.0 : 0.5;
      log.push_back(record(0.125 * k, ref, ref));
    }
    const JointMetrics m = compute_metrics(log);
    REQUIRE(m.overshoot_pct.has_value());
    CHECK(*m.overshoot_pct == 0.0);
    REQUIRE(m.settling_time.has_value());
    CHECK(*m.settling_time == 0.0);
    CHECK(m.rms_error == 0.0);
  }

  TEST_CASE("a peak at 1.28 step sizes is 28% overshoot") {
    std::vector<irl::StepRecord> log;
    for (int k = 0; k < 100; ++k) {
      const double ref = k < 20 ? 1.0 : 1.5;
      double theta = ref;
      if (k == 25) theta = 1.0 + 1.28 * 0.5;
      log.push_back(record(0.125 * k, theta, ref));
    }
    const JointMetrics m = compute_metrics(log);
    CHECK(*m.overshoot_pct == doctest::Approx(28.0).epsilon(1e-12));
    CHECK(*m.step_size == 0.5);
    CHECK(*m.settling_time == doctest::Approx(0.125 * 6));

    // A negative step mirrors the measure.
    for (auto& r : log) {
      r.theta = -r.theta;
      r.theta_d = -r.theta_d;
      r.epsilon = -r.epsilon;
    }
    CHECK(*compute_metrics(log).overshoot_pct == doctest::Approx(28.0).epsilon(1e-12));
  }

  TEST_CASE("constant error never settles") {
    std::vector<irl::StepRecord> log;
    for (int k = 0; k < 50; ++k) log.push_back(record(0.125 * k, 0.0, 0.2));
    const JointMetrics m = compute_metrics(log);
    CHECK_FALSE(m.settling_time.has_value());
    CHECK_FALSE(m.overshoot_pct.has_value());
    CHECK(m.rms_error == doctest::Approx(0.2));
  }

  TEST_CASE("settling is measured from the later of step and window end") {
    std::vector<irl::StepRecord> log;
    for (int k = 0; k < 100; ++k) {
      const double ref = k < 20 ? 0.0 : 1.0;
      log.push_back(record(0.125 * k, k < 60 ? 0.0 : ref, ref));
    }
    const JointMetrics early = compute_metrics(log, {.settle_from = 1.0});
    CHECK(early.reference_instant == 2.5);
    CHECK(*early.settling_time == doctest::Approx(7.5 - 2.5));
    const JointMetrics late = compute_metrics(log, {.settle_from = 5.0});
    CHECK(late.reference_instant == 5.0);
    CHECK(*late.settling_time == doctest::Approx(2.5));
  }

  TEST_CASE("empty log is a precondition error") {
    CHECK_THROWS_AS(compute_metrics({}), PreconditionError);
  }
}

TEST_SUITE("exp-harness runs") {
  TEST_CASE("experiment 3 payload changes exactly once, at half the duration") {
    const ExperimentConfig c = load_config(config_path("exp3"));
    const ExperimentResult r = run_experiment(c);
    REQUIRE(r.completed());
    for (const auto& log : r.outcome.logs) {
      int changes = 0;
      for (std::size_t k = 1; k < log.size(); ++k) {
        if (log[k].payload_kg != log[k - 1].payload_kg) {
          ++changes;
          CHECK(log[k].t == c.duration / 2);
        }
      }
      CHECK(changes == 1);
    }
  }

  TEST_CASE("experiment 2 payload is 3 lb throughout") {
    const ExperimentResult r = run_experiment(load_config(config_path("exp2")));
    REQUIRE(r.completed());
    for (const auto& log : r.outcome.logs) {
      for (const auto& rec : log) CHECK(rec.payload_kg == 3.0 * plant::kKgPerLb);
    }
  }

  TEST_CASE("experiment 5 payload is non-decreasing") {
    const ExperimentResult r = run_experiment(load_config(config_path("exp5")));
    REQUIRE(r.completed());
    const auto& log = r.outcome.logs.at(0);
    for (std::size_t k = 1; k < log.size(); ++k) CHECK(log[k].payload_kg >= log[k - 1].payload_kg);
    CHECK(log.back().payload_kg == doctest::Approx(2.5 * plant::kKgPerLb));
  }

  TEST_CASE("experiment 4 actor noise only inside the window") {
    const ExperimentConfig c = load_config(config_path("exp4"));
    const ExperimentResult r = run_experiment(c);
    REQUIRE(r.completed());
    const double until = c.disturbance->window_fraction * c.duration;
    // Outside the window the applied gains are the nominal ones, which move by
    // at most one actor step; inside, fresh draws make them jump.
    const auto& log = r.outcome.logs.at(0);
    double inside = 0.0, outside = 0.0;
    for (std::size_t k = 1; k < log.size(); ++k) {
      const double jump = (log[k].actor.w - log[k - 1].actor.w).cwiseAbs().maxCoeff();
      if (log[k].t < until && log[k - 1].t < until) inside = std::max(inside, jump);
      if (log[k - 1].t >= until) outside = std::max(outside, jump);
    }
    CHECK(inside > 0.05);
    CHECK(outside < 1e-4);

    // The same seed without a disturbance starts from the same nominal gains,
    // so a differing first applied gain can only come from the noise.
    ExperimentConfig quiet = c;
    quiet.disturbance.reset();
    CHECK(initial_actors(quiet) == initial_actors(c));
    const ExperimentResult q = run_experiment(quiet);
    CHECK_FALSE(q.outcome.logs.at(0).front().actor == log.front().actor);
  }

  TEST_CASE("initial actors: greedy gains plus noise on flagged joints") {
    const ExperimentConfig c = load_config(config_path("exp1"));
    const std::vector<ActorWeights> a = initial_actors(c);
    REQUIRE(a.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) {
      const ActorWeights g = greedy_gains(c.joints[k].critic_weights(c.learning.inversion_guard));
      if (c.joints[k].actor_noise) {
        CHECK_FALSE(a[k] == g);
        CHECK((a[k].w - g.w).cwiseAbs().maxCoeff() < 0.6);
      } else {
        CHECK(a[k] == g);
      }
    }
    CHECK(initial_actors(c) == a);
  }

  TEST_CASE("same config and seed give byte-identical CSVs") {
    const ExperimentConfig c = load_config(config_path("exp4"));
    const fs::path d1 = scratch("det1"), d2 = scratch("det2");
    write_outputs(run_experiment(c), d1);
    write_outputs(run_experiment(c), d2);
    for (const char* f : {"joint1.csv", "joint2.csv", "joint3.csv", "joint4.csv", "metrics.csv"}) {
      CAPTURE(f);
      CHECK(read_text(d1 / f) == read_text(d2 / f));
    }
    const ExperimentResult other = run_experiment(c, {.seed = 99});
    const fs::path d3 = scratch("det3");
    write_outputs(other, d3);
    CHECK(read_text(d1 / "joint1.csv") != read_text(d3 / "joint1.csv"));
  }

  TEST_CASE("CSV logs read back to the same records and metrics") {
    const ExperimentResult r = run_experiment(load_config(config_path("exp1")));
    const fs::path d = scratch("csv");
    write_outputs(r, d);
    CHECK(read_text(d / "joint1.csv").rfind("t,theta,theta_d,epsilon,eta,u,S_hat,S_tilde,w0,w_nu,w_2nu,critic_fro,payload_kg\n", 0) == 0);
    const std::vector<irl::StepRecord> back = read_joint_csv(d / "joint3.csv");
    const auto& orig = r.outcome.logs.at(2);
    REQUIRE(back.size() == orig.size());
    for (std::size_t k = 0; k < back.size(); ++k) {
      CHECK(back[k].theta == orig[k].theta);
      CHECK(back[k].s_hat == orig[k].s_hat);
      CHECK(back[k].actor == orig[k].actor);
    }
    const MetricsReport m = metrics_from_logs(d);
    CHECK(format_metrics_csv(m) == format_metrics_csv(r.report));
    // Without the summary file only the figures survive.
    fs::remove(d / "metrics.csv");
    const MetricsReport bare = metrics_from_logs(d);
    CHECK(bare.joint_names.at(0) == "joint1");
    CHECK(bare.termination == "unknown");
    REQUIRE(bare.joints.size() == r.report.joints.size());
    for (std::size_t k = 0; k < m.joints.size(); ++k) {
      const JointMetrics &a = bare.joints[k], &b = r.report.joints[k];
      CHECK(a.overshoot_pct == b.overshoot_pct);
      CHECK(a.settling_time == b.settling_time);
      CHECK(a.rms_error == b.rms_error);
      CHECK(a.final20_max_abs == b.final20_max_abs);
    }
  }

  TEST_CASE("HOMFAC logs leave the critic columns empty") {
    const ExperimentResult r = run_experiment(load_config(config_path("exp1")),
                                              {.controller = ControllerKind::kHomfac});
    REQUIRE(r.completed());
    const auto& log = r.outcome.logs.at(0);
    CHECK(log.size() == 600);
    CHECK(std::isnan(log[10].s_hat));
    CHECK(std::isnan(log[10].actor.w(1)));
    CHECK(log[10].actor.w(0) > 0.0);
    CHECK(r.report.controller == "homfac");
  }
}
