#pragma once

// Controller-agnostic lockstep episode: every listed joint is driven by its
// own controller at a shared control interval against one plant.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "irltrack/core/types.hpp"
#include "irltrack/plant/plant.hpp"
#include "irltrack/traj/trajectory.hpp"

namespace irltrack::irl {

/// One control step of one joint. Fields a controller does not produce
/// (critic values for a baseline, say) are NaN.
struct StepRecord {
  double t = 0.0;
  double theta = 0.0;    // measured, rad
  double theta_d = 0.0;  // reference, rad
  double epsilon = 0.0;  // theta_d - theta
  double eta = 0.0;      // applied correction
  double u = 0.0;        // accumulated control after this step's correction
  double s_hat = 0.0;
  double s_tilde = 0.0;
  ActorWeights actor;    // gains applied this step
  double critic_fro = 0.0;
  double payload_kg = 0.0;
  double u_tilde = 0.0;
  double critic_min_minor = 0.0;
};

/// What a joint controller is told at the start of step l.
struct StepInput {
  std::size_t step = 0;
  double t = 0.0;
  double theta = 0.0;
  double theta_d = 0.0;
  double theta_d_next = 0.0;
  double payload = 0.0;
};

class JointController {
 public:
  virtual ~JointController() = default;
  /// Actuation to hold over [t, t + interval].
  virtual double command(const StepInput& in) = 0;
  /// Called with the measurement at t + interval; returns the record for step l.
  virtual StepRecord complete(double theta_next, double theta_d_next) = 0;
};

enum class Termination { kCompleted, kSingularBlock, kDivergence };

const char* termination_name(Termination t);

struct LockstepJoint {
  std::size_t plant_joint = 0;
  const traj::TrajectorySpec* reference = nullptr;
  JointController* controller = nullptr;
};

struct EpisodeOutcome {
  std::vector<std::vector<StepRecord>> logs;  // one per LockstepJoint
  Termination reason = Termination::kCompleted;
  std::string message;
  std::optional<std::size_t> failed_step;
  std::optional<std::size_t> failed_joint;  // index into the joint list
};

/// Runs `steps` control intervals. Plant joints without a controller get zero
/// actuation. An EpisodeAbort from any controller or the plant stops the run
/// and is reported with the partial logs.
EpisodeOutcome run_lockstep(plant::Plant& plant, std::span<const LockstepJoint> joints,
                            double interval, std::size_t steps);

}  // namespace irltrack::irl
