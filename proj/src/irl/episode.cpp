#include "irltrack/irl/episode.hpp"

#include <vector>

#include "irltrack/core/errors.hpp"

namespace irltrack::irl {

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::kCompleted:
      return "completed";
    case Termination::kSingularBlock:
      return "singular_block";
    case Termination::kDivergence:
      return "divergence";
  }
  return "unknown";
}

EpisodeOutcome run_lockstep(plant::Plant& plant, std::span<const LockstepJoint> joints,
                            double interval, std::size_t steps) {
  for (const LockstepJoint& j : joints) {
    if (j.plant_joint >= plant.joints() || j.reference == nullptr || j.controller == nullptr) {
      throw PreconditionError("lockstep joint is not wired to the plant");
    }
  }
  EpisodeOutcome out;
  out.logs.resize(joints.size());
  for (auto& log : out.logs) log.reserve(steps);

  std::vector<double> u(plant.joints(), 0.0);
  std::size_t step = 0;
  std::size_t current = 0;
  try {
    for (; step < steps; ++step) {
      const double t = static_cast<double>(step) * interval;
      const double t_next = static_cast<double>(step + 1) * interval;
      for (current = 0; current < joints.size(); ++current) {
        const LockstepJoint& j = joints[current];
        StepInput in;
        in.step = step;
        in.t = t;
        in.theta = plant.measured(j.plant_joint);
        in.theta_d = traj::sample(*j.reference, t);
        in.theta_d_next = traj::sample(*j.reference, t_next);
        in.payload = plant.payload();
        u[j.plant_joint] = j.controller->command(in);
      }
      current = joints.size();
      plant.actuate(u, interval);
      for (current = 0; current < joints.size(); ++current) {
        const LockstepJoint& j = joints[current];
        out.logs[current].push_back(j.controller->complete(
            plant.measured(j.plant_joint), traj::sample(*j.reference, t_next)));
      }
    }
  } catch (const EpisodeAbort& e) {
    out.reason = dynamic_cast<const SingularBlockError*>(&e) != nullptr ? Termination::kSingularBlock
                                                                         : Termination::kDivergence;
    out.message = e.what();
    out.failed_step = step;
    if (current < joints.size()) out.failed_joint = current;
  }
  return out;
}

}  // namespace irltrack::irl
