#include "irltrack/plant/encoder.hpp"

#include <cmath>
#include <numbers>

#include "irltrack/core/errors.hpp"

namespace irltrack::plant {

double quantize(double theta, double counts_per_turn) {
  const double step = 2.0 * std::numbers::pi / counts_per_turn;
  return std::floor(theta / step) * step;
}

Encoder::Encoder(double rate_hz, double counts_per_turn) : rate_hz_(rate_hz), counts_(counts_per_turn) {
  if (!(rate_hz_ > 0.0)) throw PreconditionError("sensor rate must be positive");
  if (!(counts_ > 0.0)) throw PreconditionError("encoder counts per turn must be positive");
}

void Encoder::sample(const Eigen::VectorXd& theta) {
  held_ = theta.unaryExpr([this](double th) { return quantize(th, counts_); });
}

}  // namespace irltrack::plant
