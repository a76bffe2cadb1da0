#pragma once

#include <Eigen/Core>

namespace irltrack::plant {

inline constexpr double kCountsPerTurn = 3686400.0;

/// Angle rounded down to the encoder grid of 2*pi / counts_per_turn.
double quantize(double theta, double counts_per_turn = kCountsPerTurn);

/// Sampled, quantized position sensor with zero-order hold.
class Encoder {
 public:
  Encoder(double rate_hz, double counts_per_turn = kCountsPerTurn);

  double rate() const { return rate_hz_; }
  double counts_per_turn() const { return counts_; }

  /// Latches a new quantized reading of `theta`.
  void sample(const Eigen::VectorXd& theta);
  /// Last latched reading; unchanged between samples.
  const Eigen::VectorXd& read() const { return held_; }

 private:
  double rate_hz_;
  double counts_;
  Eigen::VectorXd held_;
};

}  // namespace irltrack::plant
