#pragma once

#include <cstddef>
#include <span>

namespace irltrack::plant {

/// What a controller sees of a plant: per-joint actuation in, held
/// measurements out, advanced one control interval at a time.
class Plant {
 public:
  virtual ~Plant() = default;

  virtual std::size_t joints() const = 0;
  virtual double time() const = 0;
  virtual double measured(std::size_t joint) const = 0;
  /// Payload mass currently carried, kg.
  virtual double payload() const = 0;
  /// Holds `u` constant for `interval` seconds.
  virtual void actuate(std::span<const double> u, double interval) = 0;
};

}  // namespace irltrack::plant
