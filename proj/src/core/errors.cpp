#include "irltrack/core/errors.hpp"

namespace irltrack {

namespace {

std::string with_step(const std::string& what, std::optional<std::size_t> step) {
  if (!step) return what;
  return what + " (step " + std::to_string(*step) + ")";
}

}  // namespace

EpisodeAbort::EpisodeAbort(const std::string& what, std::optional<std::size_t> step)
    : Error(with_step(what, step)), detail_(what), step_(step) {}

ConfigError::ConfigError(const std::string& key, const std::string& what)
    : Error(key + ": " + what), key_(key) {}

}  // namespace irltrack
