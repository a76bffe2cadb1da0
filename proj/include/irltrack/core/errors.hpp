#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace irltrack {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation was violated by the caller.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside an operation's domain (e.g. sampling a trajectory past its end).
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Base for failures that abort a running episode. Carries the control step
/// at which the failure surfaced once the loop has attached it.
class EpisodeAbort : public Error {
 public:
  explicit EpisodeAbort(const std::string& what, std::optional<std::size_t> step = std::nullopt);

  std::optional<std::size_t> step() const { return step_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  std::optional<std::size_t> step_;
};

/// A weight update or plant state produced a non-finite number.
class DivergenceError : public EpisodeAbort {
 public:
  using EpisodeAbort::EpisodeAbort;
};

/// The critic's eta-eta block fell to or below the inversion guard.
class SingularBlockError : public EpisodeAbort {
 public:
  using EpisodeAbort::EpisodeAbort;
};

/// Configuration file violated the schema. `key` names the offending entry.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& key, const std::string& what);
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// The exact value-iteration oracle failed to reach its tolerance.
class OracleError : public Error {
 public:
  using Error::Error;
};

}  // namespace irltrack
