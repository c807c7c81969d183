#pragma once

#include <stdexcept>
#include <string>

namespace ncrec {

// Operation preconditions that the caller violated (e.g. running an
// ergodic-only report on a non-ergodic system).
class PreconditionViolated : public std::logic_error {
 public:
  explicit PreconditionViolated(const std::string& what) : std::logic_error(what) {}
};

// No entry of the averaging schedule reaches the requested tolerance.
class NetExhausted : public std::runtime_error {
 public:
  explicit NetExhausted(const std::string& what) : std::runtime_error(what) {}
};

// The dynamics cannot be represented on the GNS space (lift residual or
// contraction bound violated).
class InconsistentDynamics : public std::runtime_error {
 public:
  explicit InconsistentDynamics(const std::string& what) : std::runtime_error(what) {}
};

// Bad experiment configuration (unknown scenario, malformed file, ...).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ncrec
