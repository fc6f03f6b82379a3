#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mabsim {

// Agents are numbered 1..n+m with honest agents first; arms are numbered 1..K.
// Containers indexed by agent or arm reserve slot 0 so that ids index directly.
using AgentId = std::int32_t;
using Arm = std::int32_t;
using Phase = std::int64_t;
using TimeStep = std::int64_t;

inline constexpr AgentId kNoAgent = 0;
inline constexpr Arm kNoArm = 0;

/// Invalid user-supplied configuration (exit code 2 at the CLI).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An honest agent was asked to do something the protocol forbids.
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A randomized construction exhausted its resampling budget.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mabsim
