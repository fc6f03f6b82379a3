#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mabsim/engine.hpp"

namespace mabsim {

enum class CascadeRule { Existing, Proposed };

/// Line-plus-hub trial with the l = 1 event chain forced: agents 1+n/2 and
/// 2+n/2 contact the hub at phases 1..J_1 and agent 2+n/2 contacts 1+n/2 at
/// phase J_1+1. Runs to A(J_1+2) with alpha = 4, beta = eta = 2, S = 1.
/// Proposed uses the theory schedule with rho1 = 1/2, rho2 = 1/3.
TrialConfig forced_cascade_config(int n, CascadeRule rule, std::uint64_t seed = 1);

struct CascadeReport {
  int n = 0;
  CascadeRule rule = CascadeRule::Existing;
  Phase j1 = 0;
  Phase check_phase = 0;  // J_1 + 2
  TimeStep horizon = 0;

  // (a) every right-half agent keeps only bad arms active through J_1.
  bool right_half_bad = false;
  Arm min_right_active = kNoArm;
  std::optional<Phase> first_right_violation;

  // (b) Existing: 2+n/2 blocks 1+n/2 at J_1+2 until (J_1+2)^2.
  //     Proposed: no honest-honest block at J_1+2.
  bool check_block = false;
  Phase expected_unblock = 0;
  std::optional<Phase> observed_unblock;
  int honest_blocks_at_check = 0;

  // (c) no right-half agent blocks the hub through J_1.
  bool hub_never_blocked = false;
  int hub_blocks = 0;

  std::vector<BlockEvent> honest_blocks;
  std::vector<std::string> violations;

  bool passed() const { return violations.empty(); }
};

/// Runs the forced schedule and checks the three assertions. Throws ConfigError for invalid n.
CascadeReport forced_cascade_check(int n, CascadeRule rule, std::uint64_t seed = 1);

}  // namespace mabsim
