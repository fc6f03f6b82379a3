#pragma once

#include <optional>

#include "mabsim/agent.hpp"
#include "mabsim/schedule.hpp"

namespace mabsim {

enum class BlockingKind { NoBlocking, Existing, Proposed };

struct BlockingPolicy {
  BlockingKind kind = BlockingKind::NoBlocking;
  double eta = 2.0;
  ProposedRuleParams proposed;  // used only by BlockingKind::Proposed

  static BlockingPolicy none() { return {}; }
  static BlockingPolicy existing(double eta);
  static BlockingPolicy relaxed(ProposedRuleParams params);
};

/// Block iff j > 1 and the previous recommendation is not this phase's most played arm.
bool should_block_existing(Phase j, Arm best_this_phase, Arm previous_recommendation);

/// Block iff the recommended arm has at most kappa_j lifetime pulls and the best-arm
/// estimate has been constant since phase max(1, floor(theta_j)).
bool should_block_proposed(Phase j, std::int64_t pulls_of_recommendation, double kappa_j,
                           Phase best_constant_since, double theta_j);

struct BlockDecision {
  AgentId blocked = kNoAgent;
  Phase unblock_phase = 0;
};

/// Runs the policy at the end of phase j (after most_played). Blocks at most one
/// agent: the previous round's recommender. Throws std::range_error if the
/// proposed rule's kappa_j exceeds A(j).
std::optional<BlockDecision> update_blocklist(const BlockingPolicy& policy, AgentState& state,
                                              Phase j, const PhaseSchedule& schedule);

}  // namespace mabsim
