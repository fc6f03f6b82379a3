#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mabsim/bandit.hpp"
#include "mabsim/rng.hpp"
#include "mabsim/types.hpp"

namespace mabsim {

/// Who was contacted at the previous communication round and what they recommended.
struct Contact {
  AgentId recommender = kNoAgent;
  Arm arm = kNoArm;
};

/// One honest agent's protocol state.
///
/// The active set is the sticky set plus two non-sticky arms (upper, lower).
/// In isolated mode (no-communication baseline) every arm is active and the
/// phase machinery is unused.
struct AgentState {
  AgentId id = kNoAgent;
  std::vector<Arm> sticky;  // sorted
  Arm upper = kNoArm;
  Arm lower = kNoArm;
  std::vector<Arm> active;       // sorted ascending
  std::vector<char> is_active;   // indexed by arm
  std::vector<ArmStats> stats;   // indexed by arm
  std::vector<Arm> best_history; // best_history[j] = B_j; slot 0 unused
  Phase best_constant_since = 0; // smallest j0 with B_j0 = ... = B_phase
  std::vector<Phase> unblock_phase;  // indexed by agent; blocked at j iff unblock_phase >= j
  std::optional<Contact> last_contact;
  Phase phase = 1;
  RegretUnits regret = 0;
  bool isolated = false;

  int num_arms() const { return static_cast<int>(stats.size()) - 1; }
  std::int64_t pulls(Arm k) const { return stats[k].pulls_total; }
  bool blocked(AgentId neighbor, Phase j) const { return unblock_phase[neighbor] >= j; }
};

/// Fresh agent with active set sticky U {upper, lower}.
AgentState make_agent(AgentId id, int num_arms, int num_agents_total, std::vector<Arm> sticky,
                      Arm upper, Arm lower);

/// Agent that keeps every arm active and never communicates.
AgentState make_isolated_agent(AgentId id, int num_arms, int num_agents_total);

/// UCB argmax over the active set, ties to the lowest arm index.
Arm select_arm(const AgentState& state, TimeStep t, double alpha);

/// Adds one observation and the arm's gap to the regret accumulator.
/// Throws ProtocolError if the arm is inactive or the reward lies outside [0,1].
void record_pull(AgentState& state, Arm arm, double reward, RegretUnits gap_units);

/// B_j: most played active arm in the phase that just ended, ties to the lowest
/// index. Appends to best_history and maintains best_constant_since.
Arm most_played(AgentState& state, Phase j);

/// End-of-round active-set update with recommendation r, then starts phase j+1.
void apply_recommendation(AgentState& state, Arm r, Phase j);

/// Starts phase j+1 with the active set unchanged (no recommendation received).
void skip_recommendation(AgentState& state, Phase j);

/// Blocks `neighbor` for phases j..ceil(j^eta), merging with any existing block.
/// Returns the resulting unblock phase.
Phase blocklist_add(AgentState& state, AgentId neighbor, Phase j, double eta);

struct StickyAssignment {
  std::vector<std::vector<Arm>> sets;  // sets[i] for honest i; slot 0 unused

  /// Lowest-id honest agent holding `arm`, or kNoAgent.
  AgentId holder_of(Arm arm) const;
};

/// Independent uniform S-subsets of [K] per agent, redrawn until `best` is covered.
StickyAssignment sample_sticky_assignment(int num_arms, int n, int sticky_size, Rng& rng,
                                          int max_resamples = 10000, Arm best = 1);

/// Two distinct arms drawn uniformly from `pool` minus the sticky set.
std::pair<Arm, Arm> sample_initial_nonsticky(std::span<const Arm> sticky, std::span<const Arm> pool,
                                             Rng& rng);

/// k distinct elements of `pool`, uniformly, via partial Fisher-Yates.
std::vector<Arm> sample_without_replacement(std::vector<Arm> pool, int k, Rng& rng);

}  // namespace mabsim
