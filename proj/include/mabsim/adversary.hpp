#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "mabsim/agent.hpp"
#include "mabsim/bandit.hpp"
#include "mabsim/rng.hpp"
#include "mabsim/schedule.hpp"

namespace mabsim {

enum class StrategyKind { Naive, Smart, MixedNaive, MixedSmart, BadInstance };

std::string_view strategy_name(StrategyKind kind);
StrategyKind parse_strategy(std::string_view name);

/// The honest agents' count in the line-plus-hub construction is carried here so
/// the strategy can tell which targets are due a mediocre arm at phase J_l.
struct AdversaryStrategy {
  StrategyKind kind = StrategyKind::Naive;
  int bad_instance_n = 0;
  std::vector<Phase> special_phases;  // J_1, J_2, ... while representable

  static AdversaryStrategy of(StrategyKind kind);
  static AdversaryStrategy bad_instance(int n);
};

/// J_1 = 256, J_{l+1} = (J_l + 2)^2, truncated before int64 overflow.
std::vector<Phase> bad_instance_phase_sequence();

/// Read-only context shared by all malicious agents in a trial.
struct AdversaryContext {
  const BanditInstance& bandit;
  double alpha;
  const PhaseSchedule& schedule;
};

class OracleInapplicable : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Recommendation a malicious agent sends to honest `target` at the end of phase j.
/// The adversary sees the target's full state (counts and active set at A(j)).
Arm recommend(const AdversaryStrategy& strategy, const AgentState& target, Phase j, Rng& rng,
              const AdversaryContext& ctx);

/// Predicts B_{j+1} for an agent that keeps `active` during phase j+1.
///
/// Replays UCB with deterministic rewards over steps A(j)+1 .. A(j+1) starting
/// from `stats` (indexed by arm), using the same index arithmetic and tie
/// breaking as select_arm, and returns the most played arm. Throws
/// OracleInapplicable if an active arm has a stochastic reward model.
Arm most_played_oracle(std::span<const Arm> active, std::span<const ArmStats> stats,
                       const BanditInstance& bandit, Phase j, double alpha,
                       const PhaseSchedule& schedule);

/// At j = J_l, targets l+1+n/2 and l+2+n/2 receive mediocre arm 1-l+n/2 (l in
/// 1..n/2-1). Every other recommendation is an active arm that the target will
/// play most in phase j+1, so the existing rule never fires against the hub.
Arm bad_instance_recommend(const AdversaryStrategy& strategy, AgentId target_id,
                           const AgentState& target, Phase j, const AdversaryContext& ctx);

}  // namespace mabsim
