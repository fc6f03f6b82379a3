#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "mabsim/adversary.hpp"
#include "mabsim/agent.hpp"
#include "mabsim/bandit.hpp"
#include "mabsim/blocking.hpp"
#include "mabsim/graph.hpp"
#include "mabsim/schedule.hpp"

namespace mabsim {

struct NetworkSpec {
  enum class Kind { Complete, Gnp, BadInstance, Line, Fixed };
  Kind kind = Kind::Complete;
  int n_honest = 1;
  int n_malicious = 0;
  double p = 1.0;
  int max_resamples = 10000;
  std::shared_ptr<const Network> fixed;  // Kind::Fixed
};

struct BanditSpec {
  enum class Kind { Synthetic, Explicit, BadInstance };
  Kind kind = Kind::Explicit;
  RewardKind reward = RewardKind::Bernoulli;
  std::vector<double> means;  // Kind::Explicit
  int num_arms = 0;           // Kind::Synthetic
  double best_mean = 0.95;
  double second_mean = 0.85;
  double other_low = 0.0;
  double other_high = 0.85;
};

struct StickySpec {
  enum class Kind { Sampled, Explicit, BadInstance };
  Kind kind = Kind::Sampled;
  int size = 1;
  std::vector<std::vector<Arm>> sets;  // Kind::Explicit, slot 0 unused
  int max_resamples = 10000;
  /// Optional explicit (U_1, L_1) per honest agent, slot 0 unused. Sampled when empty.
  std::vector<std::pair<Arm, Arm>> initial_nonsticky;
};

struct AlgorithmSpec {
  double alpha = 4.0;
  double beta = 2.0;
  BlockingPolicy blocking;
  /// false: no-communication baseline, every agent runs UCB over all arms alone.
  bool communicate = true;
};

/// Forced contacts: (phase, honest agent) -> neighbor contacted in that round.
class ContactOverride {
 public:
  void force(Phase j, AgentId agent, AgentId neighbor) { forced_[{j, agent}] = neighbor; }
  std::optional<AgentId> lookup(Phase j, AgentId agent) const;
  const std::map<std::pair<Phase, AgentId>, AgentId>& entries() const { return forced_; }

 private:
  std::map<std::pair<Phase, AgentId>, AgentId> forced_;
};

struct TrialConfig {
  NetworkSpec network;
  BanditSpec bandit;
  StickySpec sticky;
  AlgorithmSpec algorithm;
  AdversaryStrategy adversary;
  TimeStep horizon = 1;
  std::vector<TimeStep> checkpoints;  // empty: 200 log-spaced points in [1, horizon]
  std::uint64_t seed = 0;
  std::optional<ContactOverride> contacts;
  /// 0: results only. 1: also per-phase and per-contact logs.
  int diagnostics = 0;
};

/// `count` distinct integers log-spaced over [1, horizon], always including horizon.
std::vector<TimeStep> log_spaced_checkpoints(TimeStep horizon, int count = 200);

struct BlockEvent {
  Phase phase = 0;
  AgentId blocker = kNoAgent;
  AgentId blocked = kNoAgent;
  Phase unblock_phase = 0;
  bool blocked_is_honest = false;
  bool operator==(const BlockEvent&) const = default;
};

struct StarvedRound {
  Phase phase = 0;
  AgentId agent = kNoAgent;
  bool operator==(const StarvedRound&) const = default;
};

/// Diagnostics: one contact made in pass 2 of round `phase`.
struct ContactRecord {
  Phase phase = 0;
  AgentId agent = kNoAgent;
  AgentId contact = kNoAgent;
  Arm recommendation = kNoArm;
  /// The contact's B_phase from pass 1 (kNoArm for malicious contacts).
  Arm contact_best = kNoArm;
  bool operator==(const ContactRecord&) const = default;
};

/// Diagnostics: state of one agent at the end of phase `phase`, after the blocklist update.
struct PhaseRecord {
  Phase phase = 0;
  AgentId agent = kNoAgent;
  Arm best = kNoArm;
  std::vector<Arm> active;  // S_phase
  std::vector<AgentId> blocked;  // P_phase
  Phase best_constant_since = 0;
  bool operator==(const PhaseRecord&) const = default;
};

struct TrialResult {
  std::vector<TimeStep> checkpoints;
  std::vector<std::vector<double>> regret;  // [agent - 1][checkpoint]
  std::vector<BlockEvent> blocks;
  std::vector<StarvedRound> starved;
  std::optional<Phase> spread_phase;
  std::optional<Phase> last_honest_block_phase;
  Phase phases_completed = 0;
  std::vector<std::vector<std::int64_t>> final_pulls;  // [agent - 1][arm], slot 0 unused
  std::vector<RegretUnits> final_regret_units;          // [agent - 1]
  /// Online accumulator equaled sum_k gap_k * T_k at every checkpoint of every agent.
  bool decomposition_exact = true;
  std::vector<double> arm_means;
  AgentId best_arm_holder = kNoAgent;
  std::vector<ContactRecord> contacts;
  std::vector<PhaseRecord> phases;

  /// Per-agent average regret at checkpoint index c.
  double mean_agent_regret(std::size_t c) const;
  bool operator==(const TrialResult&) const = default;
};

/// Runs one trial. Deterministic in the config (including its seed).
TrialResult run_trial(const TrialConfig& config);

struct SummaryRow {
  TimeStep t = 0;
  double mean = 0.0;
  double std = 0.0;  // population standard deviation over trials
  bool operator==(const SummaryRow&) const = default;
};

struct TrialBatch {
  std::vector<TrialResult> trials;
  std::vector<SummaryRow> summary;
};

/// Summary over trials of the per-agent average regret at each checkpoint.
std::vector<SummaryRow> summarize(const std::vector<TrialResult>& trials);

/// Trial k runs with seed split_seed(base_seed, k). Output does not depend on parallelism.
TrialBatch run_trials(const TrialConfig& config, int n_trials, std::uint64_t base_seed,
                      int parallelism);

/// Calls task(i) for i in [0, count) on up to `parallelism` threads. The first
/// exception thrown by any task is rethrown after all workers stop.
void parallel_for(std::size_t count, int parallelism, const std::function<void(std::size_t)>& task);

}  // namespace mabsim
