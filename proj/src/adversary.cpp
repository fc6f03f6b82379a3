#include "mabsim/adversary.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace mabsim {

std::string_view strategy_name(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::Naive: return "naive";
    case StrategyKind::Smart: return "smart";
    case StrategyKind::MixedNaive: return "mixed_naive";
    case StrategyKind::MixedSmart: return "mixed_smart";
    case StrategyKind::BadInstance: return "bad_instance";
  }
  return "unknown";
}

StrategyKind parse_strategy(std::string_view name) {
  for (auto k : {StrategyKind::Naive, StrategyKind::Smart, StrategyKind::MixedNaive,
                 StrategyKind::MixedSmart, StrategyKind::BadInstance}) {
    if (strategy_name(k) == name) return k;
  }
  throw ConfigError("unknown malicious strategy \"" + std::string(name) + "\"");
}

std::vector<Phase> bad_instance_phase_sequence() {
  std::vector<Phase> out{256};
  constexpr Phase kLimit = 3'000'000'000LL;  // (kLimit + 2)^2 < 2^63
  while (out.back() + 2 < kLimit) {
    const Phase next = out.back() + 2;
    out.push_back(next * next);
  }
  return out;
}

AdversaryStrategy AdversaryStrategy::of(StrategyKind kind) {
  if (kind == StrategyKind::BadInstance) {
    throw ConfigError("bad-instance strategy needs the honest agent count");
  }
  return AdversaryStrategy{kind, 0, {}};
}

AdversaryStrategy AdversaryStrategy::bad_instance(int n) {
  if (n < 4 || n % 2 != 0) throw ConfigError("bad instance needs an even n >= 4");
  return AdversaryStrategy{StrategyKind::BadInstance, n, bad_instance_phase_sequence()};
}

namespace {

Arm naive_pick(const BanditInstance& bandit, Rng& rng) {
  const int k_arms = bandit.num_arms();
  auto k = static_cast<Arm>(rng.below(static_cast<std::uint64_t>(k_arms - 1)) + 1);
  if (k >= bandit.best_arm()) ++k;
  return k;
}

Arm smart_pick(const BanditInstance& bandit, const AgentState& target) {
  const Arm best = bandit.best_arm();
  Arm pick = kNoArm;
  for (Arm k = 1; k <= bandit.num_arms(); ++k) {
    if (k == best || target.is_active[k]) continue;
    if (pick == kNoArm || target.pulls(k) < target.pulls(pick)) pick = k;
  }
  if (pick != kNoArm) return pick;
  // Every suboptimal arm is active: least played active suboptimal arm.
  for (Arm k : target.active) {
    if (k == best) continue;
    if (pick == kNoArm || target.pulls(k) < target.pulls(pick)) pick = k;
  }
  return pick;
}

}  // namespace

Arm most_played_oracle(std::span<const Arm> active, std::span<const ArmStats> stats,
                       const BanditInstance& bandit, Phase j, double alpha,
                       const PhaseSchedule& schedule) {
  for (Arm k : active) {
    if (bandit.model(k).kind != RewardKind::Deterministic) {
      throw OracleInapplicable("arm " + std::to_string(k) + " has stochastic rewards");
    }
  }
  std::vector<ArmStats> sim(active.size());
  std::vector<std::int64_t> plays(active.size(), 0);
  for (std::size_t a = 0; a < active.size(); ++a) sim[a] = stats[active[a]];
  const TimeStep begin = schedule.phase_end(j) + 1;
  const TimeStep end = schedule.phase_end(j + 1);
  for (TimeStep t = begin; t <= end; ++t) {
    const double alpha_log_t = alpha * std::log(static_cast<double>(t));
    std::size_t pick = 0;
    double best_index = 0.0;
    for (std::size_t a = 0; a < active.size(); ++a) {
      const double idx = ucb_index_scaled(sim[a], alpha_log_t);
      if (a == 0 || idx > best_index) {
        pick = a;
        best_index = idx;
      }
    }
    ++sim[pick].pulls_total;
    sim[pick].reward_sum += bandit.mean(active[pick]);
    ++plays[pick];
  }
  std::size_t top = 0;
  for (std::size_t a = 1; a < active.size(); ++a) {
    if (plays[a] > plays[top]) top = a;
  }
  return active[top];
}

Arm bad_instance_recommend(const AdversaryStrategy& strategy, AgentId target_id,
                           const AgentState& target, Phase j, const AdversaryContext& ctx) {
  const int half = strategy.bad_instance_n / 2;
  for (int l = 1; l <= half - 1 && l <= static_cast<int>(strategy.special_phases.size()); ++l) {
    if (j == strategy.special_phases[l - 1] && (target_id == l + 1 + half || target_id == l + 2 + half)) {
      return static_cast<Arm>(1 - l + half);
    }
  }
  return most_played_oracle(target.active, target.stats, ctx.bandit, j, ctx.alpha, ctx.schedule);
}

Arm recommend(const AdversaryStrategy& strategy, const AgentState& target, Phase j, Rng& rng,
              const AdversaryContext& ctx) {
  const auto& bandit = ctx.bandit;
  switch (strategy.kind) {
    case StrategyKind::Naive: return naive_pick(bandit, rng);
    case StrategyKind::Smart: return smart_pick(bandit, target);
    case StrategyKind::MixedNaive:
      if (target.is_active[bandit.best_arm()]) return naive_pick(bandit, rng);
      return bandit.second_best_arm();
    case StrategyKind::MixedSmart:
      if (target.is_active[bandit.best_arm()]) return smart_pick(bandit, target);
      return bandit.second_best_arm();
    case StrategyKind::BadInstance:
      return bad_instance_recommend(strategy, target.id, target, j, ctx);
  }
  throw std::logic_error("unhandled strategy");
}

}  // namespace mabsim
