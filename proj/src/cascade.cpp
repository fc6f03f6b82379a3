#include "mabsim/cascade.hpp"

#include <algorithm>

namespace mabsim {

namespace {

constexpr double kAlpha = 4.0;
constexpr double kBeta = 2.0;
constexpr double kEta = 2.0;

void check_n(int n) {
  if (n < 4 || n % 2 != 0) throw ConfigError("bad instance needs an even n >= 4");
}

}  // namespace

TrialConfig forced_cascade_config(int n, CascadeRule rule, std::uint64_t seed) {
  check_n(n);
  const Phase j1 = bad_instance_phase_sequence().front();
  const AgentId first = n / 2 + 1;
  const AgentId second = n / 2 + 2;
  const AgentId hub = n + 1;

  TrialConfig c;
  c.network.kind = NetworkSpec::Kind::BadInstance;
  c.network.n_honest = n;
  c.network.n_malicious = 1;
  c.bandit.kind = BanditSpec::Kind::BadInstance;
  c.bandit.reward = RewardKind::Deterministic;
  c.sticky.kind = StickySpec::Kind::BadInstance;
  c.sticky.size = 1;
  c.algorithm.alpha = kAlpha;
  c.algorithm.beta = kBeta;
  if (rule == CascadeRule::Existing) {
    c.algorithm.blocking = BlockingPolicy::existing(kEta);
  } else {
    ProposedRuleParams p;
    p.eta = kEta;
    p.kind = ProposedScheduleKind::Theory;
    p.rho1 = 0.5;
    p.rho2 = 1.0 / 3.0;
    p.num_arms = static_cast<int>(bad_instance_sim_means(n).size());
    p.sticky_size = 1;
    p.alpha = kAlpha;
    c.algorithm.blocking = BlockingPolicy::relaxed(p);
  }
  c.adversary = AdversaryStrategy::bad_instance(n);
  c.horizon = PhaseSchedule(kBeta).phase_end(j1 + 2);
  c.checkpoints = {c.horizon};
  c.seed = seed;
  ContactOverride forced;
  for (Phase j = 1; j <= j1; ++j) {
    forced.force(j, first, hub);
    forced.force(j, second, hub);
  }
  forced.force(j1 + 1, second, first);
  c.contacts = std::move(forced);
  c.diagnostics = 1;
  return c;
}

CascadeReport forced_cascade_check(int n, CascadeRule rule, std::uint64_t seed) {
  const TrialConfig config = forced_cascade_config(n, rule, seed);
  const TrialResult r = run_trial(config);

  CascadeReport rep;
  rep.n = n;
  rep.rule = rule;
  rep.j1 = bad_instance_phase_sequence().front();
  rep.check_phase = rep.j1 + 2;
  rep.horizon = config.horizon;
  const AgentId first = n / 2 + 1;
  const AgentId second = n / 2 + 2;
  const AgentId hub = n + 1;

  rep.min_right_active = n + 1;
  for (const auto& rec : r.phases) {
    if (rec.agent <= n / 2 || rec.phase > rep.j1) continue;
    const Arm lowest = rec.active.front();
    rep.min_right_active = std::min(rep.min_right_active, lowest);
    if (lowest <= n / 2 && !rep.first_right_violation) rep.first_right_violation = rec.phase;
  }
  rep.right_half_bad = !rep.first_right_violation;
  if (!rep.right_half_bad) {
    rep.violations.push_back("right-half agent activated arm " + std::to_string(rep.min_right_active) +
                             " at phase " + std::to_string(*rep.first_right_violation));
  }

  rep.expected_unblock = rep.check_phase * rep.check_phase;
  for (const auto& e : r.blocks) {
    if (e.blocked_is_honest) rep.honest_blocks.push_back(e);
    if (e.blocked == hub && e.blocker > n / 2 && e.phase <= rep.j1) ++rep.hub_blocks;
    if (e.phase == rep.check_phase && e.blocked_is_honest) {
      ++rep.honest_blocks_at_check;
      if (e.blocker == second && e.blocked == first) rep.observed_unblock = e.unblock_phase;
    }
  }
  if (rule == CascadeRule::Existing) {
    rep.check_block = rep.observed_unblock == rep.expected_unblock;
    if (!rep.check_block) {
      rep.violations.push_back("agent " + std::to_string(second) + " did not block agent " +
                               std::to_string(first) + " at phase " +
                               std::to_string(rep.check_phase) + " until " +
                               std::to_string(rep.expected_unblock));
    }
  } else {
    rep.check_block = rep.honest_blocks_at_check == 0;
    if (!rep.check_block) {
      rep.violations.push_back(std::to_string(rep.honest_blocks_at_check) +
                               " honest-honest block(s) at phase " + std::to_string(rep.check_phase));
    }
  }

  rep.hub_never_blocked = rep.hub_blocks == 0;
  if (!rep.hub_never_blocked) {
    rep.violations.push_back("hub blocked " + std::to_string(rep.hub_blocks) +
                             " time(s) by right-half agents");
  }
  return rep;
}

}  // namespace mabsim
