#include "mabsim/agent.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mabsim/schedule.hpp"

namespace mabsim {

namespace {

void rebuild_active(AgentState& s) {
  std::fill(s.is_active.begin(), s.is_active.end(), 0);
  s.active = s.sticky;
  s.active.push_back(s.upper);
  s.active.push_back(s.lower);
  std::sort(s.active.begin(), s.active.end());
  for (Arm k : s.active) s.is_active[k] = 1;
}

void start_next_phase(AgentState& s, Phase j) {
  for (auto& st : s.stats) st.pulls_phase_start = st.pulls_total;
  s.phase = j + 1;
}

}  // namespace

AgentState make_agent(AgentId id, int num_arms, int num_agents_total, std::vector<Arm> sticky,
                      Arm upper, Arm lower) {
  AgentState s;
  s.id = id;
  std::sort(sticky.begin(), sticky.end());
  if (std::adjacent_find(sticky.begin(), sticky.end()) != sticky.end()) {
    throw ConfigError("agent " + std::to_string(id) + ": duplicate sticky arm");
  }
  if (static_cast<int>(sticky.size()) > num_arms - 2) {
    throw ConfigError("agent " + std::to_string(id) + ": sticky set larger than K-2");
  }
  auto in_range = [num_arms](Arm k) { return k >= 1 && k <= num_arms; };
  for (Arm k : sticky) {
    if (!in_range(k)) throw ConfigError("sticky arm " + std::to_string(k) + " out of range");
  }
  auto is_sticky = [&sticky](Arm k) { return std::binary_search(sticky.begin(), sticky.end(), k); };
  if (!in_range(upper) || !in_range(lower) || upper == lower || is_sticky(upper) || is_sticky(lower)) {
    throw ConfigError("agent " + std::to_string(id) +
                      ": initial non-sticky arms must be two distinct non-sticky arms");
  }
  s.sticky = std::move(sticky);
  s.upper = upper;
  s.lower = lower;
  s.is_active.assign(num_arms + 1, 0);
  s.stats.assign(num_arms + 1, ArmStats{});
  s.best_history.assign(1, kNoArm);
  s.unblock_phase.assign(num_agents_total + 1, 0);
  rebuild_active(s);
  return s;
}

AgentState make_isolated_agent(AgentId id, int num_arms, int num_agents_total) {
  AgentState s;
  s.id = id;
  s.isolated = true;
  s.active.resize(num_arms);
  std::iota(s.active.begin(), s.active.end(), 1);
  s.is_active.assign(num_arms + 1, 1);
  s.is_active[0] = 0;
  s.stats.assign(num_arms + 1, ArmStats{});
  s.best_history.assign(1, kNoArm);
  s.unblock_phase.assign(num_agents_total + 1, 0);
  return s;
}

Arm select_arm(const AgentState& state, TimeStep t, double alpha) {
  const double alpha_log_t = alpha * std::log(static_cast<double>(t));
  Arm best = kNoArm;
  double best_index = 0.0;
  for (Arm k : state.active) {
    const double idx = ucb_index_scaled(state.stats[k], alpha_log_t);
    if (best == kNoArm || idx > best_index) {
      best = k;
      best_index = idx;
    }
  }
  return best;
}

void record_pull(AgentState& state, Arm arm, double reward, RegretUnits gap_units) {
  if (arm < 1 || arm > state.num_arms() || !state.is_active[arm]) {
    throw ProtocolError("agent " + std::to_string(state.id) + " pulled inactive arm " +
                        std::to_string(arm));
  }
  if (!(reward >= 0.0 && reward <= 1.0)) {
    throw ProtocolError("reward " + std::to_string(reward) + " outside [0,1]");
  }
  auto& st = state.stats[arm];
  ++st.pulls_total;
  st.reward_sum += reward;
  state.regret += gap_units;
}

Arm most_played(AgentState& state, Phase j) {
  Arm best = kNoArm;
  std::int64_t best_count = -1;
  for (Arm k : state.active) {
    const auto c = state.stats[k].phase_pulls();
    if (c > best_count) {
      best = k;
      best_count = c;
    }
  }
  if (static_cast<Phase>(state.best_history.size()) != j) {
    throw ProtocolError("most_played called out of phase order at phase " + std::to_string(j));
  }
  const bool same = j > 1 && state.best_history.back() == best;
  state.best_history.push_back(best);
  if (!same) state.best_constant_since = j;
  return best;
}

void apply_recommendation(AgentState& state, Arm r, Phase j) {
  if (r < 1 || r > state.num_arms()) {
    throw ProtocolError("recommendation " + std::to_string(r) + " is not an arm");
  }
  if (!state.is_active[r]) {
    const auto up = state.stats[state.upper].phase_pulls();
    const auto lo = state.stats[state.lower].phase_pulls();
    state.upper = lo > up ? state.lower : state.upper;
    state.lower = r;
    rebuild_active(state);
  }
  start_next_phase(state, j);
}

void skip_recommendation(AgentState& state, Phase j) { start_next_phase(state, j); }

Phase blocklist_add(AgentState& state, AgentId neighbor, Phase j, double eta) {
  const Phase until = ceil_power(j, eta);
  auto& slot = state.unblock_phase.at(neighbor);
  slot = std::max(slot, until);
  return slot;
}

AgentId StickyAssignment::holder_of(Arm arm) const {
  for (std::size_t i = 1; i < sets.size(); ++i) {
    if (std::binary_search(sets[i].begin(), sets[i].end(), arm)) return static_cast<AgentId>(i);
  }
  return kNoAgent;
}

std::vector<Arm> sample_without_replacement(std::vector<Arm> pool, int k, Rng& rng) {
  const auto n = pool.size();
  if (k < 0 || static_cast<std::size_t>(k) > n) throw std::invalid_argument("sample size out of range");
  for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i) {
    const auto pick = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(pool[i], pool[pick]);
  }
  pool.resize(k);
  return pool;
}

StickyAssignment sample_sticky_assignment(int num_arms, int n, int sticky_size, Rng& rng,
                                          int max_resamples, Arm best) {
  if (sticky_size < 1 || sticky_size > num_arms - 2) {
    throw ConfigError("sticky size must satisfy 1 <= S <= K-2");
  }
  std::vector<Arm> all(num_arms);
  std::iota(all.begin(), all.end(), 1);
  StickyAssignment out;
  for (int attempt = 0; attempt < max_resamples; ++attempt) {
    out.sets.assign(n + 1, {});
    bool covered = false;
    for (AgentId i = 1; i <= n; ++i) {
      auto set = sample_without_replacement(all, sticky_size, rng);
      std::sort(set.begin(), set.end());
      covered = covered || std::binary_search(set.begin(), set.end(), best);
      out.sets[i] = std::move(set);
    }
    if (covered) return out;
  }
  throw GenerationError("sticky-set resampling budget exhausted without covering the best arm");
}

std::pair<Arm, Arm> sample_initial_nonsticky(std::span<const Arm> sticky, std::span<const Arm> pool,
                                             Rng& rng) {
  std::vector<Arm> candidates;
  for (Arm k : pool) {
    if (std::find(sticky.begin(), sticky.end(), k) == sticky.end()) candidates.push_back(k);
  }
  if (candidates.size() < 2) throw ConfigError("fewer than two non-sticky arms available");
  auto pick = sample_without_replacement(std::move(candidates), 2, rng);
  return {pick[0], pick[1]};
}

}  // namespace mabsim
