#include "mabsim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

#include "mabsim/rng.hpp"

namespace mabsim {

std::optional<AgentId> ContactOverride::lookup(Phase j, AgentId agent) const {
  auto it = forced_.find({j, agent});
  if (it == forced_.end()) return std::nullopt;
  return it->second;
}

std::vector<TimeStep> log_spaced_checkpoints(TimeStep horizon, int count) {
  if (horizon < 1) throw ConfigError("horizon must be >= 1");
  if (count < 1) throw ConfigError("checkpoint count must be >= 1");
  std::vector<TimeStep> out;
  const double top = std::log(static_cast<double>(horizon));
  for (int c = 0; c < count; ++c) {
    const double x = count == 1 ? top : top * c / (count - 1);
    auto t = static_cast<TimeStep>(std::llround(std::exp(x)));
    t = std::clamp<TimeStep>(t, 1, horizon);
    if (out.empty() || t > out.back()) out.push_back(t);
  }
  if (out.back() != horizon) out.push_back(horizon);
  return out;
}

double TrialResult::mean_agent_regret(std::size_t c) const {
  double sum = 0.0;
  for (const auto& series : regret) sum += series.at(c);
  return regret.empty() ? 0.0 : sum / static_cast<double>(regret.size());
}

namespace {

Network build_network(const NetworkSpec& spec, Rng& rng) {
  switch (spec.kind) {
    case NetworkSpec::Kind::Complete: return gen_complete(spec.n_honest, spec.n_malicious);
    case NetworkSpec::Kind::Gnp:
      return gen_gnp(spec.n_honest, spec.n_malicious, spec.p, rng, spec.max_resamples);
    case NetworkSpec::Kind::BadInstance: return gen_bad_instance(spec.n_honest);
    case NetworkSpec::Kind::Line: return gen_line(spec.n_honest, spec.n_malicious);
    case NetworkSpec::Kind::Fixed:
      if (!spec.fixed) throw ConfigError("fixed network spec without a network");
      return *spec.fixed;
  }
  throw std::logic_error("unhandled network kind");
}

BanditInstance build_bandit(const BanditSpec& spec, int n_honest, Rng& rng) {
  switch (spec.kind) {
    case BanditSpec::Kind::Explicit: return BanditInstance::from_means(spec.means, spec.reward);
    case BanditSpec::Kind::Synthetic: {
      const auto means = synthetic_means(spec.num_arms, spec.best_mean, spec.second_mean,
                                         spec.other_low, spec.other_high, rng);
      return BanditInstance::from_means(means, spec.reward);
    }
    case BanditSpec::Kind::BadInstance:
      return BanditInstance::from_means(bad_instance_sim_means(n_honest), RewardKind::Deterministic);
  }
  throw std::logic_error("unhandled bandit kind");
}

std::vector<TimeStep> resolve_checkpoints(const TrialConfig& config) {
  if (config.horizon < 1) throw ConfigError("horizon must be >= 1");
  if (config.checkpoints.empty()) return log_spaced_checkpoints(config.horizon);
  for (std::size_t c = 0; c < config.checkpoints.size(); ++c) {
    const TimeStep t = config.checkpoints[c];
    if (t < 1 || t > config.horizon) {
      throw ConfigError("checkpoint " + std::to_string(t) + " outside [1, horizon]");
    }
    if (c > 0 && t <= config.checkpoints[c - 1]) {
      throw ConfigError("checkpoints must be strictly increasing");
    }
  }
  return config.checkpoints;
}

std::vector<AgentState> build_agents(const TrialConfig& config, const Network& net,
                                     const BanditInstance& bandit, Rng& sticky_rng,
                                     Rng& init_rng, AgentId& best_holder) {
  const int n = net.n_honest();
  const int k_arms = bandit.num_arms();
  std::vector<AgentState> agents(n + 1);
  if (!config.algorithm.communicate) {
    for (AgentId i = 1; i <= n; ++i) agents[i] = make_isolated_agent(i, k_arms, net.n_total());
    best_holder = 1;
    return agents;
  }

  StickyAssignment sticky;
  const auto& ss = config.sticky;
  switch (ss.kind) {
    case StickySpec::Kind::Sampled:
      sticky = sample_sticky_assignment(k_arms, n, ss.size, sticky_rng, ss.max_resamples,
                                        bandit.best_arm());
      break;
    case StickySpec::Kind::Explicit:
      if (static_cast<int>(ss.sets.size()) != n + 1) {
        throw ConfigError("explicit sticky sets must list one set per honest agent");
      }
      sticky.sets = ss.sets;
      for (auto& s : sticky.sets) std::sort(s.begin(), s.end());
      break;
    case StickySpec::Kind::BadInstance:
      sticky.sets.assign(n + 1, {});
      for (AgentId i = 1; i <= n; ++i) sticky.sets[i] = {i};
      break;
  }
  best_holder = sticky.holder_of(bandit.best_arm());
  if (best_holder == kNoAgent) throw ConfigError("no honest agent holds the best arm in its sticky set");

  std::vector<Arm> all(k_arms);
  std::iota(all.begin(), all.end(), 1);
  const bool bad_layout = ss.kind == StickySpec::Kind::BadInstance;
  std::vector<Arm> right_pool;
  for (Arm k = n / 2 + 1; k <= k_arms; ++k) right_pool.push_back(k);
  for (AgentId i = 1; i <= n; ++i) {
    std::pair<Arm, Arm> ul;
    if (!ss.initial_nonsticky.empty()) {
      if (static_cast<int>(ss.initial_nonsticky.size()) != n + 1) {
        throw ConfigError("explicit initial arms must list one pair per honest agent");
      }
      ul = ss.initial_nonsticky[i];
    } else if (bad_layout && i > n / 2) {
      ul = sample_initial_nonsticky(sticky.sets[i], right_pool, init_rng);
    } else {
      ul = sample_initial_nonsticky(sticky.sets[i], all, init_rng);
    }
    agents[i] = make_agent(i, k_arms, net.n_total(), sticky.sets[i], ul.first, ul.second);
  }
  return agents;
}

void check_overrides(const ContactOverride& overrides, const Network& net) {
  for (const auto& [key, nb] : overrides.entries()) {
    const auto [j, agent] = key;
    if (j < 1 || !net.is_honest(agent)) {
      throw ConfigError("contact override for a non-honest agent or invalid phase");
    }
    if (!net.adjacent(agent, nb)) {
      throw ConfigError("contact override: agent " + std::to_string(nb) + " is not a neighbor of " +
                        std::to_string(agent));
    }
  }
}

bool decomposition_holds(const AgentState& a, const BanditInstance& bandit) {
  RegretUnits sum = 0;
  for (Arm k = 1; k <= bandit.num_arms(); ++k) {
    sum += bandit.gap_units(k) * static_cast<RegretUnits>(a.pulls(k));
  }
  return sum == a.regret;
}

}  // namespace

TrialResult run_trial(const TrialConfig& config) {
  const std::uint64_t seed = config.seed;
  Rng graph_rng(split_seed(seed, stream::kGraph));
  Rng means_rng(split_seed(seed, stream::kArmMeans));
  Rng sticky_rng(split_seed(seed, stream::kSticky));
  Rng init_rng(split_seed(seed, stream::kInitialArms));
  Rng contact_rng(split_seed(seed, stream::kContacts));
  Rng adversary_rng(split_seed(seed, stream::kAdversary));

  const Network net = build_network(config.network, graph_rng);
  if (const auto err = validate_network(net); !err.empty()) throw ConfigError(err);
  const int n = net.n_honest();
  const BanditInstance bandit = build_bandit(config.bandit, n, means_rng);
  const PhaseSchedule schedule(config.algorithm.beta);
  const double alpha = config.algorithm.alpha;
  if (!(alpha > 0.0)) throw ConfigError("alpha must be > 0");
  const bool communicate = config.algorithm.communicate;
  const auto& policy = config.algorithm.blocking;
  if (config.contacts) check_overrides(*config.contacts, net);

  TrialResult result;
  result.checkpoints = resolve_checkpoints(config);
  result.arm_means = bandit.means();
  std::vector<AgentState> agents =
      build_agents(config, net, bandit, sticky_rng, init_rng, result.best_arm_holder);
  std::vector<Rng> reward_rngs;
  reward_rngs.reserve(n + 1);
  for (AgentId i = 0; i <= n; ++i) reward_rngs.emplace_back(split_seed(seed, stream::kRewardsBase + i));
  const AdversaryContext ctx{bandit, alpha, schedule};

  const std::size_t n_cp = result.checkpoints.size();
  result.regret.assign(n, std::vector<double>(n_cp, 0.0));

  std::vector<Arm> round_best(n + 1, kNoArm);
  TimeStep t = 0;
  Phase j = 1;
  std::size_t cp = 0;  // first checkpoint > t
  while (t < config.horizon) {
    const TimeStep phase_end = communicate ? schedule.phase_end(j) : config.horizon;
    const TimeStep stop = std::min(phase_end, config.horizon);
    std::size_t cp_end = cp;
    while (cp_end < n_cp && result.checkpoints[cp_end] <= stop) ++cp_end;

    for (AgentId i = 1; i <= n; ++i) {
      AgentState& a = agents[i];
      Rng& rr = reward_rngs[i];
      std::size_t c = cp;
      for (TimeStep s = t + 1; s <= stop; ++s) {
        const Arm k = select_arm(a, s, alpha);
        record_pull(a, k, draw_reward(bandit.model(k), rr), bandit.gap_units(k));
        if (c < cp_end && result.checkpoints[c] == s) {
          result.regret[i - 1][c] = regret_units_to_double(a.regret);
          if (!decomposition_holds(a, bandit)) result.decomposition_exact = false;
          ++c;
        }
      }
    }
    t = stop;
    cp = cp_end;
    if (!communicate || stop < phase_end) break;

    // Pass 1: best-arm estimates and blocklist updates.
    for (AgentId i = 1; i <= n; ++i) {
      AgentState& a = agents[i];
      round_best[i] = most_played(a, j);
      if (auto d = update_blocklist(policy, a, j, schedule)) {
        const bool honest = net.is_honest(d->blocked);
        result.blocks.push_back({j, i, d->blocked, d->unblock_phase, honest});
        if (honest) result.last_honest_block_phase = j;
      }
      if (config.diagnostics > 0) {
        PhaseRecord rec{j, i, round_best[i], a.active, {}, a.best_constant_since};
        for (AgentId nb : net.neighbors(i)) {
          if (a.blocked(nb, j)) rec.blocked.push_back(nb);
        }
        result.phases.push_back(std::move(rec));
      }
    }

    // Pass 2: contacts and active-set updates.
    std::vector<AgentId> candidates;
    for (AgentId i = 1; i <= n; ++i) {
      AgentState& a = agents[i];
      std::optional<AgentId> forced;
      if (config.contacts) forced = config.contacts->lookup(j, i);
      AgentId h = kNoAgent;
      if (forced) {
        if (a.blocked(*forced, j)) {
          throw ProtocolError("forced contact " + std::to_string(*forced) + " is blocked by agent " +
                              std::to_string(i) + " at phase " + std::to_string(j));
        }
        h = *forced;
      } else {
        candidates.clear();
        for (AgentId nb : net.neighbors(i)) {
          if (!a.blocked(nb, j)) candidates.push_back(nb);
        }
        if (candidates.empty()) {
          result.starved.push_back({j, i});
          a.last_contact.reset();
          skip_recommendation(a, j);
          continue;
        }
        h = candidates[contact_rng.below(candidates.size())];
      }
      const bool honest = net.is_honest(h);
      const Arm r = honest ? round_best[h] : recommend(config.adversary, a, j, adversary_rng, ctx);
      a.last_contact = Contact{h, r};
      if (config.diagnostics > 0) {
        result.contacts.push_back({j, i, h, r, honest ? round_best[h] : kNoArm});
      }
      apply_recommendation(a, r, j);
    }
    ++j;
  }

  result.phases_completed = communicate ? j - 1 : 0;
  if (result.phases_completed > 0) {
    Phase last_miss = 0;
    for (AgentId i = 1; i <= n; ++i) {
      const auto& hist = agents[i].best_history;
      for (Phase p = static_cast<Phase>(hist.size()) - 1; p >= 1; --p) {
        if (hist[p] != bandit.best_arm()) {
          last_miss = std::max(last_miss, p);
          break;
        }
      }
    }
    if (last_miss < result.phases_completed) result.spread_phase = last_miss + 1;
  }

  result.final_pulls.resize(n);
  result.final_regret_units.resize(n);
  for (AgentId i = 1; i <= n; ++i) {
    auto& pulls = result.final_pulls[i - 1];
    pulls.assign(bandit.num_arms() + 1, 0);
    for (Arm k = 1; k <= bandit.num_arms(); ++k) pulls[k] = agents[i].pulls(k);
    result.final_regret_units[i - 1] = agents[i].regret;
    if (!decomposition_holds(agents[i], bandit)) result.decomposition_exact = false;
  }
  return result;
}

std::vector<SummaryRow> summarize(const std::vector<TrialResult>& trials) {
  std::vector<SummaryRow> rows;
  if (trials.empty()) return rows;
  const auto& cps = trials.front().checkpoints;
  const auto count = static_cast<double>(trials.size());
  for (std::size_t c = 0; c < cps.size(); ++c) {
    double sum = 0.0;
    for (const auto& tr : trials) sum += tr.mean_agent_regret(c);
    const double mean = sum / count;
    double sq = 0.0;
    for (const auto& tr : trials) {
      const double d = tr.mean_agent_regret(c) - mean;
      sq += d * d;
    }
    rows.push_back({cps[c], mean, std::sqrt(sq / count)});
  }
  return rows;
}

TrialBatch run_trials(const TrialConfig& config, int n_trials, std::uint64_t base_seed,
                      int parallelism) {
  if (n_trials < 1) throw ConfigError("trial count must be >= 1");
  TrialBatch batch;
  batch.trials.resize(n_trials);
  parallel_for(static_cast<std::size_t>(n_trials), parallelism, [&](std::size_t k) {
    TrialConfig c = config;
    c.seed = split_seed(base_seed, k);
    batch.trials[k] = run_trial(c);
  });
  batch.summary = summarize(batch.trials);
  return batch;
}

void parallel_for(std::size_t count, int parallelism,
                  const std::function<void(std::size_t)>& task) {
  const std::size_t workers =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, parallelism)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace mabsim
