#include "mabsim/rumor.hpp"

#include <string>

namespace mabsim {

RumorState make_rumor_state(const Network& net, AgentId source, double upsilon) {
  if (!net.is_honest(source)) throw ConfigError("rumor source must be an honest agent");
  if (!(upsilon >= 0.0 && upsilon <= 1.0)) throw ConfigError("upsilon must lie in [0,1]");
  RumorState s;
  s.informed.assign(net.n_honest() + 1, 0);
  s.informed[source] = 1;
  s.informed_count = 1;
  s.upsilon = upsilon;
  s.source = source;
  return s;
}

void rumor_step(RumorState& state, const Network& net, Rng& rng) {
  const int n = net.n_honest();
  std::vector<AgentId> joined;
  for (AgentId i = 1; i <= n; ++i) {
    if (state.informed[i]) continue;
    const auto nb = net.honest_neighbors(i);
    if (nb.empty()) {
      throw ConfigError("honest agent " + std::to_string(i) + " has no honest neighbor");
    }
    if (!rng.bernoulli(state.upsilon)) continue;
    const AgentId h = nb[rng.below(nb.size())];
    if (state.informed[h]) joined.push_back(i);
  }
  for (AgentId i : joined) state.informed[i] = 1;
  state.informed_count += static_cast<int>(joined.size());
  ++state.step;
}

SpreadResult spreading_time(const Network& net, std::optional<double> upsilon_override, Rng& rng,
                            Phase cap, AgentId source) {
  if (cap < 1) throw ConfigError("rumor cap must be >= 1");
  const double upsilon = upsilon_override ? *upsilon_override : degree_summary(net).upsilon;
  RumorState s = make_rumor_state(net, source, upsilon);
  // tau >= 1 even when a single agent is trivially informed.
  do {
    rumor_step(s, net, rng);
  } while (!s.all_informed() && s.step < cap);
  return SpreadResult{s.step, !s.all_informed()};
}

CoupledRun coupled_run(const Network& net, Rng& rng, Phase horizon,
                       std::optional<double> upsilon_override, AgentId source) {
  if (horizon < 1) throw ConfigError("coupled run horizon must be >= 1");
  const int n = net.n_honest();
  const double upsilon = upsilon_override ? *upsilon_override : degree_summary(net).upsilon;
  for (AgentId i = 1; i <= n; ++i) {
    if (n > 1 && net.honest_neighbors(i).empty()) {
      throw ConfigError("honest agent " + std::to_string(i) + " has no honest neighbor");
    }
  }

  // Primitive draws, indexed [j][i] for j = 1..horizon.
  std::vector<std::vector<char>> y(horizon + 1, std::vector<char>(n + 1, 0));
  std::vector<std::vector<AgentId>> h(horizon + 1, std::vector<AgentId>(n + 1, kNoAgent));
  for (Phase j = 1; j <= horizon; ++j) {
    for (AgentId i = 1; i <= n; ++i) {
      y[j][i] = rng.bernoulli(upsilon) ? 1 : 0;
      const auto nb = net.honest_neighbors(i);
      h[j][i] = nb.empty() ? kNoAgent : nb[rng.below(nb.size())];
    }
  }

  CoupledRun run;
  std::vector<char> current(n + 1, 0);
  current[source] = 1;
  run.noisy.push_back(current);
  for (Phase j = 1; j <= horizon; ++j) {
    std::vector<char> next = current;
    for (AgentId i = 1; i <= n; ++i) {
      if (!current[i] && y[j][i] && current[h[j][i]]) next[i] = 1;
    }
    current = std::move(next);
    run.noisy.push_back(current);
  }

  // Block boundaries and first-success indices.
  run.sigma.push_back(0);
  std::vector<std::vector<Phase>> first_success;  // [l][i], l >= 1
  first_success.emplace_back();
  {
    std::vector<Phase> z(n + 1, 0);
    int pending = n;
    for (Phase j = 1; j <= horizon; ++j) {
      for (AgentId i = 1; i <= n; ++i) {
        if (z[i] == 0 && y[j][i]) {
          z[i] = j;
          --pending;
        }
      }
      if (pending == 0) {
        run.sigma.push_back(j);
        first_success.push_back(z);
        std::fill(z.begin(), z.end(), 0);
        pending = n;
      }
    }
  }

  std::vector<char> quiet(n + 1, 0);
  quiet[source] = 1;
  run.noiseless.push_back(quiet);
  for (std::size_t l = 1; l < run.sigma.size(); ++l) {
    std::vector<char> next = quiet;
    for (AgentId i = 1; i <= n; ++i) {
      const AgentId contact = h[first_success[l][i]][i];
      if (!quiet[i] && contact != kNoAgent && quiet[contact]) next[i] = 1;
    }
    quiet = std::move(next);
    run.noiseless.push_back(quiet);
  }
  return run;
}

std::optional<Phase> first_domination_violation(const CoupledRun& run) {
  for (std::size_t l = 0; l < run.noiseless.size(); ++l) {
    const auto& lower = run.noiseless[l];
    const auto& upper = run.noisy[run.sigma[l]];
    for (std::size_t i = 1; i < lower.size(); ++i) {
      if (lower[i] && !upper[i]) return static_cast<Phase>(l);
    }
  }
  return std::nullopt;
}

}  // namespace mabsim
