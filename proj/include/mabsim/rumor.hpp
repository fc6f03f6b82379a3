#pragma once

#include <optional>
#include <vector>

#include "mabsim/graph.hpp"
#include "mabsim/rng.hpp"

namespace mabsim {

/// Push-pull style rumor on the honest subgraph where every contact succeeds
/// only with probability upsilon.
struct RumorState {
  std::vector<char> informed;  // indexed by honest agent
  int informed_count = 0;
  Phase step = 0;
  double upsilon = 1.0;
  AgentId source = 1;

  bool all_informed() const { return informed_count == static_cast<int>(informed.size()) - 1; }
};

RumorState make_rumor_state(const Network& net, AgentId source, double upsilon);

/// One step: each uninformed honest agent draws Y ~ Bernoulli(upsilon) and, if
/// Y = 1, a uniform honest neighbor H; it joins when H was informed before the
/// step. Throws ConfigError if an uninformed agent has no honest neighbor.
void rumor_step(RumorState& state, const Network& net, Rng& rng);

struct SpreadResult {
  Phase steps = 0;      // steps executed
  bool capped = false;  // cap reached before everyone was informed
  std::optional<Phase> tau() const { return capped ? std::nullopt : std::optional<Phase>(steps); }
};

/// Runs rumor_step until all honest agents are informed or `cap` steps elapse.
/// upsilon defaults to degree_summary(net).upsilon.
SpreadResult spreading_time(const Network& net, std::optional<double> upsilon_override, Rng& rng,
                            Phase cap, AgentId source = 1);

/// Noisy and noiseless trajectories built from shared draws.
///
/// The noisy process draws (Y_j^i, H_j^i) for every honest agent at every step.
/// sigma_l is the first step after sigma_{l-1} by which every agent has had a
/// successful Y in the block; Z_l^i is agent i's first success in block l. The
/// noiseless process at step l uses H_{Z_l^i}^i as agent i's contact.
struct CoupledRun {
  std::vector<std::vector<char>> noisy;      // noisy[j] for j = 0..horizon
  std::vector<std::vector<char>> noiseless;  // noiseless[l] for l = 0..sigma.size()-1
  std::vector<Phase> sigma;                  // sigma[0] = 0, then complete blocks within horizon
};

CoupledRun coupled_run(const Network& net, Rng& rng, Phase horizon,
                       std::optional<double> upsilon_override = std::nullopt, AgentId source = 1);

/// First l with noiseless[l] not a subset of noisy[sigma[l]], or nullopt if domination holds.
std::optional<Phase> first_domination_violation(const CoupledRun& run);

}  // namespace mabsim
