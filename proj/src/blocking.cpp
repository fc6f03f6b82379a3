#include "mabsim/blocking.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mabsim {

BlockingPolicy BlockingPolicy::existing(double eta) {
  if (!(eta > 1.0)) throw ConfigError("eta must be > 1");
  return BlockingPolicy{BlockingKind::Existing, eta, {}};
}

BlockingPolicy BlockingPolicy::relaxed(ProposedRuleParams params) {
  if (!(params.eta > 1.0)) throw ConfigError("eta must be > 1");
  return BlockingPolicy{BlockingKind::Proposed, params.eta, params};
}

bool should_block_existing(Phase j, Arm best_this_phase, Arm previous_recommendation) {
  return j > 1 && best_this_phase != previous_recommendation;
}

bool should_block_proposed(Phase j, std::int64_t pulls_of_recommendation, double kappa_j,
                           Phase best_constant_since, double theta_j) {
  if (j <= 1) return false;
  const double floor_theta = std::floor(theta_j);
  const Phase window = floor_theta < 1.0 ? 1 : static_cast<Phase>(floor_theta);
  return static_cast<double>(pulls_of_recommendation) <= kappa_j && best_constant_since <= window;
}

std::optional<BlockDecision> update_blocklist(const BlockingPolicy& policy, AgentState& state,
                                              Phase j, const PhaseSchedule& schedule) {
  if (policy.kind == BlockingKind::NoBlocking || !state.last_contact) return std::nullopt;
  const Contact& c = *state.last_contact;
  bool fire = false;
  if (policy.kind == BlockingKind::Existing) {
    fire = should_block_existing(j, state.best_history[j], c.arm);
  } else {
    const auto& p = policy.proposed;
    const double kappa = p.kappa(j);
    if (kappa > static_cast<double>(schedule.phase_end(j))) {
      throw std::range_error("kappa_" + std::to_string(j) + " exceeds A_" + std::to_string(j));
    }
    fire = should_block_proposed(j, state.pulls(c.arm), kappa, state.best_constant_since, p.theta(j));
  }
  if (!fire) return std::nullopt;
  return BlockDecision{c.recommender, blocklist_add(state, c.recommender, j, policy.eta)};
}

}  // namespace mabsim
