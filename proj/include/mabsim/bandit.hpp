#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "mabsim/rng.hpp"
#include "mabsim/types.hpp"

namespace mabsim {

enum class RewardKind { Bernoulli, Deterministic };

struct RewardModel {
  RewardKind kind = RewardKind::Bernoulli;
  double mean = 0.0;
};

/// Pseudo-regret in fixed point: units of 2^-64. Gaps are quantized once at
/// instance construction, after which per-step accumulation and the
/// sum over arms of gap * pulls are both exact integer arithmetic.
using RegretUnits = unsigned __int128;

double regret_units_to_double(RegretUnits u);

/// Arm reward models with the best arm and gaps derived from the means.
class BanditInstance {
 public:
  BanditInstance(std::vector<RewardModel> models);

  static BanditInstance from_means(std::span<const double> means, RewardKind kind);

  int num_arms() const { return static_cast<int>(models_.size()) - 1; }
  const RewardModel& model(Arm k) const { return models_[k]; }
  double mean(Arm k) const { return models_[k].mean; }
  Arm best_arm() const { return best_; }
  /// Arm with the second-highest mean, ties to the lowest index.
  Arm second_best_arm() const { return second_; }
  double gap(Arm k) const { return gaps_[k]; }
  RegretUnits gap_units(Arm k) const { return gap_units_[k]; }
  bool all_deterministic() const;
  std::vector<double> means() const;

 private:
  std::vector<RewardModel> models_;  // slot 0 unused
  std::vector<double> gaps_;
  std::vector<RegretUnits> gap_units_;
  Arm best_ = kNoArm;
  Arm second_ = kNoArm;
};

struct ArmStats {
  std::int64_t pulls_total = 0;
  double reward_sum = 0.0;
  std::int64_t pulls_phase_start = 0;

  std::int64_t phase_pulls() const { return pulls_total - pulls_phase_start; }
};

/// Empirical mean plus sqrt(alpha ln t / pulls); +infinity for an unpulled arm.
double ucb_index(const ArmStats& stats, TimeStep t, double alpha);

/// Same value as ucb_index with alpha * ln(t) precomputed by the caller; bit-identical.
double ucb_index_scaled(const ArmStats& stats, double alpha_log_t);

double draw_reward(const RewardModel& model, Rng& rng);

/// Means of the line-plus-hub lower-bound instance with K = n arms: one best
/// arm of mean 1, n/2 - 1 mediocre arms separated by doubly exponentially
/// small gaps, and n/2 arms of mean 0.
std::vector<double> bad_instance_means(int n);

/// bad_instance_means(n) padded with zero-mean arms to at least n/2 + 3 arms,
/// so that right-half agents can start with three distinct bad arms active.
/// Only n = 4 is padded (to K = 5).
std::vector<double> bad_instance_sim_means(int n);

/// Synthetic instance: arm 1 = best_mean, arm 2 = second_mean, the rest uniform in [low, high).
std::vector<double> synthetic_means(int num_arms, double best_mean, double second_mean, double low,
                                    double high, Rng& rng);

/// One mean per line; blank lines and lines starting with '#' are skipped. A
/// non-numeric first line is treated as a header.
std::vector<double> load_means_csv(const std::filesystem::path& path);

}  // namespace mabsim
