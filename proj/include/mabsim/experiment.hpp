#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mabsim/adversary.hpp"
#include "mabsim/engine.hpp"

namespace mabsim {

inline constexpr const char* kVersion = "1.0.0";

enum class AlgorithmKind { Proposed, Existing, NoBlocking, NoCommunication };

std::string_view algorithm_name(AlgorithmKind kind);
AlgorithmKind parse_algorithm(std::string_view name);

/// A sweep over (algorithm, strategy, p) sharing one trial template.
///
/// Every field except checkpoints and num_checkpoints is required in the JSON
/// form. `p` is required for graph "gnp" and must be absent otherwise.
struct ExperimentConfig {
  std::uint64_t seed = 0;
  int trials = 0;
  TimeStep horizon = 0;
  int n_honest = 0;
  int n_malicious = 0;
  std::string graph;      // complete | gnp | line
  std::vector<double> p;  // {1} for complete and line

  std::string arm_model;  // synthetic | explicit (csv is resolved to explicit)
  int num_arms = 0;
  double best_mean = 0.0;
  double second_mean = 0.0;
  double other_mean_low = 0.0;
  double other_mean_high = 0.0;
  std::vector<double> means;
  std::string means_source;  // path the means were loaded from, informational
  RewardKind reward = RewardKind::Bernoulli;

  int sticky_size = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double eta = 0.0;
  ProposedScheduleKind proposed_schedule = ProposedScheduleKind::Experiment;
  double rho1 = 0.0;
  double rho2 = 0.0;

  std::vector<StrategyKind> strategies;
  std::vector<AlgorithmKind> algorithms;
  std::vector<TimeStep> checkpoints;  // empty: num_checkpoints log-spaced
  int num_checkpoints = 200;
  std::string output_dir;
  /// 0: unspecified. Not written to manifests since it never affects results.
  int parallelism = 0;

  int num_arms_resolved() const;
};

/// Parses a flat config document, or a manifest written by cmd_run (its
/// "config" member). Relative means_csv paths resolve against `base_dir`.
/// Throws ConfigError naming the offending field.
ExperimentConfig parse_experiment(std::string_view json_text, const std::string& base_dir = ".");

/// Resolved flat config as pretty-printed JSON; parse_experiment accepts it back.
std::string experiment_to_json(const ExperimentConfig& config);

/// Trial template for one sweep cell. The seed is left at 0.
TrialConfig cell_config(const ExperimentConfig& config, AlgorithmKind algorithm,
                        StrategyKind strategy, double p);

struct CellResult {
  AlgorithmKind algorithm = AlgorithmKind::Proposed;
  StrategyKind strategy = StrategyKind::Naive;
  double p = 1.0;
  std::vector<TrialResult> trials;
  std::vector<SummaryRow> summary;
};

struct ExperimentResult {
  std::vector<std::uint64_t> trial_seeds;  // trial k: split_seed(seed, k), shared by all cells
  std::vector<CellResult> cells;           // algorithm-major, then strategy, then p
};

/// Runs every cell. All cells share the trial seeds, so a given trial sees the
/// same graph, arm means and sticky sets under every algorithm and strategy.
ExperimentResult run_experiment(const ExperimentConfig& config, int parallelism);

/// MABSIM_PARALLELISM if set and positive, else the hardware thread count.
int default_parallelism();

}  // namespace mabsim
