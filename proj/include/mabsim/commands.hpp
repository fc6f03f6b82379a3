#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "mabsim/cascade.hpp"
#include "mabsim/experiment.hpp"
#include "mabsim/rumor.hpp"

namespace mabsim {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kConfig = 2;
inline constexpr int kAssertion = 3;
}  // namespace exit_code

struct RunOptions {
  std::filesystem::path config;
  std::optional<std::filesystem::path> out;  // overrides output_dir
  std::optional<int> parallelism;            // overrides config and environment
};

/// Writes results.csv, summary.csv, events.csv and manifest.json.
int cmd_run(const RunOptions& opts, std::ostream& log);

/// Forced-cascade verification; writes a JSON report to `out` (or `log` when empty).
/// Returns kAssertion when any assertion fails.
int cmd_bad_instance(int n, CascadeRule rule, const std::optional<std::filesystem::path>& out,
                     std::uint64_t seed, std::ostream& log);

struct RumorOptions {
  std::string graph = "complete";  // complete | line | gnp
  int n = 2;
  int m = 0;
  double p = 1.0;
  std::optional<double> upsilon;
  int trials = 1;
  std::uint64_t seed = 0;
  Phase cap = 1'000'000;
  std::optional<std::filesystem::path> out;
};

/// Per-trial spreading times plus one aggregate row.
int cmd_rumor(const RumorOptions& opts, std::ostream& log);

/// Prints "valid" or "invalid" followed by one violated constraint per line.
/// Returns kConfig when invalid.
int cmd_validate_params(double alpha, double beta, double eta, double rho1, double rho2,
                        std::ostream& out);

std::string results_csv(const ExperimentResult& result);
std::string summary_csv(const ExperimentResult& result);
std::string events_csv(const ExperimentResult& result);
std::string manifest_json(const ExperimentConfig& config, const ExperimentResult& result);
std::string cascade_report_json(const CascadeReport& report);
std::string rumor_csv(const RumorOptions& opts, double upsilon, const std::vector<SpreadResult>& runs);

}  // namespace mabsim
