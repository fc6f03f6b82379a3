#pragma once

#include <string>
#include <vector>

#include "mabsim/types.hpp"

namespace mabsim {

/// Phase boundaries A(j) = ceil(j^beta). Phase j covers steps A(j-1)+1 .. A(j).
class PhaseSchedule {
 public:
  explicit PhaseSchedule(double beta);

  double beta() const { return beta_; }

  /// A(j). Throws std::range_error once j^beta exceeds 2^53.
  TimeStep phase_end(Phase j) const;

  /// min{ j : t <= A(j) } for t >= 1.
  Phase phase_of(TimeStep t) const;

 private:
  double beta_;
};

/// ceil(j^exponent) with the same 2^53 guard as PhaseSchedule; used for blocklist expiry.
Phase ceil_power(Phase j, double exponent);

enum class ProposedScheduleKind { Theory, Experiment };

/// Tuning of the relaxed blocking rule: a play-count threshold kappa(j) and a
/// window start theta(j) for the best-arm constancy check.
struct ProposedRuleParams {
  double eta = 2.0;
  ProposedScheduleKind kind = ProposedScheduleKind::Experiment;
  // Theory-kind parameters.
  double rho1 = 0.5;
  double rho2 = 1.0 / 3.0;
  int num_arms = 0;
  int sticky_size = 0;
  double alpha = 4.0;

  /// Theory: (j/3)^rho1. Experiment: j - ln j.
  double theta(Phase j) const;
  /// Theory: j^rho2 / (K^2 S). Experiment: j^1.5.
  double kappa(Phase j) const;
  /// max(1, floor(theta(j))): first phase of the constancy window.
  Phase window_start(Phase j) const;
};

struct ParamVerdict {
  bool valid = true;
  std::vector<std::string> violations;
};

/// Names of the individual constraints, as they appear in ParamVerdict::violations.
namespace constraint {
inline constexpr const char* kBeta = "beta > 1";
inline constexpr const char* kEta = "eta > 1";
inline constexpr const char* kRho1Positive = "rho1 > 0";
inline constexpr const char* kRho1Eta = "rho1 <= 1/eta";
inline constexpr const char* kAlpha = "alpha > 3/2 + 1/(2 beta) + 1/(2 rho1^2)";
inline constexpr const char* kRho2Lower = "rho2 > 1/(2 alpha - 3)";
inline constexpr const char* kRho2Upper = "rho2 < rho1 (beta - 1)";
}  // namespace constraint

/// Checks the parameter region under which the theory schedule carries its regret guarantee.
ParamVerdict validate_params(double alpha, double beta, double eta, double rho1, double rho2);

}  // namespace mabsim
