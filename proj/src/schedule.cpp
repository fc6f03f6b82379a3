#include "mabsim/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace mabsim {

namespace {
constexpr double kMaxExact = 9007199254740992.0;  // 2^53
}

Phase ceil_power(Phase j, double exponent) {
  if (j < 0) throw std::invalid_argument("phase index must be non-negative");
  if (j == 0) return 0;
  const double v = std::pow(static_cast<double>(j), exponent);
  if (!(v <= kMaxExact)) {
    throw std::range_error("phase " + std::to_string(j) + " exceeds exact double range");
  }
  return static_cast<Phase>(std::ceil(v));
}

PhaseSchedule::PhaseSchedule(double beta) : beta_(beta) {
  if (!(beta > 1.0) || !std::isfinite(beta)) throw ConfigError("beta must be a finite real > 1");
}

TimeStep PhaseSchedule::phase_end(Phase j) const { return ceil_power(j, beta_); }

Phase PhaseSchedule::phase_of(TimeStep t) const {
  if (t < 1) throw std::invalid_argument("time step must be >= 1");
  auto j = static_cast<Phase>(std::floor(std::pow(static_cast<double>(t), 1.0 / beta_)));
  if (j < 1) j = 1;
  while (j > 1 && phase_end(j - 1) >= t) --j;
  while (phase_end(j) < t) ++j;
  return j;
}

double ProposedRuleParams::theta(Phase j) const {
  const auto x = static_cast<double>(j);
  if (kind == ProposedScheduleKind::Theory) return std::pow(x / 3.0, rho1);
  return x - std::log(x);
}

double ProposedRuleParams::kappa(Phase j) const {
  const auto x = static_cast<double>(j);
  if (kind == ProposedScheduleKind::Theory) {
    const double k = num_arms;
    return std::pow(x, rho2) / (k * k * sticky_size);
  }
  return std::pow(x, 1.5);
}

Phase ProposedRuleParams::window_start(Phase j) const {
  const double th = std::floor(theta(j));
  return th < 1.0 ? 1 : static_cast<Phase>(th);
}

ParamVerdict validate_params(double alpha, double beta, double eta, double rho1, double rho2) {
  ParamVerdict v;
  auto fail = [&v](const char* name) {
    v.valid = false;
    v.violations.emplace_back(name);
  };
  if (!(beta > 1.0)) fail(constraint::kBeta);
  if (!(eta > 1.0)) fail(constraint::kEta);
  if (!(rho1 > 0.0)) fail(constraint::kRho1Positive);
  if (!(rho1 <= 1.0 / eta)) fail(constraint::kRho1Eta);
  if (!(alpha > 1.5 + 1.0 / (2.0 * beta) + 1.0 / (2.0 * rho1 * rho1))) fail(constraint::kAlpha);
  // With 2 alpha - 3 <= 0 the lower bound on rho2 is unsatisfiable.
  if (!(2.0 * alpha - 3.0 > 0.0) || !(rho2 > 1.0 / (2.0 * alpha - 3.0))) fail(constraint::kRho2Lower);
  if (!(rho2 < rho1 * (beta - 1.0))) fail(constraint::kRho2Upper);
  return v;
}

}  // namespace mabsim
