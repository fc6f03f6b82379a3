#include "mabsim/bandit.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>

namespace mabsim {

double regret_units_to_double(RegretUnits u) {
  return static_cast<double>(std::ldexp(static_cast<long double>(u), -64));
}

BanditInstance::BanditInstance(std::vector<RewardModel> models) {
  if (models.size() < 2) throw ConfigError("bandit needs at least two arms");
  models_.reserve(models.size() + 1);
  models_.push_back({});
  for (const auto& m : models) {
    if (!(m.mean >= 0.0 && m.mean <= 1.0)) {
      throw ConfigError("arm mean " + std::to_string(m.mean) + " outside [0,1]");
    }
    models_.push_back(m);
  }
  const int k_arms = num_arms();
  best_ = 1;
  for (Arm k = 2; k <= k_arms; ++k) {
    if (models_[k].mean > models_[best_].mean) best_ = k;
  }
  for (Arm k = 1; k <= k_arms; ++k) {
    if (k != best_ && models_[k].mean == models_[best_].mean) {
      throw ConfigError("best arm is not unique (arms " + std::to_string(best_) + " and " +
                        std::to_string(k) + ")");
    }
  }
  second_ = kNoArm;
  for (Arm k = 1; k <= k_arms; ++k) {
    if (k == best_) continue;
    if (second_ == kNoArm || models_[k].mean > models_[second_].mean) second_ = k;
  }
  gaps_.assign(k_arms + 1, 0.0);
  gap_units_.assign(k_arms + 1, 0);
  for (Arm k = 1; k <= k_arms; ++k) {
    gaps_[k] = models_[best_].mean - models_[k].mean;
    gap_units_[k] = static_cast<RegretUnits>(std::ldexp(static_cast<long double>(gaps_[k]), 64));
  }
}

BanditInstance BanditInstance::from_means(std::span<const double> means, RewardKind kind) {
  std::vector<RewardModel> models;
  models.reserve(means.size());
  for (double m : means) models.push_back({kind, m});
  return BanditInstance(std::move(models));
}

bool BanditInstance::all_deterministic() const {
  for (std::size_t k = 1; k < models_.size(); ++k) {
    if (models_[k].kind != RewardKind::Deterministic) return false;
  }
  return true;
}

std::vector<double> BanditInstance::means() const {
  std::vector<double> out;
  out.reserve(models_.size() - 1);
  for (std::size_t k = 1; k < models_.size(); ++k) out.push_back(models_[k].mean);
  return out;
}

double ucb_index_scaled(const ArmStats& stats, double alpha_log_t) {
  if (stats.pulls_total == 0) return std::numeric_limits<double>::infinity();
  const auto n = static_cast<double>(stats.pulls_total);
  return stats.reward_sum / n + std::sqrt(alpha_log_t / n);
}

double ucb_index(const ArmStats& stats, TimeStep t, double alpha) {
  return ucb_index_scaled(stats, alpha * std::log(static_cast<double>(t)));
}

double draw_reward(const RewardModel& model, Rng& rng) {
  if (model.kind == RewardKind::Deterministic) return model.mean;
  return rng.bernoulli(model.mean) ? 1.0 : 0.0;
}

std::vector<double> bad_instance_means(int n) {
  if (n < 4 || n % 2 != 0) {
    throw ConfigError("bad instance needs an even number of honest agents >= 4, got " +
                      std::to_string(n));
  }
  const int half = n / 2;
  std::vector<double> mu(n, 0.0);
  mu[0] = 1.0;
  for (int k = 2; k <= half; ++k) {
    double v = 13.0 / 15.0;
    for (int h = 1; h <= half - k; ++h) v += std::exp2(-std::exp2(h + 1));
    mu[k - 1] = v;
  }
  if (!(mu[0] - mu[1] > 1.0 / 15.0)) throw std::logic_error("bad instance gap check failed");
  return mu;
}

std::vector<double> bad_instance_sim_means(int n) {
  auto mu = bad_instance_means(n);
  if (static_cast<int>(mu.size()) < n / 2 + 3) mu.resize(n / 2 + 3, 0.0);
  return mu;
}

std::vector<double> synthetic_means(int num_arms, double best_mean, double second_mean, double low,
                                    double high, Rng& rng) {
  if (num_arms < 2) throw ConfigError("synthetic instance needs K >= 2");
  std::vector<double> mu(num_arms);
  mu[0] = best_mean;
  mu[1] = second_mean;
  for (int k = 2; k < num_arms; ++k) mu[k] = low + (high - low) * rng.uniform();
  return mu;
}

std::vector<double> load_means_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open arm-means file " + path.string());
  std::vector<double> out;
  std::string line;
  bool first = true;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    auto end = line.find_first_of(",; \t", start);
    std::string_view cell(line.data() + start, (end == std::string::npos ? line.size() : end) - start);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
      if (first) {
        first = false;
        continue;
      }
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": not a number");
    }
    first = false;
    out.push_back(v);
  }
  if (out.size() < 2) throw ConfigError(path.string() + ": need at least two arm means");
  return out;
}

}  // namespace mabsim
