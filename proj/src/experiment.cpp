#include "mabsim/experiment.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <set>
#include <thread>

#include "json.hpp"
#include "mabsim/rng.hpp"

namespace mabsim {

using Json = nlohmann::ordered_json;

std::string_view algorithm_name(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::Proposed: return "proposed";
    case AlgorithmKind::Existing: return "existing";
    case AlgorithmKind::NoBlocking: return "no_blocking";
    case AlgorithmKind::NoCommunication: return "no_communication";
  }
  return "unknown";
}

AlgorithmKind parse_algorithm(std::string_view name) {
  for (auto k : {AlgorithmKind::Proposed, AlgorithmKind::Existing, AlgorithmKind::NoBlocking,
                 AlgorithmKind::NoCommunication}) {
    if (algorithm_name(k) == name) return k;
  }
  throw ConfigError("unknown algorithm \"" + std::string(name) + "\"");
}

int ExperimentConfig::num_arms_resolved() const {
  return arm_model == "synthetic" ? num_arms : static_cast<int>(means.size());
}

namespace {

const std::set<std::string> kKnownFields = {
    "seed",        "trials",         "horizon",         "n_honest",   "n_malicious",
    "graph",       "p",              "arm_model",       "K",          "best_mean",
    "second_mean", "other_mean_low", "other_mean_high", "means",      "means_csv",
    "means_source", "reward",        "sticky_size",     "alpha",      "beta",
    "eta",         "proposed_schedule", "rho1",         "rho2",       "strategies",
    "algorithms",  "checkpoints",    "num_checkpoints", "output_dir", "parallelism"};

[[noreturn]] void field_error(const std::string& name, const std::string& what) {
  throw ConfigError("field \"" + name + "\": " + what);
}

const Json& require(const Json& doc, const std::string& name) {
  auto it = doc.find(name);
  if (it == doc.end()) throw ConfigError("missing required field \"" + name + "\"");
  return *it;
}

double get_number(const Json& doc, const std::string& name) {
  const Json& v = require(doc, name);
  if (!v.is_number()) field_error(name, "must be a number");
  return v.get<double>();
}

std::int64_t get_integer(const Json& doc, const std::string& name, std::int64_t min) {
  const Json& v = require(doc, name);
  if (!v.is_number_integer()) field_error(name, "must be an integer");
  const auto x = v.get<std::int64_t>();
  if (x < min) field_error(name, "must be >= " + std::to_string(min));
  return x;
}

std::string get_string(const Json& doc, const std::string& name) {
  const Json& v = require(doc, name);
  if (!v.is_string()) field_error(name, "must be a string");
  return v.get<std::string>();
}

std::vector<std::string> get_string_list(const Json& doc, const std::string& name) {
  const Json& v = require(doc, name);
  if (!v.is_array() || v.empty()) field_error(name, "must be a non-empty list");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) field_error(name, "entries must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::vector<double> get_number_list(const Json& doc, const std::string& name) {
  const Json& v = require(doc, name);
  if (!v.is_array() || v.empty()) field_error(name, "must be a non-empty list");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) field_error(name, "entries must be numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

template <typename T, typename Parse>
std::vector<T> parse_names(const Json& doc, const std::string& name, Parse parse) {
  std::vector<T> out;
  for (const auto& s : get_string_list(doc, name)) {
    try {
      out.push_back(parse(s));
    } catch (const ConfigError& e) {
      field_error(name, e.what());
    }
  }
  return out;
}

void validate(const ExperimentConfig& c) {
  if (c.graph != "complete" && c.graph != "gnp" && c.graph != "line") {
    field_error("graph", "must be one of complete, gnp, line");
  }
  for (double p : c.p) {
    if (!(p > 0.0 && p <= 1.0)) field_error("p", "entries must lie in (0,1]");
  }
  const int k_arms = c.num_arms_resolved();
  if (k_arms < 3) field_error(c.arm_model == "synthetic" ? "K" : "means", "need at least 3 arms");
  if (c.sticky_size < 1 || c.sticky_size > k_arms - 2) field_error("sticky_size", "must satisfy 1 <= S <= K-2");
  if (!(c.alpha > 0.0)) field_error("alpha", "must be > 0");
  if (!(c.beta > 1.0)) field_error("beta", "must be > 1");
  if (!(c.eta > 1.0)) field_error("eta", "must be > 1");
  for (auto s : c.strategies) {
    if (s == StrategyKind::BadInstance) {
      field_error("strategies", "bad_instance is only available through the bad-instance command");
    }
  }
  if (c.arm_model == "explicit") {
    try {
      BanditInstance::from_means(c.means, c.reward);
    } catch (const ConfigError& e) {
      field_error("means", e.what());
    }
  } else {
    if (!(c.best_mean > c.second_mean)) field_error("best_mean", "must exceed second_mean");
    if (!(c.other_mean_low <= c.other_mean_high && c.other_mean_high <= c.second_mean &&
          c.other_mean_low >= 0.0)) {
      field_error("other_mean_high", "need 0 <= other_mean_low <= other_mean_high <= second_mean");
    }
    if (!(c.best_mean <= 1.0 && c.second_mean >= 0.0)) field_error("best_mean", "means must lie in [0,1]");
  }
}

}  // namespace

ExperimentConfig parse_experiment(std::string_view json_text, const std::string& base_dir) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (doc.is_object() && doc.contains("config") && doc.contains("version")) doc = doc["config"];
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (!kKnownFields.count(key)) throw ConfigError("unknown field \"" + key + "\"");
  }

  ExperimentConfig c;
  {
    const Json& v = require(doc, "seed");
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      field_error("seed", "must be a non-negative integer");
    }
    c.seed = v.get<std::uint64_t>();
  }
  c.trials = static_cast<int>(get_integer(doc, "trials", 1));
  c.horizon = get_integer(doc, "horizon", 1);
  c.n_honest = static_cast<int>(get_integer(doc, "n_honest", 1));
  c.n_malicious = static_cast<int>(get_integer(doc, "n_malicious", 0));
  c.graph = get_string(doc, "graph");
  if (c.graph == "gnp") {
    c.p = get_number_list(doc, "p");
  } else {
    if (doc.contains("p")) field_error("p", "only valid with graph \"gnp\"");
    c.p = {1.0};
  }

  c.arm_model = get_string(doc, "arm_model");
  if (c.arm_model == "synthetic") {
    c.num_arms = static_cast<int>(get_integer(doc, "K", 3));
    c.best_mean = get_number(doc, "best_mean");
    c.second_mean = get_number(doc, "second_mean");
    c.other_mean_low = get_number(doc, "other_mean_low");
    c.other_mean_high = get_number(doc, "other_mean_high");
  } else if (c.arm_model == "explicit") {
    c.means = get_number_list(doc, "means");
    if (doc.contains("means_source")) c.means_source = get_string(doc, "means_source");
  } else if (c.arm_model == "csv") {
    std::filesystem::path path = get_string(doc, "means_csv");
    if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
    c.means = load_means_csv(path);
    c.means_source = get_string(doc, "means_csv");
    c.arm_model = "explicit";
  } else {
    field_error("arm_model", "must be one of synthetic, explicit, csv");
  }
  const auto reward = get_string(doc, "reward");
  if (reward == "bernoulli") {
    c.reward = RewardKind::Bernoulli;
  } else if (reward == "deterministic") {
    c.reward = RewardKind::Deterministic;
  } else {
    field_error("reward", "must be bernoulli or deterministic");
  }

  c.sticky_size = static_cast<int>(get_integer(doc, "sticky_size", 1));
  c.alpha = get_number(doc, "alpha");
  c.beta = get_number(doc, "beta");
  c.eta = get_number(doc, "eta");
  c.strategies = parse_names<StrategyKind>(doc, "strategies", parse_strategy);
  c.algorithms = parse_names<AlgorithmKind>(doc, "algorithms", parse_algorithm);
  if (std::count(c.algorithms.begin(), c.algorithms.end(), AlgorithmKind::Proposed) > 0) {
    const auto sched = get_string(doc, "proposed_schedule");
    if (sched == "experiment") {
      c.proposed_schedule = ProposedScheduleKind::Experiment;
    } else if (sched == "theory") {
      c.proposed_schedule = ProposedScheduleKind::Theory;
      c.rho1 = get_number(doc, "rho1");
      c.rho2 = get_number(doc, "rho2");
    } else {
      field_error("proposed_schedule", "must be experiment or theory");
    }
  }

  if (doc.contains("checkpoints")) {
    const Json& v = doc["checkpoints"];
    if (!v.is_array() || v.empty()) field_error("checkpoints", "must be a non-empty list");
    for (const auto& e : v) {
      if (!e.is_number_integer()) field_error("checkpoints", "entries must be integers");
      c.checkpoints.push_back(e.get<TimeStep>());
    }
    for (std::size_t i = 0; i < c.checkpoints.size(); ++i) {
      if (c.checkpoints[i] < 1 || c.checkpoints[i] > c.horizon ||
          (i > 0 && c.checkpoints[i] <= c.checkpoints[i - 1])) {
        field_error("checkpoints", "must be strictly increasing within [1, horizon]");
      }
    }
  }
  if (doc.contains("num_checkpoints")) c.num_checkpoints = static_cast<int>(get_integer(doc, "num_checkpoints", 1));
  if (doc.contains("parallelism")) c.parallelism = static_cast<int>(get_integer(doc, "parallelism", 1));
  c.output_dir = get_string(doc, "output_dir");
  validate(c);
  return c;
}

std::string experiment_to_json(const ExperimentConfig& c) {
  Json doc;
  doc["seed"] = c.seed;
  doc["trials"] = c.trials;
  doc["horizon"] = c.horizon;
  doc["n_honest"] = c.n_honest;
  doc["n_malicious"] = c.n_malicious;
  doc["graph"] = c.graph;
  if (c.graph == "gnp") doc["p"] = c.p;
  doc["arm_model"] = c.arm_model;
  if (c.arm_model == "synthetic") {
    doc["K"] = c.num_arms;
    doc["best_mean"] = c.best_mean;
    doc["second_mean"] = c.second_mean;
    doc["other_mean_low"] = c.other_mean_low;
    doc["other_mean_high"] = c.other_mean_high;
  } else {
    doc["means"] = c.means;
    if (!c.means_source.empty()) doc["means_source"] = c.means_source;
  }
  doc["reward"] = c.reward == RewardKind::Bernoulli ? "bernoulli" : "deterministic";
  doc["sticky_size"] = c.sticky_size;
  doc["alpha"] = c.alpha;
  doc["beta"] = c.beta;
  doc["eta"] = c.eta;
  if (std::count(c.algorithms.begin(), c.algorithms.end(), AlgorithmKind::Proposed) > 0) {
    if (c.proposed_schedule == ProposedScheduleKind::Theory) {
      doc["proposed_schedule"] = "theory";
      doc["rho1"] = c.rho1;
      doc["rho2"] = c.rho2;
    } else {
      doc["proposed_schedule"] = "experiment";
    }
  }
  Json strategies = Json::array();
  for (auto s : c.strategies) strategies.push_back(std::string(strategy_name(s)));
  doc["strategies"] = strategies;
  Json algorithms = Json::array();
  for (auto a : c.algorithms) algorithms.push_back(std::string(algorithm_name(a)));
  doc["algorithms"] = algorithms;
  if (!c.checkpoints.empty()) doc["checkpoints"] = c.checkpoints;
  doc["num_checkpoints"] = c.num_checkpoints;
  doc["output_dir"] = c.output_dir;
  return doc.dump(2);
}

TrialConfig cell_config(const ExperimentConfig& c, AlgorithmKind algorithm, StrategyKind strategy,
                        double p) {
  TrialConfig t;
  t.network.n_honest = c.n_honest;
  t.network.n_malicious = c.n_malicious;
  t.network.p = p;
  if (c.graph == "complete") {
    t.network.kind = NetworkSpec::Kind::Complete;
  } else if (c.graph == "line") {
    t.network.kind = NetworkSpec::Kind::Line;
  } else {
    t.network.kind = NetworkSpec::Kind::Gnp;
  }

  t.bandit.reward = c.reward;
  if (c.arm_model == "synthetic") {
    t.bandit.kind = BanditSpec::Kind::Synthetic;
    t.bandit.num_arms = c.num_arms;
    t.bandit.best_mean = c.best_mean;
    t.bandit.second_mean = c.second_mean;
    t.bandit.other_low = c.other_mean_low;
    t.bandit.other_high = c.other_mean_high;
  } else {
    t.bandit.kind = BanditSpec::Kind::Explicit;
    t.bandit.means = c.means;
  }
  t.sticky.kind = StickySpec::Kind::Sampled;
  t.sticky.size = c.sticky_size;

  t.algorithm.alpha = c.alpha;
  t.algorithm.beta = c.beta;
  switch (algorithm) {
    case AlgorithmKind::Proposed: {
      ProposedRuleParams params;
      params.eta = c.eta;
      params.kind = c.proposed_schedule;
      params.rho1 = c.rho1;
      params.rho2 = c.rho2;
      params.num_arms = c.num_arms_resolved();
      params.sticky_size = c.sticky_size;
      params.alpha = c.alpha;
      t.algorithm.blocking = BlockingPolicy::relaxed(params);
      break;
    }
    case AlgorithmKind::Existing: t.algorithm.blocking = BlockingPolicy::existing(c.eta); break;
    case AlgorithmKind::NoBlocking: t.algorithm.blocking = BlockingPolicy::none(); break;
    case AlgorithmKind::NoCommunication:
      t.algorithm.blocking = BlockingPolicy::none();
      t.algorithm.communicate = false;
      break;
  }
  t.adversary = AdversaryStrategy::of(strategy);
  t.horizon = c.horizon;
  t.checkpoints = c.checkpoints.empty() ? log_spaced_checkpoints(c.horizon, c.num_checkpoints)
                                        : c.checkpoints;
  return t;
}

ExperimentResult run_experiment(const ExperimentConfig& config, int parallelism) {
  ExperimentResult out;
  for (int k = 0; k < config.trials; ++k) out.trial_seeds.push_back(split_seed(config.seed, k));

  std::vector<TrialConfig> templates;
  // The no-communication baseline ignores the graph and the adversary, so its
  // trials are computed once and shared by every (strategy, p) cell.
  std::vector<std::size_t> source_cell;
  std::optional<std::size_t> isolated_cell;
  for (auto a : config.algorithms) {
    for (auto s : config.strategies) {
      for (double p : config.p) {
        CellResult cell;
        cell.algorithm = a;
        cell.strategy = s;
        cell.p = p;
        cell.trials.resize(config.trials);
        const std::size_t idx = out.cells.size();
        if (a == AlgorithmKind::NoCommunication) {
          if (!isolated_cell) isolated_cell = idx;
          source_cell.push_back(*isolated_cell);
        } else {
          source_cell.push_back(idx);
        }
        out.cells.push_back(std::move(cell));
        templates.push_back(cell_config(config, a, s, p));
      }
    }
  }

  std::vector<std::size_t> work;
  for (std::size_t c = 0; c < out.cells.size(); ++c) {
    if (source_cell[c] == c) work.push_back(c);
  }
  const auto n_trials = static_cast<std::size_t>(config.trials);
  parallel_for(work.size() * n_trials, parallelism, [&](std::size_t task) {
    const std::size_t c = work[task / n_trials];
    const std::size_t k = task % n_trials;
    TrialConfig tc = templates[c];
    tc.seed = out.trial_seeds[k];
    out.cells[c].trials[k] = run_trial(tc);
  });
  for (std::size_t c = 0; c < out.cells.size(); ++c) {
    if (source_cell[c] != c) out.cells[c].trials = out.cells[source_cell[c]].trials;
    out.cells[c].summary = summarize(out.cells[c].trials);
  }
  return out;
}

int default_parallelism() {
  if (const char* env = std::getenv("MABSIM_PARALLELISM")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

}  // namespace mabsim
