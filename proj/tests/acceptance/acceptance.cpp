// Acceptance suite: one PASS/FAIL line per criterion A1..A9.
//
// Usage: acceptance [A1 A2 ...]   (default: all)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../support/oracles.hpp"
#include "mabsim/cascade.hpp"
#include "mabsim/commands.hpp"
#include "mabsim/csv.hpp"
#include "mabsim/experiment.hpp"
#include "mabsim/rumor.hpp"

using namespace mabsim;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Trials whose decomposition flag was observed anywhere in the suite.
struct DecompositionTally {
  long trials = 0;
  long exact = 0;
  void add(const TrialResult& r) {
    ++trials;
    if (r.decomposition_exact) ++exact;
  }
};

DecompositionTally g_tally;

std::string fmt(double x, int prec = 1) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Outcome a1() {
  const auto start = std::chrono::steady_clock::now();
  const auto e = oracle::check_existing_table();
  const auto p = oracle::check_proposed_table();
  const double secs = seconds_since(start);
  Outcome o;
  o.pass = e.cases == 8 && e.agree == 8 && p.cases == 8 && p.agree == 8 && secs < 1.0;
  o.detail = "existing " + std::to_string(e.agree) + "/" + std::to_string(e.cases) + ", proposed " +
             std::to_string(p.agree) + "/" + std::to_string(p.cases) + ", " + fmt(secs, 3) + " s";
  for (const auto& m : e.mismatches) o.detail += "; " + m;
  for (const auto& m : p.mismatches) o.detail += "; " + m;
  return o;
}

Outcome a2() {
  const auto start = std::chrono::steady_clock::now();
  const auto r = oracle::oracle_vs_engine(100, 0xA2);
  const double secs = seconds_since(start);
  Outcome o;
  o.pass = r.instances == 100 && r.predictions > 0 && r.exact == r.predictions && secs < 10.0;
  o.detail = std::to_string(r.instances) + " instances, " + std::to_string(r.exact) + "/" +
             std::to_string(r.predictions) + " phase predictions exact, " + fmt(secs, 2) + " s";
  if (!r.mismatches.empty()) o.detail += "; first mismatch " + r.mismatches.front();
  return o;
}

Outcome a3() {
  const auto start = std::chrono::steady_clock::now();
  Outcome o{true, ""};
  for (int n : {4, 6}) {
    for (auto rule : {CascadeRule::Existing, CascadeRule::Proposed}) {
      const auto rep = forced_cascade_check(n, rule);
      const std::string name = std::string(rule == CascadeRule::Existing ? "existing" : "proposed") +
                               " n=" + std::to_string(n);
      if (!rep.passed()) {
        o.pass = false;
        o.detail += name + " FAILED (" + rep.violations.front() + "); ";
      } else if (rule == CascadeRule::Existing) {
        o.detail += name + " unblock " + std::to_string(*rep.observed_unblock) + "; ";
      } else {
        o.detail += name + " no honest block at " + std::to_string(rep.check_phase) + "; ";
      }
      g_tally.add(run_trial(forced_cascade_config(n, rule)));
    }
  }
  const double secs = seconds_since(start);
  if (secs >= 30.0) o.pass = false;
  o.detail += fmt(secs, 1) + " s";
  return o;
}

// Dedicated batch; trials from the other criteria are added to the same tally.
Outcome a4() {
  const ExperimentConfig base = parse_experiment(R"({
    "seed": 44, "trials": 10, "horizon": 20000, "n_honest": 12, "n_malicious": 4,
    "graph": "gnp", "p": [1, 0.5], "arm_model": "synthetic", "K": 30,
    "best_mean": 0.9, "second_mean": 0.8, "other_mean_low": 0.0, "other_mean_high": 0.8,
    "reward": "bernoulli", "sticky_size": 2, "alpha": 4, "beta": 2, "eta": 2,
    "proposed_schedule": "experiment",
    "strategies": ["naive", "smart", "mixed_naive", "mixed_smart"],
    "algorithms": ["proposed", "existing", "no_blocking", "no_communication"],
    "num_checkpoints": 40, "output_dir": "unused"})");
  const auto result = run_experiment(base, default_parallelism());
  for (const auto& cell : result.cells) {
    for (const auto& t : cell.trials) g_tally.add(t);
  }
  Outcome o;
  o.pass = g_tally.trials > 0 && g_tally.exact == g_tally.trials;
  o.detail = std::to_string(g_tally.exact) + "/" + std::to_string(g_tally.trials) +
             " trials exact at every checkpoint";
  return o;
}

Outcome a5() {
  const auto start = std::chrono::steady_clock::now();
  // Largest gaps available to a non-degenerate Bernoulli instance: Delta_k = 0.9.
  std::vector<double> means{0.95};
  for (int k = 2; k <= 10; ++k) means.push_back(0.05);
  const TimeStep horizon = 100000;
  const TimeStep root = 316;  // floor(sqrt(T))

  TrialConfig c;
  c.network.kind = NetworkSpec::Kind::Complete;
  c.network.n_honest = 1;
  c.bandit.kind = BanditSpec::Kind::Explicit;
  c.bandit.reward = RewardKind::Bernoulli;
  c.bandit.means = means;
  c.sticky.size = 1;
  c.algorithm.alpha = 4.0;
  c.algorithm.communicate = false;
  c.horizon = horizon;
  c.checkpoints = {root, horizon};
  const auto batch = run_trials(c, 50, 0xA5, default_parallelism());
  for (const auto& t : batch.trials) g_tally.add(t);

  double inv_gap_sum = 0.0;
  for (std::size_t k = 1; k < means.size(); ++k) inv_gap_sum += 1.0 / (means[0] - means[k]);
  const double bound = 4.0 * 4.0 * std::log(static_cast<double>(horizon)) * inv_gap_sum + 200.0;
  const double at_root = batch.summary[0].mean;
  const double at_t = batch.summary[1].mean;
  const double ratio = at_t / at_root;
  const double secs = seconds_since(start);

  Outcome o;
  const bool bound_ok = at_t <= bound;
  const bool ratio_ok = ratio <= 2.5;
  o.pass = bound_ok && ratio_ok && secs < 60.0;
  o.detail = "mean regret(T) " + fmt(at_t) + (bound_ok ? " <= " : " > ") + "bound " + fmt(bound) +
             "; regret(T)/regret(sqrt T) = " + fmt(at_t) + "/" + fmt(at_root) + " = " + fmt(ratio, 2) +
             (ratio_ok ? " <= 2.5" : " > 2.5") + "; " + fmt(secs, 1) + " s";
  return o;
}

Outcome a6() {
  const auto start = std::chrono::steady_clock::now();
  const fs::path cfg = fs::path(MABSIM_SOURCE_DIR) / "configs" / "synthetic_reduced.json";
  const ExperimentConfig config = parse_experiment(read_file(cfg), cfg.parent_path().string());
  const auto result = run_experiment(config, default_parallelism());

  std::map<std::tuple<AlgorithmKind, StrategyKind, double>, double> final_mean;
  for (const auto& cell : result.cells) {
    final_mean[{cell.algorithm, cell.strategy, cell.p}] = cell.summary.back().mean;
    for (const auto& t : cell.trials) g_tally.add(t);
  }

  Outcome o{true, ""};
  for (auto s : config.strategies) {
    for (double p : config.p) {
      const double prop = final_mean[{AlgorithmKind::Proposed, s, p}];
      const double nob = final_mean[{AlgorithmKind::NoBlocking, s, p}];
      const bool ok = prop < nob;
      if (!ok) o.pass = false;
      o.detail += std::string(strategy_name(s)) + " p=" + format_double(p) + ": proposed " + fmt(prop) +
                  (ok ? " < " : " >= ") + "no_blocking " + fmt(nob) + "; ";
    }
  }
  const double ex = final_mean[{AlgorithmKind::Existing, StrategyKind::Smart, 0.25}];
  const double nc = final_mean[{AlgorithmKind::NoCommunication, StrategyKind::Smart, 0.25}];
  const bool inverted = ex > nc;
  if (!inverted) o.pass = false;
  const double secs = seconds_since(start);
  if (secs >= 1800.0) o.pass = false;
  o.detail += "smart p=0.25: existing " + fmt(ex) + (inverted ? " > " : " <= ") + "no_communication " +
              fmt(nc) + "; " + fmt(secs, 0) + " s";
  return o;
}

double mean_tau(const Network& net, int trials, std::uint64_t seed) {
  double sum = 0.0;
  for (int k = 0; k < trials; ++k) {
    Rng rng(split_seed(seed, static_cast<std::uint64_t>(k)));
    const auto r = spreading_time(net, 1.0, rng, 1'000'000);
    if (r.capped) return std::nan("");
    sum += static_cast<double>(r.steps);
  }
  return sum / trials;
}

Outcome a7() {
  const auto start = std::chrono::steady_clock::now();
  Outcome o{true, ""};
  int held = 0;
  const auto complete10 = gen_complete(10, 0);
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng rng(split_seed(0xA7, s));
    const auto run = coupled_run(complete10, rng, 80, 0.5);
    if (!first_domination_violation(run)) ++held;
  }
  if (held != 100) o.pass = false;
  o.detail = "domination " + std::to_string(held) + "/100; ";

  const int trials = 400;
  std::map<int, double> complete, line;
  for (int n : {16, 32, 64, 128}) {
    complete[n] = mean_tau(gen_complete(n, 0), trials, 0x7C00 + n);
    line[n] = mean_tau(gen_line(n), trials, 0x7100 + n);
  }
  for (int n : {16, 32, 64}) {
    const double rc = complete[2 * n] / complete[n];
    const double rl = line[2 * n] / line[n];
    const bool ok_c = rc <= 1.5;
    const bool ok_l = rl >= 1.5 && rl <= 2.5;
    if (!ok_c || !ok_l) o.pass = false;
    o.detail += "n=" + std::to_string(n) + "->" + std::to_string(2 * n) + " complete " + fmt(rc, 3) +
                ", line " + fmt(rl, 3) + "; ";
  }
  const double secs = seconds_since(start);
  if (secs >= 120.0) o.pass = false;
  o.detail += std::to_string(trials) + " trials per point, " + fmt(secs, 1) + " s";
  return o;
}

Outcome a8() {
  const fs::path dir = fs::temp_directory_path() / "mabsim_acceptance_a8";
  fs::remove_all(dir);
  fs::create_directories(dir);
  write_file_atomic(dir / "config.json", R"({
    "seed": 808, "trials": 6, "horizon": 5000, "n_honest": 10, "n_malicious": 3,
    "graph": "gnp", "p": [1, 0.5], "arm_model": "synthetic", "K": 20,
    "best_mean": 0.95, "second_mean": 0.85, "other_mean_low": 0.0, "other_mean_high": 0.85,
    "reward": "bernoulli", "sticky_size": 2, "alpha": 4, "beta": 2, "eta": 2,
    "proposed_schedule": "experiment", "strategies": ["naive", "smart"],
    "algorithms": ["proposed", "existing", "no_blocking", "no_communication"],
    "num_checkpoints": 50, "output_dir": "first"})");
  std::ostringstream log;
  cmd_run({dir / "config.json", dir / "first", 1}, log);
  cmd_run({dir / "first" / "manifest.json", dir / "p1", 1}, log);
  cmd_run({dir / "first" / "manifest.json", dir / "p8", 8}, log);
  const auto a = read_file(dir / "first" / "results.csv");
  const auto b = read_file(dir / "p1" / "results.csv");
  const auto c = read_file(dir / "p8" / "results.csv");
  Outcome o;
  o.pass = !a.empty() && a == b && a == c;
  o.detail = "results.csv " + std::to_string(a.size()) + " bytes; manifest replay at parallelism 1 " +
             (a == b ? "identical" : "DIFFERS") + ", at parallelism 8 " + (a == c ? "identical" : "DIFFERS");
  fs::remove_all(dir);
  return o;
}

// Direct reading of the parameter constraints.
std::set<std::string> violated(double alpha, double beta, double eta, double rho1, double rho2) {
  std::set<std::string> v;
  if (!(beta > 1)) v.insert("beta > 1");
  if (!(eta > 1)) v.insert("eta > 1");
  if (!(rho1 > 0)) v.insert("rho1 > 0");
  if (!(rho1 <= 1 / eta)) v.insert("rho1 <= 1/eta");
  if (!(rho1 > 0 && alpha > 1.5 + 1 / (2 * beta) + 1 / (2 * rho1 * rho1))) {
    v.insert("alpha > 3/2 + 1/(2 beta) + 1/(2 rho1^2)");
  }
  if (!(2 * alpha - 3 > 0 && rho2 > 1 / (2 * alpha - 3))) v.insert("rho2 > 1/(2 alpha - 3)");
  if (!(rho2 < rho1 * (beta - 1))) v.insert("rho2 < rho1 (beta - 1)");
  return v;
}

Outcome a9() {
  struct Mutation {
    const char* label;
    double alpha, beta, eta, rho1, rho2;
    const char* target;  // constraint the mutation is aimed at
  };
  const double third = 1.0 / 3.0;
  const std::vector<Mutation> cases = {
      {"beta=0.9", 4, 0.9, 2, 0.5, third, "beta > 1"},
      {"eta=1", 4, 2, 1, 0.5, third, "eta > 1"},
      {"rho1=0", 4, 2, 2, 0.0, third, "rho1 > 0"},
      {"rho1=0.6", 4, 2, 2, 0.6, third, "rho1 <= 1/eta"},
      {"alpha=3.75", 3.75, 2, 2, 0.5, third, "alpha > 3/2 + 1/(2 beta) + 1/(2 rho1^2)"},
      {"rho2=0.2", 4, 2, 2, 0.5, 0.2, "rho2 > 1/(2 alpha - 3)"},
      {"rho2=0.5", 4, 2, 2, 0.5, 0.5, "rho2 < rho1 (beta - 1)"},
  };
  Outcome o{true, ""};
  const auto base = validate_params(4, 2, 2, 0.5, third);
  if (!base.valid || !base.violations.empty()) o.pass = false;
  o.detail = std::string("(4, 2, 2, 1/2, 1/3) ") + (base.valid ? "valid" : "INVALID") + "; ";
  for (const auto& m : cases) {
    const auto v = validate_params(m.alpha, m.beta, m.eta, m.rho1, m.rho2);
    const std::set<std::string> got(v.violations.begin(), v.violations.end());
    const auto want = violated(m.alpha, m.beta, m.eta, m.rho1, m.rho2);
    const bool ok = !v.valid && got == want && got.count(m.target) == 1;
    if (!ok) o.pass = false;
    o.detail += std::string(m.label) + (ok ? " rejected" : " WRONG") + " (" + std::to_string(got.size()) +
                " named); ";
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> all = {
      {"A1", a1}, {"A2", a2}, {"A3", a3}, {"A5", a5}, {"A6", a6},
      {"A7", a7}, {"A8", a8}, {"A9", a9}, {"A4", a4},  // A4 last: it tallies every trial above
  };
  std::set<std::string> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(argv[i]);

  std::map<std::string, Outcome> results;
  for (const auto& [id, fn] : all) {
    if (!wanted.empty() && !wanted.count(id)) continue;
    std::cerr << "running " << id << "...\n";
    try {
      results[id] = fn();
    } catch (const std::exception& e) {
      results[id] = Outcome{false, std::string("exception: ") + e.what()};
    }
  }

  int failed = 0;
  for (const auto& [id, o] : results) {  // map order: A1..A9
    std::cout << id << " " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << "\n";
    if (!o.pass) ++failed;
  }
  std::cout << results.size() - failed << "/" << results.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
