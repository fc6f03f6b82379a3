#include "mabsim/commands.hpp"

#include <filesystem>
#include <ostream>

#include "json.hpp"
#include "mabsim/csv.hpp"
#include "mabsim/rumor.hpp"

namespace mabsim {

using Json = nlohmann::ordered_json;

namespace {

std::string cell_prefix(const CellResult& cell) {
  return std::string(algorithm_name(cell.algorithm)) + "," + std::string(strategy_name(cell.strategy)) +
         "," + format_double(cell.p);
}

void emit(const std::optional<std::filesystem::path>& out, const std::string& text, std::ostream& log) {
  if (out) {
    if (out->has_parent_path()) std::filesystem::create_directories(out->parent_path());
    write_file_atomic(*out, text);
  } else {
    log << text;
  }
}

std::string_view rule_name(CascadeRule rule) {
  return rule == CascadeRule::Existing ? "existing" : "proposed";
}

}  // namespace

std::string results_csv(const ExperimentResult& result) {
  std::string out = "trial,algorithm,strategy,p,checkpoint_t,mean_agent_regret\n";
  for (const auto& cell : result.cells) {
    const std::string prefix = cell_prefix(cell);
    for (std::size_t k = 0; k < cell.trials.size(); ++k) {
      const auto& tr = cell.trials[k];
      for (std::size_t c = 0; c < tr.checkpoints.size(); ++c) {
        out += csv_row({std::to_string(k), prefix, std::to_string(tr.checkpoints[c]),
                        format_double(tr.mean_agent_regret(c))});
      }
    }
  }
  return out;
}

std::string summary_csv(const ExperimentResult& result) {
  std::string out = "algorithm,strategy,p,checkpoint_t,mean,std\n";
  for (const auto& cell : result.cells) {
    const std::string prefix = cell_prefix(cell);
    for (const auto& row : cell.summary) {
      out += csv_row({prefix, std::to_string(row.t), format_double(row.mean), format_double(row.std)});
    }
  }
  return out;
}

std::string events_csv(const ExperimentResult& result) {
  std::string out = "trial,algorithm,strategy,p,phase,blocker,blocked,unblock_phase,blocked_is_honest\n";
  for (const auto& cell : result.cells) {
    const std::string prefix = cell_prefix(cell);
    for (std::size_t k = 0; k < cell.trials.size(); ++k) {
      for (const auto& e : cell.trials[k].blocks) {
        out += csv_row({std::to_string(k), prefix, std::to_string(e.phase), std::to_string(e.blocker),
                        std::to_string(e.blocked), std::to_string(e.unblock_phase),
                        e.blocked_is_honest ? "1" : "0"});
      }
    }
  }
  return out;
}

std::string manifest_json(const ExperimentConfig& config, const ExperimentResult& result) {
  Json doc;
  doc["version"] = kVersion;
  doc["config"] = Json::parse(experiment_to_json(config));
  doc["trial_seeds"] = result.trial_seeds;
  doc["outputs"] = {"results.csv", "summary.csv", "events.csv"};
  return doc.dump(2) + "\n";
}

int cmd_run(const RunOptions& opts, std::ostream& log) {
  const std::string text = read_file(opts.config);
  const auto base = opts.config.has_parent_path() ? opts.config.parent_path().string() : ".";
  ExperimentConfig config = parse_experiment(text, base);
  if (opts.out) config.output_dir = opts.out->string();
  int parallelism = default_parallelism();
  if (config.parallelism > 0) parallelism = config.parallelism;
  if (opts.parallelism) parallelism = *opts.parallelism;

  const ExperimentResult result = run_experiment(config, parallelism);
  const std::filesystem::path dir = config.output_dir;
  std::filesystem::create_directories(dir);
  write_file_atomic(dir / "results.csv", results_csv(result));
  write_file_atomic(dir / "summary.csv", summary_csv(result));
  write_file_atomic(dir / "events.csv", events_csv(result));
  write_file_atomic(dir / "manifest.json", manifest_json(config, result));
  log << "wrote " << result.cells.size() << " cells x " << config.trials << " trials to "
      << dir.string() << "\n";
  return exit_code::kOk;
}

std::string cascade_report_json(const CascadeReport& r) {
  Json doc;
  doc["n"] = r.n;
  doc["rule"] = rule_name(r.rule);
  doc["j1"] = r.j1;
  doc["check_phase"] = r.check_phase;
  doc["horizon"] = r.horizon;
  Json a;
  a["passed"] = r.right_half_bad;
  a["min_active_arm"] = r.min_right_active;
  a["first_violation_phase"] = r.first_right_violation ? Json(*r.first_right_violation) : Json(nullptr);
  Json b;
  b["passed"] = r.check_block;
  b["block_expected"] = r.rule == CascadeRule::Existing;
  b["expected_unblock_phase"] = r.expected_unblock;
  b["observed_unblock_phase"] = r.observed_unblock ? Json(*r.observed_unblock) : Json(nullptr);
  b["honest_blocks_at_check_phase"] = r.honest_blocks_at_check;
  Json c;
  c["passed"] = r.hub_never_blocked;
  c["hub_blocks"] = r.hub_blocks;
  doc["right_half_bad_arms"] = a;
  doc["cascade_block"] = b;
  doc["hub_never_blocked"] = c;
  Json events = Json::array();
  for (const auto& e : r.honest_blocks) {
    events.push_back({{"phase", e.phase}, {"blocker", e.blocker}, {"blocked", e.blocked},
                      {"unblock_phase", e.unblock_phase}});
  }
  doc["honest_blocks"] = events;
  doc["violations"] = r.violations;
  doc["passed"] = r.passed();
  return doc.dump(2) + "\n";
}

int cmd_bad_instance(int n, CascadeRule rule, const std::optional<std::filesystem::path>& out,
                     std::uint64_t seed, std::ostream& log) {
  const CascadeReport report = forced_cascade_check(n, rule, seed);
  emit(out, cascade_report_json(report), log);
  return report.passed() ? exit_code::kOk : exit_code::kAssertion;
}

std::string rumor_csv(const RumorOptions& opts, double upsilon, const std::vector<SpreadResult>& runs) {
  const std::string prefix = opts.graph + "," + std::to_string(opts.n) + "," + format_double(upsilon);
  std::string out = "graph,n,upsilon,trial,tau,capped\n";
  double sum = 0.0;
  int finished = 0;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const auto& r = runs[k];
    out += csv_row({prefix, std::to_string(k), std::to_string(r.steps), r.capped ? "1" : "0"});
    if (!r.capped) {
      sum += static_cast<double>(r.steps);
      ++finished;
    }
  }
  const int capped = static_cast<int>(runs.size()) - finished;
  out += csv_row({prefix, "mean", finished > 0 ? format_double(sum / finished) : "nan",
                  std::to_string(capped)});
  return out;
}

int cmd_rumor(const RumorOptions& opts, std::ostream& log) {
  if (opts.trials < 1) throw ConfigError("trials must be >= 1");
  Network net = [&] {
    if (opts.graph == "complete") return gen_complete(opts.n, opts.m);
    if (opts.graph == "line") return gen_line(opts.n, opts.m);
    if (opts.graph == "gnp") {
      Rng rng(split_seed(opts.seed, stream::kGraph));
      return gen_gnp(opts.n, opts.m, opts.p, rng);
    }
    throw ConfigError("unknown graph \"" + opts.graph + "\"");
  }();
  const double upsilon = opts.upsilon ? *opts.upsilon : degree_summary(net).upsilon;
  std::vector<SpreadResult> runs;
  for (int k = 0; k < opts.trials; ++k) {
    Rng rng(split_seed(opts.seed, static_cast<std::uint64_t>(k)));
    runs.push_back(spreading_time(net, upsilon, rng, opts.cap));
  }
  emit(opts.out, rumor_csv(opts, upsilon, runs), log);
  return exit_code::kOk;
}

int cmd_validate_params(double alpha, double beta, double eta, double rho1, double rho2,
                        std::ostream& out) {
  const ParamVerdict v = validate_params(alpha, beta, eta, rho1, rho2);
  out << (v.valid ? "valid" : "invalid") << "\n";
  for (const auto& s : v.violations) out << "violated: " << s << "\n";
  return v.valid ? exit_code::kOk : exit_code::kConfig;
}

}  // namespace mabsim
