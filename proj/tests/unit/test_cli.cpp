#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "mabsim/commands.hpp"
#include "mabsim/csv.hpp"

using namespace mabsim;
namespace fs = std::filesystem;

namespace {

const char* kSmallConfig = R"({
  "seed": 5,
  "trials": 3,
  "horizon": 400,
  "n_honest": 5,
  "n_malicious": 2,
  "graph": "gnp",
  "p": [1, 0.5],
  "arm_model": "synthetic",
  "K": 10,
  "best_mean": 0.9,
  "second_mean": 0.8,
  "other_mean_low": 0.0,
  "other_mean_high": 0.8,
  "reward": "bernoulli",
  "sticky_size": 2,
  "alpha": 4,
  "beta": 2,
  "eta": 2,
  "proposed_schedule": "experiment",
  "strategies": ["naive", "smart"],
  "algorithms": ["proposed", "existing", "no_blocking", "no_communication"],
  "num_checkpoints": 12,
  "output_dir": "unused"
})";

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("mabsim_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(MABSIM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST_CASE("format_double and csv parsing") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.25) == "0.25");
  CHECK(csv_row({"a", "b"}) == "a,b\n");
  const auto rows = parse_csv("x,y\n1,2\n");
  REQUIRE(rows.size() == 2);
  CHECK(rows[1] == std::vector<std::string>{"1", "2"});
}

TEST_CASE("config parsing errors name the field") {
  auto doc = nlohmann::json::parse(kSmallConfig);
  doc.erase("seed");
  try {
    parse_experiment(doc.dump());
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("missing required field \"seed\"") != std::string::npos);
  }
  doc = nlohmann::json::parse(kSmallConfig);
  doc["colour"] = 1;
  CHECK_THROWS_AS(parse_experiment(doc.dump()), ConfigError);
  doc = nlohmann::json::parse(kSmallConfig);
  doc["graph"] = "complete";
  CHECK_THROWS_AS(parse_experiment(doc.dump()), ConfigError);  // p without gnp
  doc.erase("p");
  CHECK_NOTHROW(parse_experiment(doc.dump()));
  doc = nlohmann::json::parse(kSmallConfig);
  doc.erase("proposed_schedule");
  CHECK_THROWS_AS(parse_experiment(doc.dump()), ConfigError);
}

TEST_CASE("config round trips through its resolved form") {
  const auto a = parse_experiment(kSmallConfig);
  const auto text = experiment_to_json(a);
  const auto b = parse_experiment(text);
  CHECK(experiment_to_json(b) == text);
}

TEST_CASE("run writes four files that replay byte for byte") {
  const fs::path dir = scratch("run");
  const fs::path cfg = dir / "cfg.json";
  write_file_atomic(cfg, kSmallConfig);
  std::ostringstream log;
  REQUIRE(cmd_run({cfg, dir / "a", 1}, log) == exit_code::kOk);
  for (const char* f : {"results.csv", "summary.csv", "events.csv", "manifest.json"}) {
    CHECK(fs::exists(dir / "a" / f));
  }
  const auto results = read_file(dir / "a" / "results.csv");
  const auto summary = read_file(dir / "a" / "summary.csv");
  CHECK(results.rfind("trial,algorithm,strategy,p,checkpoint_t,mean_agent_regret\n", 0) == 0);
  CHECK(summary.rfind("algorithm,strategy,p,checkpoint_t,mean,std\n", 0) == 0);
  CHECK(read_file(dir / "a" / "events.csv")
            .rfind("trial,algorithm,strategy,p,phase,blocker,blocked,unblock_phase,blocked_is_honest\n", 0) == 0);

  // 4 algorithms x 2 strategies x 2 p x 3 trials x 12 checkpoints, plus the header
  const auto rows = parse_csv(results);
  CHECK(rows.size() == 1 + 4 * 2 * 2 * 3 * 12);
  std::string rebuilt;
  for (const auto& r : rows) rebuilt += csv_row(r);
  CHECK(rebuilt == results);

  REQUIRE(cmd_run({dir / "a" / "manifest.json", dir / "b", 3}, log) == exit_code::kOk);
  CHECK(read_file(dir / "b" / "results.csv") == results);
  CHECK(read_file(dir / "b" / "summary.csv") == summary);
  auto ma = nlohmann::json::parse(read_file(dir / "a" / "manifest.json"));
  auto mb = nlohmann::json::parse(read_file(dir / "b" / "manifest.json"));
  ma["config"].erase("output_dir");
  mb["config"].erase("output_dir");
  CHECK(ma == mb);
  fs::remove_all(dir);
}

TEST_CASE("no-communication cells agree across strategies and p") {
  auto c = parse_experiment(kSmallConfig);
  c.algorithms = {AlgorithmKind::NoCommunication};
  const auto r = run_experiment(c, 1);
  REQUIRE(r.cells.size() == 4);
  for (const auto& cell : r.cells) CHECK(cell.summary == r.cells.front().summary);
}

TEST_CASE("validate-params output") {
  std::ostringstream ok;
  CHECK(cmd_validate_params(4, 2, 2, 0.5, 1.0 / 3.0, ok) == exit_code::kOk);
  CHECK(ok.str() == "valid\n");
  std::ostringstream bad;
  CHECK(cmd_validate_params(4, 0.9, 2, 0.5, 1.0 / 3.0, bad) == exit_code::kConfig);
  CHECK(bad.str().rfind("invalid\n", 0) == 0);
  CHECK(bad.str().find("violated: beta > 1\n") != std::string::npos);
}

TEST_CASE("rumor csv") {
  RumorOptions o;
  o.graph = "line";
  o.n = 2;
  o.upsilon = 1.0;
  o.trials = 2;
  std::ostringstream out;
  CHECK(cmd_rumor(o, out) == exit_code::kOk);
  CHECK(out.str() == "graph,n,upsilon,trial,tau,capped\nline,2,1,0,1,0\nline,2,1,1,1,0\nline,2,1,mean,1,0\n");
}

TEST_CASE("cli exit codes") {
  const fs::path dir = scratch("cli");
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("") == 1);
  CHECK(run_cli("bad-instance --n 5") == 1);
  CHECK(run_cli("bad-instance --n 4 --out " + (dir / "r.json").string()) == 0);
  CHECK(nlohmann::json::parse(read_file(dir / "r.json"))["passed"] == true);
  CHECK(run_cli("validate-params --alpha 4 --beta 2 --eta 2 --rho1 0.5 --rho2 0.3333333") == 0);
  CHECK(run_cli("validate-params --alpha 4 --beta 2 --eta 1 --rho1 0.5 --rho2 0.3333333") == 2);
  CHECK(run_cli("run " + (dir / "missing.json").string()) == 2);
  write_file_atomic(dir / "broken.json", "{\"trials\": 1}");
  CHECK(run_cli("run " + (dir / "broken.json").string()) == 2);
  fs::remove_all(dir);
}
