#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "mabsim/commands.hpp"

using namespace mabsim;

int main(int argc, char** argv) {
  CLI::App app{"Multi-agent bandit simulator with gossip and blocking"};
  app.require_subcommand(1);

  RunOptions run;
  std::optional<std::string> run_out;
  std::optional<int> run_par;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment sweep from a JSON config or manifest");
  run_cmd->add_option("config", run.config, "Config or manifest.json")->required();
  run_cmd->add_option("--out", run_out, "Output directory (overrides output_dir)");
  run_cmd->add_option("--parallelism", run_par, "Worker threads")->check(CLI::PositiveNumber);

  int bi_n = 4;
  std::string bi_rule = "existing";
  std::optional<std::string> bi_out;
  std::uint64_t bi_seed = 1;
  auto* bi_cmd = app.add_subcommand("bad-instance", "Forced-cascade check on the line-plus-hub instance");
  bi_cmd->add_option("--n", bi_n, "Honest agents (even, >= 4)")->required();
  bi_cmd->add_option("--rule", bi_rule, "existing | proposed")
      ->check(CLI::IsMember({"existing", "proposed"}));
  bi_cmd->add_option("--out", bi_out, "Report path (stdout when omitted)");
  bi_cmd->add_option("--seed", bi_seed, "Seed for the unforced contacts");

  RumorOptions rumor;
  std::optional<std::string> rumor_out;
  auto* rumor_cmd = app.add_subcommand("rumor", "Spreading time of the noisy rumor process");
  rumor_cmd->add_option("--graph", rumor.graph, "complete | line | gnp")
      ->check(CLI::IsMember({"complete", "line", "gnp"}));
  rumor_cmd->add_option("--n", rumor.n, "Honest agents")->required();
  rumor_cmd->add_option("--m", rumor.m, "Malicious agents");
  rumor_cmd->add_option("--p", rumor.p, "Edge probability for gnp");
  rumor_cmd->add_option("--upsilon", rumor.upsilon, "Success probability (default: graph value)");
  rumor_cmd->add_option("--trials", rumor.trials, "Number of runs");
  rumor_cmd->add_option("--seed", rumor.seed, "Base seed");
  rumor_cmd->add_option("--cap", rumor.cap, "Step cap per run");
  rumor_cmd->add_option("--out", rumor_out, "CSV path (stdout when omitted)");

  double alpha = 0, beta = 0, eta = 0, rho1 = 0, rho2 = 0;
  auto* vp_cmd = app.add_subcommand("validate-params", "Check (alpha, beta, eta, rho1, rho2)");
  vp_cmd->add_option("--alpha", alpha)->required();
  vp_cmd->add_option("--beta", beta)->required();
  vp_cmd->add_option("--eta", eta)->required();
  vp_cmd->add_option("--rho1", rho1)->required();
  vp_cmd->add_option("--rho2", rho2)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_code::kOk : exit_code::kUsage;
  }

  try {
    if (*run_cmd) {
      if (run_out) run.out = *run_out;
      run.parallelism = run_par;
      return cmd_run(run, std::cerr);
    }
    if (*bi_cmd) {
      if (bi_n < 4 || bi_n % 2 != 0) {
        std::cerr << "error: --n must be an even integer >= 4\n";
        return exit_code::kUsage;
      }
      std::optional<std::filesystem::path> out;
      if (bi_out) out = *bi_out;
      const auto rule = bi_rule == "existing" ? CascadeRule::Existing : CascadeRule::Proposed;
      return cmd_bad_instance(bi_n, rule, out, bi_seed, std::cout);
    }
    if (*rumor_cmd) {
      if (rumor_out) rumor.out = *rumor_out;
      return cmd_rumor(rumor, std::cout);
    }
    if (*vp_cmd) return cmd_validate_params(alpha, beta, eta, rho1, rho2, std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_code::kConfig;
  } catch (const GenerationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_code::kConfig;
  } catch (const std::range_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_code::kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code::kAssertion;
  }
  return exit_code::kUsage;
}
