#include <CLI11.hpp>

#include <iostream>

#include "qve/cli.hpp"

namespace {

void add_common_options(CLI::App& cmd, qve::RunConfig& config,
                        bool with_optimizer) {
  cmd.add_option("--seed", config.seed, "master seed (required)")
      ->each([&config](const std::string&) { config.seed_set = true; });
  cmd.add_option("--out", config.out_path,
                 "result file or directory (default "
                 "./<command>-seed<seed>.json)");
  cmd.add_option("--shots", config.shots,
                 "shots per objective evaluation (sampled mode)")
      ->check(CLI::PositiveNumber);
  cmd.add_flag_callback(
      "--exact", [&config] { config.shots = 0; },
      "exact expectation values, no sampling (default)");
  if (!with_optimizer) return;
  cmd.add_option("--qubits", config.n_qubits,
                 "register size; checked against the input dimension");
  cmd.add_option("--layers", config.n_layers,
                 "ansatz layers (default: qubits + 1)");
  cmd.add_option("--entangler", config.entangler, "chain or ring");
  cmd.add_option("--optimizer", config.optimizer, "spsa or nelder-mead");
  cmd.add_option("--max-evals", config.max_evals,
                 "objective evaluations per restart");
  cmd.add_option("--restarts", config.restarts, "independent restarts");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Variational eigenvector finder: SWAP-test objectives over a "
      "hardware-efficient ansatz, with a classical oracle cross-check"};
  app.require_subcommand(1);

  qve::RunConfig config;

  CLI::App* find_eig = app.add_subcommand(
      "find-eig", "find an eigenvector of a unitary matrix");
  find_eig->add_option("--input", config.input_path, "matrix JSON file")
      ->required();
  add_common_options(*find_eig, config, true);

  CLI::App* gen_eig = app.add_subcommand(
      "gen-eig", "solve U|e> = lambda V|e> for unitary U, V");
  gen_eig->add_option("--input", config.input_path, "U matrix JSON file")
      ->required();
  gen_eig->add_option("--input-v", config.input_v_path, "V matrix JSON file")
      ->required();
  add_common_options(*gen_eig, config, true);

  CLI::App* normal_eig = app.add_subcommand(
      "normal-eig", "find an eigenvector of a normal matrix");
  normal_eig->add_option("--input", config.input_path, "matrix JSON file")
      ->required();
  add_common_options(*normal_eig, config, true);

  CLI::App* qpca_cmd = app.add_subcommand(
      "qpca", "principal components of a density matrix");
  qpca_cmd->add_option("--input", config.input_path,
                       "density matrix JSON file")
      ->required();
  qpca_cmd->add_option("--components", config.components,
                       "number of components to extract");
  qpca_cmd->add_option("--penalty-c", config.penalty_c,
                       "deflation penalty weight");
  add_common_options(*qpca_cmd, config, true);

  CLI::App* swap_test = app.add_subcommand(
      "swap-test", "run a standalone SWAP test between two states");
  swap_test->add_option("--state-a", config.state_a_path,
                        "state JSON file for the first register");
  swap_test->add_option("--state-b", config.state_b_path,
                        "state JSON file for the second register");
  swap_test->add_option("--input", config.input_path,
                        "unitary preparing state a from |0...0>");
  swap_test->add_option("--input-v", config.input_v_path,
                        "unitary preparing state b from |0...0>");
  swap_test->add_flag("--full", config.full_test,
                      "ancilla-based circuit instead of the destructive "
                      "test");
  add_common_options(*swap_test, config, false);

  CLI::App* verify = app.add_subcommand(
      "verify", "re-check a result file against its inputs");
  verify->add_option("--result", config.result_path, "result JSON file")
      ->required();
  verify->add_option("--out", config.out_path,
                     "write the report here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  config.command = app.get_subcommands().front()->get_name();
  return qve::run_catching(config, std::cerr);
}
