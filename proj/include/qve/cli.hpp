#pragma once

#include <iosfwd>
#include <string>

#include "qve/io.hpp"

namespace qve {

/// One CLI invocation. Commands: find-eig, gen-eig, normal-eig, qpca,
/// swap-test, verify.
struct RunConfig {
  std::string command;
  std::string input_path;      // --input
  std::string input_v_path;    // --input-v
  std::string state_a_path;    // swap-test --state-a
  std::string state_b_path;    // swap-test --state-b
  std::string result_path;     // verify --result
  int n_qubits = 0;            // 0: derived from the input dimension
  int n_layers = 0;            // 0: n_qubits + 1
  std::string entangler = "chain";
  std::string optimizer = "nelder-mead";
  std::int64_t max_evals = 5000;
  int restarts = 1;
  std::int64_t shots = 0;      // 0: exact mode
  bool full_test = false;      // swap-test: ancilla circuit instead
  std::uint64_t seed = 0;
  bool seed_set = false;
  int components = 1;          // qpca
  double penalty_c = 10.0;     // qpca
  std::string out_path;        // file, directory, or empty for ./<auto>
};

/// Executes the command and writes the result file. Returns 0 when the run
/// converged (or all verification checks passed), 2 when it completed
/// without converging. Throws qve::Error on invalid configs or inputs.
int run(const RunConfig& config);

/// run() with library errors rendered as one machine-readable JSON object
/// on `error_stream`; returns 1 in that case.
int run_catching(const RunConfig& config, std::ostream& error_stream);

Json config_to_json(const RunConfig& config);
RunConfig config_from_json(const Json& j);

/// Output path policy: directories (or paths ending in '/') receive
/// "<command>-seed<seed>.json"; an empty path targets the working
/// directory.
std::string resolve_out_path(const RunConfig& config);

}  // namespace qve
