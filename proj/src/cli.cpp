#include "qve/cli.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <iostream>

#include "qve/drivers.hpp"
#include "qve/numerics.hpp"
#include "qve/optical.hpp"

namespace qve {

namespace {

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int qubits_for_dim(Eigen::Index dim, const std::string& what) {
  const auto u = static_cast<std::uint64_t>(dim);
  if (dim < 2 || !std::has_single_bit(u)) {
    throw ValidationError("dimension_not_power_of_two",
                          what + ": dimension " + std::to_string(dim) +
                              " is not a power of two");
  }
  return std::bit_width(u) - 1;
}

OptMethod parse_method(const std::string& name) {
  if (name == "spsa") return OptMethod::Spsa;
  if (name == "nelder-mead" || name == "nm") return OptMethod::NelderMead;
  throw ValidationError("unknown_optimizer",
                        "optimizer must be spsa or nelder-mead, got " + name);
}

Entangler parse_entangler(const std::string& name) {
  if (name == "chain" || name == "linear-chain") return Entangler::Chain;
  if (name == "ring") return Entangler::Ring;
  throw ValidationError("unknown_entangler",
                        "entangler must be chain or ring, got " + name);
}

struct Resolved {
  AnsatzSpec spec;
  OptimizerConfig opt;
  EvalMode mode = EvalMode::exact();
};

Resolved resolve(const RunConfig& config, Eigen::Index dim) {
  Resolved r;
  const int derived = qubits_for_dim(dim, "input");
  if (config.n_qubits > 0 && config.n_qubits != derived) {
    throw DimensionError("--qubits " + std::to_string(config.n_qubits) +
                         " does not match the input dimension " +
                         std::to_string(dim));
  }
  r.spec.n_qubits = derived;
  r.spec.n_layers =
      config.n_layers > 0 ? config.n_layers : derived + 1;
  r.spec.entangler = parse_entangler(config.entangler);

  r.opt.method = parse_method(config.optimizer);
  r.opt.max_evals = config.max_evals;
  r.opt.restarts = config.restarts;
  r.opt.seed = config.seed;

  r.mode = config.shots > 0 ? EvalMode::sampled(config.shots)
                            : EvalMode::exact();
  return r;
}

void require_seed(const RunConfig& config) {
  if (!config.seed_set) {
    throw ValidationError("missing_seed",
                          "--seed is required for reproducible runs");
  }
}

void require_input(const std::string& path, const char* flag) {
  if (path.empty()) {
    throw ValidationError("missing_input",
                          std::string(flag) + " is required");
  }
}

RunConfig echo_with_resolved(const RunConfig& config, const Resolved& r) {
  RunConfig echo = config;
  echo.n_qubits = r.spec.n_qubits;
  echo.n_layers = r.spec.n_layers;
  return echo;
}

void write_result_doc(const RunConfig& config, const std::string& out_path,
                      Json result_payload) {
  Json doc;
  doc["schema"] = 1;
  doc["command"] = config.command;
  doc["timestamp"] = utc_timestamp();
  doc["seed"] = config.seed;
  doc["config"] = config_to_json(config);
  doc["result"] = std::move(result_payload);
  write_file_atomic(out_path, doc.dump(2) + "\n");
}

StateVector swap_test_input(const std::string& state_path,
                            const std::string& matrix_path,
                            const char* which) {
  if (!state_path.empty()) {
    ComplexVector v = parse_state_file(state_path);
    const int n = qubits_for_dim(v.size(), "state file");
    const double norm = v.norm();
    if (std::abs(norm - 1.0) > 1e-6) {
      throw ValidationError("not_normalized",
                            state_path + ": state norm deviates from 1 by "
                                         "more than 1e-6");
    }
    return StateVector::from_amplitudes(n, v / norm);
  }
  if (!matrix_path.empty()) {
    const ComplexMatrix u = parse_matrix_file(matrix_path);
    if (!is_unitary(u, 1e-8)) {
      throw ValidationError("not_unitary",
                            matrix_path + ": preparation matrix must be "
                                          "unitary");
    }
    const int n = qubits_for_dim(u.rows(), "preparation matrix");
    return apply_unitary_block(StateVector::zero_state(n), u, [n] {
      std::vector<int> qs(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) qs[static_cast<std::size_t>(i)] = i;
      return qs;
    }());
  }
  throw ValidationError("missing_input",
                        std::string("swap-test needs --state-") + which +
                            " or the matching matrix input");
}

int run_eig_command(const RunConfig& config) {
  require_seed(config);
  require_input(config.input_path, "--input");

  const ComplexMatrix input = parse_matrix_file(config.input_path);
  const Resolved r = resolve(config, input.rows());

  EigResult result;
  if (config.command == "find-eig") {
    if (!is_unitary(input, kDefaultClassifyTol)) {
      throw ValidationError("not_unitary",
                            config.input_path +
                                ": find-eig needs a unitary matrix");
    }
    result = find_eigenvector(input, r.spec, r.opt, r.mode);
  } else if (config.command == "gen-eig") {
    require_input(config.input_v_path, "--input-v");
    const ComplexMatrix input_v = parse_matrix_file(config.input_v_path);
    if (input_v.rows() != input.rows()) {
      throw DimensionError("gen-eig: U and V dimensions differ");
    }
    if (!is_unitary(input, kDefaultClassifyTol) ||
        !is_unitary(input_v, kDefaultClassifyTol)) {
      throw ValidationError("not_unitary",
                            "gen-eig needs unitary U and V inputs");
    }
    result = solve_generalized(input, input_v, r.spec, r.opt, r.mode);
  } else {
    if (!is_normal(input, kDefaultClassifyTol)) {
      throw ValidationError("not_normal",
                            config.input_path +
                                ": normal-eig needs a normal matrix");
    }
    result = find_eigenvector_normal(input, r.spec, r.opt, r.mode);
  }

  const RunConfig echo = echo_with_resolved(config, r);
  write_result_doc(echo, resolve_out_path(config),
                   eig_result_to_json(result));
  return result.converged ? 0 : 2;
}

int run_qpca_command(const RunConfig& config) {
  require_seed(config);
  require_input(config.input_path, "--input");

  const MatrixFileData data = read_matrix_file(config.input_path);
  const Resolved r = resolve(config, data.matrix.rows());
  const DensityMatrix rho =
      DensityMatrix::from_matrix(r.spec.n_qubits, data.matrix);

  const QpcaResult result = qpca(rho, config.components, r.spec, r.opt,
                                 r.mode, config.penalty_c);

  const RunConfig echo = echo_with_resolved(config, r);
  write_result_doc(echo, resolve_out_path(config),
                   qpca_result_to_json(result));
  const bool saturated =
      std::any_of(result.components.begin(), result.components.end(),
                  [](const QpcaComponent& c) { return c.saturated; });
  return (result.warnings.empty() && !saturated) ? 0 : 2;
}

int run_swap_test_command(const RunConfig& config) {
  require_seed(config);
  const StateVector a =
      swap_test_input(config.state_a_path, config.input_path, "a");
  const StateVector b =
      swap_test_input(config.state_b_path, config.input_v_path, "b");
  if (a.n_qubits != b.n_qubits) {
    throw DimensionError("swap-test: the two states differ in size");
  }

  Json payload;
  payload["n_qubits"] = a.n_qubits;
  payload["variant"] = config.full_test ? "full" : "destructive";
  payload["exact_pass_probability"] = exact_pass_probability(a, b);
  payload["exact_overlap"] = pure_overlap(a, b);
  if (config.shots > 0) {
    Rng rng(config.seed);
    const TestStats stats =
        config.full_test ? full_swap_test(a, b, config.shots, rng)
                         : destructive_swap_test(a, b, config.shots, rng);
    payload["stats"] = test_stats_to_json(stats);
  }

  write_result_doc(config, resolve_out_path(config), std::move(payload));
  return 0;
}

int run_verify_command(const RunConfig& config) {
  require_input(config.result_path, "--result");
  const Json doc = Json::parse(read_file(config.result_path));
  if (!doc.contains("config") || !doc.contains("result") ||
      !doc.contains("command")) {
    throw ValidationError("malformed_result",
                          config.result_path +
                              ": missing command/config/result fields");
  }
  const RunConfig original = config_from_json(doc["config"]);
  const std::string command = doc["command"].get<std::string>();

  AnsatzSpec spec;
  spec.n_qubits = original.n_qubits;
  spec.n_layers = original.n_layers;
  spec.entangler = parse_entangler(original.entangler);
  const EvalMode mode = original.shots > 0 ? EvalMode::sampled(original.shots)
                                           : EvalMode::exact();

  VerificationReport report;
  if (command == "qpca") {
    const DensityMatrix rho = DensityMatrix::from_matrix(
        spec.n_qubits, parse_matrix_file(original.input_path));
    report = verify(qpca_result_from_json(doc["result"]), rho, spec);
  } else if (command == "find-eig" || command == "gen-eig" ||
             command == "normal-eig") {
    Problem problem = UnitaryEig{};
    if (command == "find-eig") {
      problem = UnitaryEig{parse_matrix_file(original.input_path)};
    } else if (command == "gen-eig") {
      problem = Generalized{parse_matrix_file(original.input_path),
                            parse_matrix_file(original.input_v_path)};
    } else {
      problem = make_normal_eig(parse_matrix_file(original.input_path));
    }
    report = verify(eig_result_from_json(doc["result"]), problem, spec, mode);
  } else {
    throw ValidationError("unsupported_kind",
                          "verify does not handle command " + command);
  }

  const Json rendered = verification_to_json(report);
  if (config.out_path.empty()) {
    std::cout << rendered.dump(2) << "\n";
  } else {
    write_file_atomic(resolve_out_path(config), rendered.dump(2) + "\n");
  }
  return report.all_passed ? 0 : 2;
}

}  // namespace

int run(const RunConfig& config) {
  if (config.command == "find-eig" || config.command == "gen-eig" ||
      config.command == "normal-eig") {
    return run_eig_command(config);
  }
  if (config.command == "qpca") return run_qpca_command(config);
  if (config.command == "swap-test") return run_swap_test_command(config);
  if (config.command == "verify") return run_verify_command(config);
  throw ValidationError("unknown_command",
                        "unknown command: " + config.command);
}

int run_catching(const RunConfig& config, std::ostream& error_stream) {
  try {
    return run(config);
  } catch (const Error& e) {
    Json err;
    err["error"] = {{"kind", e.kind()}, {"message", e.what()}};
    error_stream << err.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    Json err;
    err["error"] = {{"kind", "internal"}, {"message", e.what()}};
    error_stream << err.dump() << "\n";
    return 1;
  }
}

Json config_to_json(const RunConfig& config) {
  Json j;
  j["command"] = config.command;
  j["input"] = config.input_path;
  j["input_v"] = config.input_v_path;
  j["state_a"] = config.state_a_path;
  j["state_b"] = config.state_b_path;
  j["qubits"] = config.n_qubits;
  j["layers"] = config.n_layers;
  j["entangler"] = config.entangler;
  j["optimizer"] = config.optimizer;
  j["max_evals"] = config.max_evals;
  j["restarts"] = config.restarts;
  j["exact"] = config.shots == 0;
  j["shots"] = config.shots;
  j["full_test"] = config.full_test;
  j["seed"] = config.seed;
  j["components"] = config.components;
  j["penalty_c"] = config.penalty_c;
  return j;
}

RunConfig config_from_json(const Json& j) {
  RunConfig config;
  config.command = j.value("command", "");
  config.input_path = j.value("input", "");
  config.input_v_path = j.value("input_v", "");
  config.state_a_path = j.value("state_a", "");
  config.state_b_path = j.value("state_b", "");
  config.n_qubits = j.value("qubits", 0);
  config.n_layers = j.value("layers", 0);
  config.entangler = j.value("entangler", "chain");
  config.optimizer = j.value("optimizer", "nelder-mead");
  config.max_evals = j.value("max_evals", std::int64_t{5000});
  config.restarts = j.value("restarts", 1);
  config.shots = j.value("shots", std::int64_t{0});
  config.full_test = j.value("full_test", false);
  config.seed = j.value("seed", std::uint64_t{0});
  config.seed_set = j.contains("seed");
  config.components = j.value("components", 1);
  config.penalty_c = j.value("penalty_c", 10.0);
  return config;
}

std::string resolve_out_path(const RunConfig& config) {
  const std::string name =
      config.command + "-seed" + std::to_string(config.seed) + ".json";
  if (config.out_path.empty()) return name;
  namespace fs = std::filesystem;
  if (config.out_path.back() == '/' || fs::is_directory(config.out_path)) {
    return (fs::path(config.out_path) / name).string();
  }
  return config.out_path;
}

}  // namespace qve
