#include "qve/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qve {

namespace {

Complex complex_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    throw ValidationError("malformed_entry",
                          std::string(what) +
                              ": complex entries must be [re, im] pairs");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Json complex_to_json(const Complex& z) {
  return Json::array({z.real(), z.imag()});
}

Json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("file_not_found", "cannot open " + path);
  }
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("parse_error",
                          path + ": " + std::string(e.what()));
  }
}

}  // namespace

MatrixFileData read_matrix_file(const std::string& path) {
  const Json j = parse_json_file(path);
  if (!j.is_object() || !j.contains("dim") || !j.contains("rows")) {
    throw ValidationError("malformed_matrix",
                          path + ": expected {\"dim\": n, \"rows\": [...]}");
  }
  if (!j["dim"].is_number_integer() || j["dim"].get<std::int64_t>() < 1) {
    throw ValidationError("malformed_matrix",
                          path + ": dim must be a positive integer");
  }
  const auto dim = j["dim"].get<Eigen::Index>();
  const Json& rows = j["rows"];
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != dim) {
    throw ValidationError("not_square",
                          path + ": row count does not match dim");
  }
  ComplexMatrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const Json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
      throw ValidationError("not_square",
                            path + ": row " + std::to_string(r) +
                                " length does not match dim");
    }
    for (Eigen::Index c = 0; c < dim; ++c) {
      m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)], "matrix");
    }
  }
  if (!m.allFinite()) {
    throw ValidationError("non_finite", path + ": NaN/Inf matrix entry");
  }
  MatrixFileData data;
  data.matrix = std::move(m);
  data.is_density = j.contains("kind") && j["kind"] == "density";
  return data;
}

ComplexMatrix parse_matrix_file(const std::string& path) {
  return read_matrix_file(path).matrix;
}

void write_matrix_file(const std::string& path, const ComplexMatrix& m,
                       bool is_density) {
  Json j;
  j["dim"] = m.rows();
  if (is_density) j["kind"] = "density";
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(complex_to_json(m(r, c)));
    }
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  write_file_atomic(path, j.dump(2) + "\n");
}

ComplexVector parse_state_file(const std::string& path) {
  const Json j = parse_json_file(path);
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
    throw ValidationError(
        "malformed_state",
        path + ": expected {\"dim\": d, \"entries\": [[re, im], ...]}");
  }
  const auto dim = j["dim"].get<Eigen::Index>();
  const Json& entries = j["entries"];
  if (dim < 1 || !entries.is_array() ||
      static_cast<Eigen::Index>(entries.size()) != dim) {
    throw ValidationError("malformed_state",
                          path + ": entry count does not match dim");
  }
  ComplexVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    v(i) = complex_from_json(entries[static_cast<std::size_t>(i)], "state");
  }
  if (!v.allFinite()) {
    throw ValidationError("non_finite", path + ": NaN/Inf state entry");
  }
  return v;
}

void write_state_file(const std::string& path, const ComplexVector& v) {
  Json j;
  j["dim"] = v.size();
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    entries.push_back(complex_to_json(v(i)));
  }
  j["entries"] = std::move(entries);
  write_file_atomic(path, j.dump(2) + "\n");
}

Json param_vector_to_json(const ParamVector& theta) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < theta.size(); ++i) arr.push_back(theta(i));
  return arr;
}

ParamVector param_vector_from_json(const Json& j) {
  if (!j.is_array()) {
    throw ValidationError("malformed_result", "theta must be an array");
  }
  ParamVector theta(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    theta(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return theta;
}

Json trace_to_json(const OptimizationTrace& trace) {
  Json j;
  j["n_evals"] = trace.n_evals;
  j["non_finite_evals"] = trace.non_finite_evals;
  j["stop_reason"] = stop_reason_name(trace.stop_reason);
  j["best_value"] = trace.best_value;
  j["best_values"] = trace.best_value_curve();
  return j;
}

Json eig_result_to_json(const EigResult& result) {
  Json j;
  j["theta_star"] = param_vector_to_json(result.theta_star);
  j["objective_final"] = result.objective_final;
  if (result.rayleigh.has_value()) {
    j["rayleigh"] = {{"re", result.rayleigh->real()},
                     {"im", result.rayleigh->imag()}};
  } else {
    j["rayleigh"] = nullptr;
  }
  j["residual"] = result.residual;
  j["oracle_fidelity"] = result.oracle_fidelity;
  j["converged"] = result.converged;
  j["stop_reason"] = stop_reason_name(result.trace.stop_reason);
  j["seed"] = result.seed;
  j["warnings"] = result.warnings;
  j["trace"] = trace_to_json(result.trace);
  return j;
}

EigResult eig_result_from_json(const Json& j) {
  EigResult result;
  result.theta_star = param_vector_from_json(j.at("theta_star"));
  result.objective_final = j.at("objective_final").get<double>();
  if (!j.at("rayleigh").is_null()) {
    result.rayleigh = Complex(j["rayleigh"].at("re").get<double>(),
                              j["rayleigh"].at("im").get<double>());
  }
  result.residual = j.at("residual").get<double>();
  result.oracle_fidelity = j.at("oracle_fidelity").get<double>();
  result.converged = j.at("converged").get<bool>();
  result.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("warnings")) {
    result.warnings = j["warnings"].get<std::vector<std::string>>();
  }
  return result;
}

Json qpca_result_to_json(const QpcaResult& result) {
  Json j;
  Json components = Json::array();
  for (const QpcaComponent& c : result.components) {
    Json cj;
    cj["theta"] = param_vector_to_json(c.theta);
    cj["eigenvalue_estimate"] = c.eigenvalue_estimate;
    cj["oracle_fidelity"] = c.oracle_fidelity;
    cj["saturated"] = c.saturated;
    components.push_back(std::move(cj));
  }
  j["components"] = std::move(components);
  j["seed"] = result.seed;
  j["warnings"] = result.warnings;
  Json traces = Json::array();
  for (const OptimizationTrace& t : result.traces) {
    traces.push_back(trace_to_json(t));
  }
  j["traces"] = std::move(traces);
  return j;
}

QpcaResult qpca_result_from_json(const Json& j) {
  QpcaResult result;
  for (const Json& cj : j.at("components")) {
    QpcaComponent c;
    c.theta = param_vector_from_json(cj.at("theta"));
    c.eigenvalue_estimate = cj.at("eigenvalue_estimate").get<double>();
    c.oracle_fidelity = cj.at("oracle_fidelity").get<double>();
    c.saturated = cj.at("saturated").get<bool>();
    result.components.push_back(std::move(c));
  }
  result.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("warnings")) {
    result.warnings = j["warnings"].get<std::vector<std::string>>();
  }
  return result;
}

Json test_stats_to_json(const TestStats& stats) {
  Json j;
  j["shots"] = stats.shots;
  j["passes"] = stats.passes;
  j["fails"] = stats.fails;
  j["p0_hat"] = stats.p0_hat;
  j["p1_hat"] = stats.p1_hat;
  j["z_hat"] = stats.z_hat;
  j["p0_stderr"] = stats.p0_stderr;
  j["z_stderr"] = stats.z_stderr;
  return j;
}

Json verification_to_json(const VerificationReport& report) {
  Json j;
  Json checks = Json::array();
  for (const VerificationCheck& c : report.checks) {
    Json cj;
    cj["name"] = c.name;
    cj["passed"] = c.passed;
    cj["value"] = c.value;
    cj["threshold"] = c.threshold;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  j["all_passed"] = report.all_passed;
  return j;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw ValidationError("write_failed", "cannot write " + tmp);
    }
    out << contents;
    if (!out.flush()) {
      throw ValidationError("write_failed", "failed flushing " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw ValidationError("write_failed",
                          "cannot rename " + tmp + " to " + path);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError("file_not_found", "cannot open " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace qve
