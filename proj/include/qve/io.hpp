#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "qve/drivers.hpp"
#include "qve/swaptest.hpp"
#include "qve/types.hpp"

namespace qve {

using Json = nlohmann::ordered_json;

/// Matrix file format: {"dim": n, "rows": [[[re, im], ...], ...]} with an
/// optional "kind": "density" tag.
struct MatrixFileData {
  ComplexMatrix matrix;
  bool is_density = false;
};

MatrixFileData read_matrix_file(const std::string& path);

/// Reads the matrix payload, validating squareness and finiteness.
ComplexMatrix parse_matrix_file(const std::string& path);

void write_matrix_file(const std::string& path, const ComplexMatrix& m,
                       bool is_density = false);

/// State file format: {"dim": d, "entries": [[re, im], ...]}.
ComplexVector parse_state_file(const std::string& path);
void write_state_file(const std::string& path, const ComplexVector& v);

Json param_vector_to_json(const ParamVector& theta);
ParamVector param_vector_from_json(const Json& j);

Json trace_to_json(const OptimizationTrace& trace);
Json eig_result_to_json(const EigResult& result);
EigResult eig_result_from_json(const Json& j);
Json qpca_result_to_json(const QpcaResult& result);
QpcaResult qpca_result_from_json(const Json& j);
Json test_stats_to_json(const TestStats& stats);
Json verification_to_json(const VerificationReport& report);

/// Write-temp-then-rename.
void write_file_atomic(const std::string& path, const std::string& contents);

std::string read_file(const std::string& path);

}  // namespace qve
