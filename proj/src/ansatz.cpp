#include "qve/ansatz.hpp"

namespace qve {

AnsatzSpec AnsatzSpec::with_default_depth(int n_qubits, Entangler entangler) {
  return AnsatzSpec{n_qubits, n_qubits + 1, entangler};
}

namespace {

void validate_spec(const AnsatzSpec& spec) {
  if (spec.n_qubits < 1) {
    throw ValidationError("invalid_ansatz", "ansatz needs at least 1 qubit");
  }
  if (spec.n_layers < 1) {
    throw ValidationError("invalid_ansatz", "ansatz needs at least 1 layer");
  }
}

}  // namespace

int param_count(const AnsatzSpec& spec) {
  validate_spec(spec);
  return 2 * spec.n_qubits * spec.n_layers;
}

Circuit build_circuit(const AnsatzSpec& spec, const ParamVector& theta) {
  if (theta.size() != param_count(spec)) {
    throw ValidationError(
        "param_count_mismatch",
        "build_circuit: expected " + std::to_string(param_count(spec)) +
            " angles, got " + std::to_string(theta.size()));
  }
  const int n = spec.n_qubits;
  Circuit c{n, {}};
  c.gates.reserve(static_cast<std::size_t>(spec.n_layers) *
                  static_cast<std::size_t>(3 * n));
  for (int layer = 0; layer < spec.n_layers; ++layer) {
    const int base = 2 * layer * n;
    for (int q = 0; q < n; ++q) {
      c.gates.push_back(Gate::rx(q, theta(base + q)));
    }
    for (int q = 0; q + 1 < n; ++q) {
      c.gates.push_back(Gate::cnot(q, q + 1));
    }
    if (spec.entangler == Entangler::Ring && n > 1) {
      c.gates.push_back(Gate::cnot(n - 1, 0));
    }
    for (int q = 0; q < n; ++q) {
      c.gates.push_back(Gate::ry(q, theta(base + n + q)));
    }
  }
  return c;
}

StateVector prepare_state(const AnsatzSpec& spec, const ParamVector& theta) {
  return run_circuit(build_circuit(spec, theta),
                     StateVector::zero_state(spec.n_qubits));
}

ParamVector random_init(const AnsatzSpec& spec, Rng& rng) {
  ParamVector theta(param_count(spec));
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    theta(i) = rng.uniform(0.0, 2.0 * M_PI);
  }
  return theta;
}

}  // namespace qve
