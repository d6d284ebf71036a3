#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qve/ansatz.hpp"
#include "qve/numerics.hpp"
#include "qve/optimizer.hpp"

using namespace qve;

namespace {

ComplexMatrix single_qubit_gate(GateKind kind, double angle) {
  ComplexMatrix m(2, 2);
  switch (kind) {
    case GateKind::RX:
      m << Complex(std::cos(angle / 2), 0), Complex(0, -std::sin(angle / 2)),
          Complex(0, -std::sin(angle / 2)), Complex(std::cos(angle / 2), 0);
      break;
    case GateKind::RY:
      m << std::cos(angle / 2), -std::sin(angle / 2), std::sin(angle / 2),
          std::cos(angle / 2);
      break;
    default:
      m.setIdentity();
  }
  return m;
}

/// Dense matrix for a single-qubit gate on qubit q of n (qubit 0 most
/// significant).
ComplexMatrix embed_1q(const ComplexMatrix& g, int q, int n) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int i = 0; i < n; ++i) {
    out = kron(out, i == q ? g : ComplexMatrix::Identity(2, 2));
  }
  return out;
}

ComplexMatrix cnot_matrix(int control, int target, int n) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Eigen::Index cm = Eigen::Index(1) << (n - 1 - control);
    const Eigen::Index tm = Eigen::Index(1) << (n - 1 - target);
    m((i & cm) ? (i ^ tm) : i, i) = 1.0;
  }
  return m;
}

}  // namespace

TEST_CASE("param_count follows 2 * qubits * layers") {
  REQUIRE(param_count(AnsatzSpec{3, 1, Entangler::Chain}) == 6);
  REQUIRE(param_count(AnsatzSpec{1, 1, Entangler::Chain}) == 2);
  REQUIRE(param_count(AnsatzSpec{4, 3, Entangler::Chain}) == 24);
  REQUIRE_THROWS_AS(param_count(AnsatzSpec{0, 1, Entangler::Chain}),
                    ValidationError);
}

TEST_CASE("zero angles act as the identity on the all-zeros state") {
  for (const auto entangler : {Entangler::Chain, Entangler::Ring}) {
    const AnsatzSpec spec{3, 2, entangler};
    const ParamVector theta = ParamVector::Zero(param_count(spec));
    const StateVector out = prepare_state(spec, theta);
    REQUIRE(std::abs(out.amplitudes(0) - Complex(1.0)) <= 1e-12);
  }
}

TEST_CASE("single-qubit ansatz reaches |1> via RX(pi)") {
  const AnsatzSpec spec{1, 1, Entangler::Chain};
  ParamVector theta(2);
  theta << M_PI, 0.0;
  const StateVector out = prepare_state(spec, theta);
  REQUIRE(std::norm(out.amplitudes(1)) >= 1.0 - 1e-12);
}

TEST_CASE("build_circuit matches the step-by-step dense matrix product") {
  Rng rng(13);
  const AnsatzSpec spec{3, 1, Entangler::Chain};
  const ParamVector theta = random_init(spec, rng);

  // RX row, CNOT(0,1), CNOT(1,2), RY row as explicit dense matrices.
  ComplexMatrix expected = ComplexMatrix::Identity(8, 8);
  for (int q = 0; q < 3; ++q) {
    expected = embed_1q(single_qubit_gate(GateKind::RX, theta(q)), q, 3) *
               expected;
  }
  expected = cnot_matrix(0, 1, 3) * expected;
  expected = cnot_matrix(1, 2, 3) * expected;
  for (int q = 0; q < 3; ++q) {
    expected = embed_1q(single_qubit_gate(GateKind::RY, theta(3 + q)), q, 3) *
               expected;
  }

  ComplexVector zero = ComplexVector::Zero(8);
  zero(0) = 1.0;
  const StateVector out = prepare_state(spec, theta);
  REQUIRE((out.amplitudes - expected * zero).norm() <= 1e-12);
}

TEST_CASE("ring entangler adds the closing CNOT") {
  const AnsatzSpec chain{3, 1, Entangler::Chain};
  const AnsatzSpec ring{3, 1, Entangler::Ring};
  REQUIRE(build_circuit(chain, ParamVector::Zero(6)).gates.size() == 8);
  REQUIRE(build_circuit(ring, ParamVector::Zero(6)).gates.size() == 9);
  // One qubit: no entangler in either layout.
  REQUIRE(build_circuit(AnsatzSpec{1, 1, Entangler::Ring},
                        ParamVector::Zero(2))
              .gates.size() == 2);
}

TEST_CASE("build_circuit is deterministic and validates length") {
  Rng rng(19);
  const AnsatzSpec spec{2, 2, Entangler::Chain};
  const ParamVector theta = random_init(spec, rng);
  const Circuit a = build_circuit(spec, theta);
  const Circuit b = build_circuit(spec, theta);
  REQUIRE(a.gates.size() == b.gates.size());
  for (std::size_t i = 0; i < a.gates.size(); ++i) {
    REQUIRE(a.gates[i].kind == b.gates[i].kind);
    REQUIRE(a.gates[i].targets == b.gates[i].targets);
    REQUIRE(a.gates[i].angle == b.gates[i].angle);
  }
  REQUIRE_THROWS_AS(build_circuit(spec, ParamVector::Zero(7)),
                    ValidationError);
}

TEST_CASE("random_init is seed-stable with uniform angles") {
  const AnsatzSpec spec{2, 2, Entangler::Chain};
  Rng rng_a(101);
  Rng rng_b(101);
  const ParamVector ta = random_init(spec, rng_a);
  const ParamVector tb = random_init(spec, rng_b);
  REQUIRE((ta - tb).norm() == 0.0);
  REQUIRE(ta.size() == 8);
  REQUIRE(ta.minCoeff() >= 0.0);
  REQUIRE(ta.maxCoeff() < 2.0 * M_PI);

  // Sample mean of one coordinate over many draws: uniform on [0, 2*pi)
  // has mean pi and variance (2*pi)^2 / 12.
  Rng rng(7);
  const int samples = 10000;
  double sum = 0.0;
  for (int i = 0; i < samples; ++i) {
    sum += random_init(AnsatzSpec{1, 1, Entangler::Chain}, rng)(0);
  }
  const double mean = sum / samples;
  const double sigma = 2.0 * M_PI / std::sqrt(12.0 * samples);
  REQUIRE(std::abs(mean - M_PI) <= 5.0 * sigma);
}

TEST_CASE("output norm stays 1 for random parameters") {
  Rng rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    const AnsatzSpec spec{3, 4, Entangler::Ring};
    const StateVector out = prepare_state(spec, random_init(spec, rng));
    REQUIRE(std::abs(out.amplitudes.norm() - 1.0) <= 1e-10);
  }
}

TEST_CASE("one-qubit ansatz reaches arbitrary pure states") {
  Rng rng(31);
  const AnsatzSpec spec{1, 1, Entangler::Chain};
  OptimizerConfig cfg;
  cfg.method = OptMethod::NelderMead;
  cfg.max_evals = 400;
  cfg.restarts = 3;
  cfg.target_value = -0.9995;

  for (int trial = 0; trial < 100; ++trial) {
    const ComplexVector target = random_state_vector(2, rng);
    const StateVector target_state = StateVector::from_amplitudes(1, target);
    const auto objective = [&](const ParamVector& theta) {
      return -pure_overlap(prepare_state(spec, theta), target_state);
    };
    auto [theta, trace] = minimize(objective, ParamVector::Zero(2), cfg, rng);
    REQUIRE(-trace.best_value >= 0.999);
  }
}
