#include "qve/swaptest.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>
#include <vector>

namespace qve {

namespace {

void require_matching(const StateVector& a, const StateVector& b,
                      const char* what) {
  if (a.n_qubits != b.n_qubits) {
    throw DimensionError(std::string(what) + ": register sizes differ (" +
                         std::to_string(a.n_qubits) + " vs " +
                         std::to_string(b.n_qubits) + ")");
  }
  if (2 * a.n_qubits + 1 > kMaxStateQubits) {
    throw ValidationError("qubit_count_out_of_range",
                          std::string(what) +
                              ": joint register exceeds the simulator cap");
  }
}

void require_shots(std::int64_t shots, const char* what) {
  if (shots < 1) {
    throw ValidationError("invalid_shots",
                          std::string(what) + ": shots must be >= 1");
  }
}

/// Joint state [a-register | b-register] after the transversal CNOT+H
/// stage. a occupies the most significant qubits.
StateVector destructive_joint_state(const StateVector& a,
                                    const StateVector& b) {
  const int n = a.n_qubits;
  StateVector joint =
      StateVector::from_amplitudes(2 * n, kron(a.amplitudes, b.amplitudes));
  Circuit c{2 * n, {}};
  for (int i = 0; i < n; ++i) {
    c.gates.push_back(Gate::cnot(n + i, i));
    c.gates.push_back(Gate::h(n + i));
  }
  return run_circuit(c, joint);
}

bool even_and_parity(std::uint64_t joint_index, int n) {
  const std::uint64_t mask = (std::uint64_t(1) << n) - 1;
  const std::uint64_t a_bits = joint_index >> n;
  const std::uint64_t b_bits = joint_index & mask;
  return (std::popcount(a_bits & b_bits) & 1) == 0;
}

}  // namespace

TestStats TestStats::from_counts(std::int64_t passes, std::int64_t shots) {
  TestStats s;
  s.shots = shots;
  s.passes = passes;
  s.fails = shots - passes;
  s.p0_hat = static_cast<double>(passes) / static_cast<double>(shots);
  s.p1_hat = 1.0 - s.p0_hat;
  s.z_hat = s.p0_hat - s.p1_hat;
  s.p0_stderr =
      std::sqrt(std::max(0.0, s.p0_hat * s.p1_hat / static_cast<double>(shots)));
  s.z_stderr = 2.0 * s.p0_stderr;
  return s;
}

double exact_pass_probability(const StateVector& a, const StateVector& b) {
  require_matching(a, b, "exact_pass_probability");
  return (1.0 + pure_overlap(a, b)) / 2.0;
}

double full_test_pass_probability(const StateVector& a, const StateVector& b) {
  require_matching(a, b, "full_test_pass_probability");
  const int n = a.n_qubits;
  ComplexVector ancilla(2);
  ancilla << 1.0, 0.0;
  StateVector joint = StateVector::from_amplitudes(
      2 * n + 1, kron(ancilla, kron(a.amplitudes, b.amplitudes)));
  Circuit c{2 * n + 1, {}};
  c.gates.push_back(Gate::h(0));
  for (int i = 0; i < n; ++i) {
    c.gates.push_back(Gate::cswap(0, 1 + i, 1 + n + i));
  }
  c.gates.push_back(Gate::h(0));
  joint = run_circuit(c, joint);
  const Eigen::Index half = joint.dim() / 2;
  return std::clamp(joint.amplitudes.head(half).squaredNorm(), 0.0, 1.0);
}

double destructive_test_pass_probability(const StateVector& a,
                                         const StateVector& b) {
  require_matching(a, b, "destructive_test_pass_probability");
  const StateVector joint = destructive_joint_state(a, b);
  double pass = 0.0;
  for (Eigen::Index i = 0; i < joint.dim(); ++i) {
    if (even_and_parity(std::uint64_t(i), a.n_qubits)) {
      pass += std::norm(joint.amplitudes(i));
    }
  }
  return std::clamp(pass, 0.0, 1.0);
}

TestStats full_swap_test(const StateVector& a, const StateVector& b,
                         std::int64_t shots, Rng& rng) {
  require_shots(shots, "full_swap_test");
  const double p0 = full_test_pass_probability(a, b);
  std::int64_t passes = 0;
  for (std::int64_t s = 0; s < shots; ++s) {
    if (rng.uniform() < p0) ++passes;
  }
  return TestStats::from_counts(passes, shots);
}

TestStats destructive_swap_test(const StateVector& a, const StateVector& b,
                                std::int64_t shots, Rng& rng) {
  require_shots(shots, "destructive_swap_test");
  const StateVector joint = destructive_joint_state(a, b);
  const Eigen::Index dim = joint.dim();
  std::vector<double> cumulative(static_cast<std::size_t>(dim));
  double acc = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    acc += std::norm(joint.amplitudes(i));
    cumulative[static_cast<std::size_t>(i)] = acc;
  }
  std::int64_t passes = 0;
  for (std::int64_t s = 0; s < shots; ++s) {
    const double r = rng.uniform() * acc;
    const auto it =
        std::upper_bound(cumulative.begin(), cumulative.end(), r);
    const std::uint64_t idx =
        std::min(static_cast<std::uint64_t>(it - cumulative.begin()),
                 static_cast<std::uint64_t>(dim - 1));
    if (even_and_parity(idx, a.n_qubits)) ++passes;
  }
  return TestStats::from_counts(passes, shots);
}

TestStats mixed_swap_test(const DensityMatrix& rho, const StateVector& sigma,
                          std::int64_t shots, Rng& rng) {
  require_shots(shots, "mixed_swap_test");
  if (rho.dim() != sigma.dim()) {
    throw DimensionError("mixed_swap_test: dimensions differ");
  }
  const MixtureSampler sampler(rho);
  // Pass probabilities per spectral component, built on first use.
  std::vector<std::optional<double>> pass_prob(sampler.components().size());
  std::int64_t passes = 0;
  for (std::int64_t s = 0; s < shots; ++s) {
    const std::size_t i = sampler.draw_index(rng);
    if (!pass_prob[i].has_value()) {
      const ComplexVector& v = sampler.components()[i].eigenvector;
      const StateVector drawn =
          StateVector::from_amplitudes(rho.n_qubits, v / v.norm());
      pass_prob[i] = destructive_test_pass_probability(drawn, sigma);
    }
    if (rng.uniform() < *pass_prob[i]) ++passes;
  }
  return TestStats::from_counts(passes, shots);
}

double mixed_exact_pass_probability(const DensityMatrix& rho,
                                    const StateVector& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw DimensionError("mixed_exact_pass_probability: dimensions differ");
  }
  const Complex expectation =
      sigma.amplitudes.dot(rho.matrix * sigma.amplitudes);
  return (1.0 + std::clamp(expectation.real(), 0.0, 1.0)) / 2.0;
}

}  // namespace qve
