#include "qve/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace qve {

namespace {

Eigen::Index checked_dim(int n_qubits, int max_qubits, const char* what) {
  if (n_qubits < 0 || n_qubits > max_qubits) {
    throw ValidationError(
        "qubit_count_out_of_range",
        std::string(what) + ": qubit count must be in [0, " +
            std::to_string(max_qubits) + "], got " + std::to_string(n_qubits));
  }
  return Eigen::Index(1) << n_qubits;
}

std::uint64_t qubit_mask(int n_qubits, int qubit) {
  return std::uint64_t(1) << (n_qubits - 1 - qubit);
}

void apply_single_qubit(ComplexVector& amps, int n, int q, Complex u00,
                        Complex u01, Complex u10, Complex u11) {
  const std::uint64_t mask = qubit_mask(n, q);
  const std::uint64_t dim = std::uint64_t(amps.size());
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & mask) continue;
    const Complex a0 = amps(Eigen::Index(i));
    const Complex a1 = amps(Eigen::Index(i | mask));
    amps(Eigen::Index(i)) = u00 * a0 + u01 * a1;
    amps(Eigen::Index(i | mask)) = u10 * a0 + u11 * a1;
  }
}

void apply_gate(ComplexVector& amps, int n, const Gate& g) {
  const std::uint64_t dim = std::uint64_t(amps.size());
  switch (g.kind) {
    case GateKind::H: {
      const double s = 1.0 / std::sqrt(2.0);
      apply_single_qubit(amps, n, g.targets[0], s, s, s, -s);
      return;
    }
    case GateKind::X:
      apply_single_qubit(amps, n, g.targets[0], 0.0, 1.0, 1.0, 0.0);
      return;
    case GateKind::Z:
      apply_single_qubit(amps, n, g.targets[0], 1.0, 0.0, 0.0, -1.0);
      return;
    case GateKind::RX: {
      const Complex c(std::cos(g.angle / 2.0), 0.0);
      const Complex s(0.0, -std::sin(g.angle / 2.0));
      apply_single_qubit(amps, n, g.targets[0], c, s, s, c);
      return;
    }
    case GateKind::RY: {
      const double c = std::cos(g.angle / 2.0);
      const double s = std::sin(g.angle / 2.0);
      apply_single_qubit(amps, n, g.targets[0], c, -s, s, c);
      return;
    }
    case GateKind::CNOT: {
      const std::uint64_t cm = qubit_mask(n, g.targets[0]);
      const std::uint64_t tm = qubit_mask(n, g.targets[1]);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & cm) && !(i & tm)) {
          std::swap(amps(Eigen::Index(i)), amps(Eigen::Index(i | tm)));
        }
      }
      return;
    }
    case GateKind::CZ: {
      const std::uint64_t am = qubit_mask(n, g.targets[0]);
      const std::uint64_t bm = qubit_mask(n, g.targets[1]);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & am) && (i & bm)) amps(Eigen::Index(i)) = -amps(Eigen::Index(i));
      }
      return;
    }
    case GateKind::Toffoli: {
      const std::uint64_t c0 = qubit_mask(n, g.targets[0]);
      const std::uint64_t c1 = qubit_mask(n, g.targets[1]);
      const std::uint64_t tm = qubit_mask(n, g.targets[2]);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & c0) && (i & c1) && !(i & tm)) {
          std::swap(amps(Eigen::Index(i)), amps(Eigen::Index(i | tm)));
        }
      }
      return;
    }
    case GateKind::CSwap: {
      const std::uint64_t cm = qubit_mask(n, g.targets[0]);
      const std::uint64_t am = qubit_mask(n, g.targets[1]);
      const std::uint64_t bm = qubit_mask(n, g.targets[2]);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & cm) && (i & am) && !(i & bm)) {
          std::swap(amps(Eigen::Index(i)),
                    amps(Eigen::Index((i ^ am) | bm)));
        }
      }
      return;
    }
    case GateKind::UnitaryBlock: {
      const int k = static_cast<int>(g.targets.size());
      const std::uint64_t block = std::uint64_t(1) << k;
      std::vector<std::uint64_t> pattern(block, 0);
      std::uint64_t union_mask = 0;
      for (int j = 0; j < k; ++j) union_mask |= qubit_mask(n, g.targets[j]);
      for (std::uint64_t l = 0; l < block; ++l) {
        std::uint64_t p = 0;
        for (int j = 0; j < k; ++j) {
          if ((l >> (k - 1 - j)) & 1) p |= qubit_mask(n, g.targets[j]);
        }
        pattern[l] = p;
      }
      ComplexVector sub = ComplexVector::Zero(Eigen::Index(block));
      for (std::uint64_t base = 0; base < dim; ++base) {
        if (base & union_mask) continue;
        for (std::uint64_t l = 0; l < block; ++l) {
          sub(Eigen::Index(l)) = amps(Eigen::Index(base | pattern[l]));
        }
        ComplexVector rotated = g.matrix * sub;
        for (std::uint64_t l = 0; l < block; ++l) {
          amps(Eigen::Index(base | pattern[l])) = rotated(Eigen::Index(l));
        }
      }
      return;
    }
  }
  throw ValidationError("unknown_gate", "apply_gate: unhandled gate kind");
}

void validate_gate(const Gate& g, int n_qubits) {
  const int arity = gate_arity(g.kind);
  if (arity >= 0 && static_cast<int>(g.targets.size()) != arity) {
    throw ValidationError("gate_arity",
                          "gate target count does not match its kind");
  }
  if (g.kind == GateKind::UnitaryBlock) {
    if (g.targets.empty()) {
      throw ValidationError("gate_arity", "unitary block needs targets");
    }
    const Eigen::Index want = Eigen::Index(1)
                              << static_cast<int>(g.targets.size());
    if (g.matrix.rows() != want || g.matrix.cols() != want) {
      throw DimensionError(
          "unitary block dimension does not match its target count");
    }
  }
  for (std::size_t i = 0; i < g.targets.size(); ++i) {
    if (g.targets[i] < 0 || g.targets[i] >= n_qubits) {
      throw ValidationError("qubit_index_out_of_range",
                            "gate targets qubit " +
                                std::to_string(g.targets[i]) + " on a " +
                                std::to_string(n_qubits) + "-qubit circuit");
    }
    for (std::size_t j = i + 1; j < g.targets.size(); ++j) {
      if (g.targets[i] == g.targets[j]) {
        throw ValidationError("duplicate_target",
                              "gate addresses the same qubit twice");
      }
    }
  }
}

}  // namespace

StateVector StateVector::zero_state(int n_qubits) {
  StateVector s;
  s.n_qubits = n_qubits;
  s.amplitudes = ComplexVector::Zero(checked_dim(n_qubits, kMaxStateQubits,
                                                 "StateVector"));
  s.amplitudes(0) = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(int n_qubits, ComplexVector amps) {
  const Eigen::Index dim = checked_dim(n_qubits, kMaxStateQubits,
                                       "StateVector");
  if (amps.size() != dim) {
    throw DimensionError("StateVector: amplitude count must be 2^n_qubits");
  }
  if (!amps.allFinite()) {
    throw ValidationError("non_finite", "StateVector: NaN/Inf amplitude");
  }
  if (std::abs(amps.norm() - 1.0) > 1e-10) {
    throw ValidationError("not_normalized",
                          "StateVector: amplitudes must have unit norm");
  }
  StateVector s;
  s.n_qubits = n_qubits;
  s.amplitudes = std::move(amps);
  return s;
}

DensityMatrix DensityMatrix::from_matrix(int n_qubits, ComplexMatrix m) {
  const Eigen::Index dim = checked_dim(n_qubits, kMaxDensityQubits,
                                       "DensityMatrix");
  if (m.rows() != dim || m.cols() != dim) {
    throw DimensionError("DensityMatrix: matrix must be 2^n x 2^n");
  }
  if (!m.allFinite()) {
    throw ValidationError("non_finite", "DensityMatrix: NaN/Inf entry");
  }
  if ((m - m.adjoint()).norm() > 1e-10) {
    throw ValidationError("not_hermitian",
                          "DensityMatrix: matrix is not Hermitian");
  }
  if (std::abs(m.trace() - Complex(1.0, 0.0)) > 1e-10) {
    throw ValidationError("trace_not_one",
                          "DensityMatrix: trace must be 1");
  }
  const std::vector<SpectralPair> pairs = oracle_eigendecompose(
      ComplexMatrix((m + m.adjoint()) / 2.0));
  for (const SpectralPair& p : pairs) {
    if (p.eigenvalue.real() < -1e-10) {
      throw ValidationError("not_positive_semidefinite",
                            "DensityMatrix: negative eigenvalue " +
                                std::to_string(p.eigenvalue.real()));
    }
  }
  DensityMatrix rho;
  rho.n_qubits = n_qubits;
  rho.matrix = std::move(m);
  return rho;
}

DensityMatrix DensityMatrix::pure(const StateVector& s) {
  if (s.n_qubits > kMaxDensityQubits) {
    throw ValidationError("qubit_count_out_of_range",
                          "DensityMatrix: state too large for a density "
                          "matrix");
  }
  DensityMatrix rho;
  rho.n_qubits = s.n_qubits;
  rho.matrix = s.amplitudes * s.amplitudes.adjoint();
  return rho;
}

int gate_arity(GateKind kind) {
  switch (kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::Z:
    case GateKind::RX:
    case GateKind::RY:
      return 1;
    case GateKind::CNOT:
    case GateKind::CZ:
      return 2;
    case GateKind::Toffoli:
    case GateKind::CSwap:
      return 3;
    case GateKind::UnitaryBlock:
      return -1;
  }
  return -1;
}

Gate Gate::h(int q) { return Gate{GateKind::H, {q}, 0.0, {}}; }
Gate Gate::x(int q) { return Gate{GateKind::X, {q}, 0.0, {}}; }
Gate Gate::z(int q) { return Gate{GateKind::Z, {q}, 0.0, {}}; }
Gate Gate::rx(int q, double angle) {
  return Gate{GateKind::RX, {q}, angle, {}};
}
Gate Gate::ry(int q, double angle) {
  return Gate{GateKind::RY, {q}, angle, {}};
}
Gate Gate::cnot(int control, int target) {
  return Gate{GateKind::CNOT, {control, target}, 0.0, {}};
}
Gate Gate::cz(int a, int b) { return Gate{GateKind::CZ, {a, b}, 0.0, {}}; }
Gate Gate::toffoli(int control_a, int control_b, int target) {
  return Gate{GateKind::Toffoli, {control_a, control_b, target}, 0.0, {}};
}
Gate Gate::cswap(int control, int a, int b) {
  return Gate{GateKind::CSwap, {control, a, b}, 0.0, {}};
}
Gate Gate::unitary_block(ComplexMatrix u, std::vector<int> qubits) {
  if (!is_unitary(u, 1e-8)) {
    throw ValidationError("not_unitary",
                          "unitary_block: matrix is not unitary within 1e-8");
  }
  return Gate{GateKind::UnitaryBlock, std::move(qubits), 0.0, std::move(u)};
}

StateVector run_circuit(const Circuit& c, const StateVector& init) {
  if (init.n_qubits != c.n_qubits) {
    throw DimensionError("run_circuit: circuit is on " +
                         std::to_string(c.n_qubits) + " qubits, state on " +
                         std::to_string(init.n_qubits));
  }
  StateVector out = init;
  for (const Gate& g : c.gates) {
    validate_gate(g, c.n_qubits);
    apply_gate(out.amplitudes, c.n_qubits, g);
  }
  return out;
}

StateVector apply_unitary_block(const StateVector& s, const ComplexMatrix& u,
                                const std::vector<int>& qubits) {
  Circuit c{s.n_qubits, {Gate::unitary_block(u, qubits)}};
  return run_circuit(c, s);
}

std::map<std::string, std::int64_t> sample_basis(const StateVector& s,
                                                 std::int64_t shots,
                                                 Rng& rng) {
  if (shots < 1) {
    throw ValidationError("invalid_shots", "sample_basis: shots must be >= 1");
  }
  const Eigen::Index dim = s.dim();
  std::vector<double> cumulative(static_cast<std::size_t>(dim));
  double acc = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    acc += std::norm(s.amplitudes(i));
    cumulative[static_cast<std::size_t>(i)] = acc;
  }
  std::map<std::string, std::int64_t> counts;
  std::vector<std::int64_t> index_counts(static_cast<std::size_t>(dim), 0);
  for (std::int64_t shot = 0; shot < shots; ++shot) {
    const double r = rng.uniform() * acc;
    const auto it =
        std::upper_bound(cumulative.begin(), cumulative.end(), r);
    const std::size_t idx = std::min(
        static_cast<std::size_t>(it - cumulative.begin()),
        static_cast<std::size_t>(dim - 1));
    ++index_counts[idx];
  }
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (index_counts[static_cast<std::size_t>(i)] == 0) continue;
    std::string bits(static_cast<std::size_t>(s.n_qubits), '0');
    for (int q = 0; q < s.n_qubits; ++q) {
      if (std::uint64_t(i) & qubit_mask(s.n_qubits, q)) {
        bits[static_cast<std::size_t>(q)] = '1';
      }
    }
    counts[bits] = index_counts[static_cast<std::size_t>(i)];
  }
  return counts;
}

double pure_overlap(const StateVector& a, const StateVector& b) {
  if (a.n_qubits != b.n_qubits) {
    throw DimensionError("pure_overlap: qubit counts differ");
  }
  return std::clamp(std::norm(a.amplitudes.dot(b.amplitudes)), 0.0, 1.0);
}

double mixed_overlap(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw DimensionError("mixed_overlap: dimensions differ");
  }
  const Complex tr = (rho.matrix * sigma.matrix).trace();
  if (std::abs(tr.imag()) > 1e-10) {
    throw ValidationError("not_real",
                          "mixed_overlap: tr(rho sigma) has imaginary part " +
                              std::to_string(tr.imag()));
  }
  return std::clamp(tr.real(), 0.0, 1.0);
}

MixtureSampler::MixtureSampler(const DensityMatrix& rho)
    : n_qubits_(rho.n_qubits) {
  pairs_ = oracle_eigendecompose(
      ComplexMatrix((rho.matrix + rho.matrix.adjoint()) / 2.0));
  double total = 0.0;
  cumulative_.reserve(pairs_.size());
  for (const SpectralPair& p : pairs_) {
    total += std::max(0.0, p.eigenvalue.real());
    cumulative_.push_back(total);
  }
  if (total <= 0.0) {
    throw ValidationError("invalid_density",
                          "MixtureSampler: spectrum has no weight");
  }
  for (double& c : cumulative_) c /= total;
}

std::size_t MixtureSampler::draw_index(Rng& rng) const {
  const double r = rng.uniform();
  const auto it =
      std::upper_bound(cumulative_.begin(), cumulative_.end(), r);
  return std::min(static_cast<std::size_t>(it - cumulative_.begin()),
                  pairs_.size() - 1);
}

StateVector MixtureSampler::draw(Rng& rng) const {
  const SpectralPair& p = pairs_[draw_index(rng)];
  return StateVector::from_amplitudes(n_qubits_,
                                      p.eigenvector / p.eigenvector.norm());
}

StateVector draw_pure_from_mixture(const DensityMatrix& rho, Rng& rng) {
  return MixtureSampler(rho).draw(rng);
}

}  // namespace qve
