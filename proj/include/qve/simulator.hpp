#pragma once

#include <map>
#include <string>
#include <vector>

#include "qve/numerics.hpp"
#include "qve/types.hpp"

namespace qve {

inline constexpr int kMaxStateQubits = 24;
inline constexpr int kMaxDensityQubits = 8;

/// Pure state over n qubits. Qubit 0 is the most significant bit of the
/// basis index: |q0 q1 ... q_{n-1}> lives at index q0*2^{n-1} + ... .
struct StateVector {
  int n_qubits = 0;
  ComplexVector amplitudes;

  static StateVector zero_state(int n_qubits);
  /// Validates the 2-norm to 1e-10.
  static StateVector from_amplitudes(int n_qubits, ComplexVector amps);

  Eigen::Index dim() const { return amplitudes.size(); }
};

struct DensityMatrix {
  int n_qubits = 0;
  ComplexMatrix matrix;

  /// Validates Hermiticity and trace to 1e-10 and positive
  /// semidefiniteness to -1e-10 on the spectrum.
  static DensityMatrix from_matrix(int n_qubits, ComplexMatrix m);
  static DensityMatrix pure(const StateVector& s);

  Eigen::Index dim() const { return matrix.rows(); }
};

enum class GateKind { H, X, Z, RX, RY, CNOT, CZ, Toffoli, CSwap, UnitaryBlock };

/// Number of qubit targets a kind addresses (UnitaryBlock is variadic,
/// returns -1).
int gate_arity(GateKind kind);

struct Gate {
  GateKind kind = GateKind::H;
  std::vector<int> targets;
  double angle = 0.0;     // RX / RY only
  ComplexMatrix matrix;   // UnitaryBlock only

  static Gate h(int q);
  static Gate x(int q);
  static Gate z(int q);
  static Gate rx(int q, double angle);
  static Gate ry(int q, double angle);
  static Gate cnot(int control, int target);
  static Gate cz(int a, int b);
  static Gate toffoli(int control_a, int control_b, int target);
  static Gate cswap(int control, int a, int b);
  /// `qubits.front()` is the most significant qubit of the block. The
  /// matrix must be unitary within 1e-8.
  static Gate unitary_block(ComplexMatrix u, std::vector<int> qubits);
};

struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;
};

/// Applies the gates in order. Targets must be in range and pairwise
/// distinct within each gate.
StateVector run_circuit(const Circuit& c, const StateVector& init);

/// U on the listed qubits (first listed = most significant), identity
/// elsewhere.
StateVector apply_unitary_block(const StateVector& s, const ComplexMatrix& u,
                                const std::vector<int>& qubits);

/// Computational-basis sampling. Keys are bitstrings with qubit 0 first.
std::map<std::string, std::int64_t> sample_basis(const StateVector& s,
                                                 std::int64_t shots, Rng& rng);

/// |<a|b>|^2.
double pure_overlap(const StateVector& a, const StateVector& b);

/// tr(rho sigma), clamped to [0, 1].
double mixed_overlap(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Draws eigenvector v_i of rho with probability lambda_i.
StateVector draw_pure_from_mixture(const DensityMatrix& rho, Rng& rng);

/// Spectral sampler for a density matrix; decomposes once, draws cheaply.
class MixtureSampler {
 public:
  explicit MixtureSampler(const DensityMatrix& rho);

  const std::vector<SpectralPair>& components() const { return pairs_; }
  std::size_t draw_index(Rng& rng) const;
  StateVector draw(Rng& rng) const;

 private:
  int n_qubits_;
  std::vector<SpectralPair> pairs_;
  std::vector<double> cumulative_;
};

}  // namespace qve
