#include "qve/optical.hpp"

#include <bit>
#include <cmath>

namespace qve {

QuditState QuditState::from_amplitudes(ComplexVector amps) {
  if (amps.size() < 1) {
    throw DimensionError("QuditState: dimension must be positive");
  }
  if (!amps.allFinite()) {
    throw ValidationError("non_finite", "QuditState: NaN/Inf amplitude");
  }
  if (std::abs(amps.norm() - 1.0) > 1e-10) {
    throw ValidationError("not_normalized",
                          "QuditState: amplitudes must have unit norm");
  }
  QuditState q;
  q.dim = static_cast<int>(amps.size());
  q.amplitudes = std::move(amps);
  return q;
}

QuditState QuditState::from_state(const StateVector& s) {
  return from_amplitudes(s.amplitudes);
}

StateVector qudit_to_state(const QuditState& q) {
  const auto d = static_cast<std::uint64_t>(q.dim);
  if (!std::has_single_bit(d)) {
    throw ValidationError("not_power_of_two",
                          "qudit dimension must be a power of two to map "
                          "onto qubits");
  }
  const int n_qubits = std::bit_width(d) - 1;
  return StateVector::from_amplitudes(n_qubits, q.amplitudes);
}

double coincidence_probability(const DensityMatrix& rho,
                               const DensityMatrix& sigma) {
  return (1.0 - mixed_overlap(rho, sigma)) / 2.0;
}

TestStats sample_coincidences(const DensityMatrix& rho,
                              const DensityMatrix& sigma, std::int64_t shots,
                              Rng& rng) {
  if (shots < 1) {
    throw ValidationError("invalid_shots",
                          "sample_coincidences: shots must be >= 1");
  }
  const double p_c = coincidence_probability(rho, sigma);
  std::int64_t coincidences = 0;
  for (std::int64_t s = 0; s < shots; ++s) {
    if (rng.uniform() < p_c) ++coincidences;
  }
  return TestStats::from_counts(shots - coincidences, shots);
}

QuditState photon_evolution(const ComplexMatrix& s, const QuditState& psi) {
  if (s.rows() != s.cols() || s.rows() != psi.amplitudes.size()) {
    throw DimensionError("photon_evolution: scattering matrix does not match "
                         "the qudit dimension");
  }
  if (!is_unitary(s, 1e-8)) {
    throw ValidationError("not_unitary",
                          "photon_evolution: scattering matrix must be "
                          "unitary within 1e-8");
  }
  ComplexVector out = s * psi.amplitudes;
  const double norm = out.norm();
  if (std::abs(norm - 1.0) > 1e-10) {
    out /= norm;
  }
  return QuditState::from_amplitudes(std::move(out));
}

}  // namespace qve
