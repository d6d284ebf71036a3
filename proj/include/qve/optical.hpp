#pragma once

#include <cstdint>

#include "qve/simulator.hpp"
#include "qve/swaptest.hpp"
#include "qve/types.hpp"

namespace qve {

/// Single photon distributed over d orthogonal modes (time bins). Dimension
/// is restricted to powers of two so the state maps onto the qubit
/// simulator's basis.
struct QuditState {
  int dim = 2;
  ComplexVector amplitudes;

  static QuditState from_amplitudes(ComplexVector amps);
  static QuditState from_state(const StateVector& s);
};

/// Requires the qudit dimension to be a power of two.
StateVector qudit_to_state(const QuditState& q);

/// Two-photon coincidence probability at a balanced beamsplitter,
/// (1 - tr(rho sigma)) / 2: exactly the probability of failing a SWAP test.
double coincidence_probability(const DensityMatrix& rho,
                               const DensityMatrix& sigma);

/// Bernoulli coincidence counting; a coincidence is recorded as a SWAP-test
/// failure, so `fails` holds the coincidence count.
TestStats sample_coincidences(const DensityMatrix& rho,
                              const DensityMatrix& sigma, std::int64_t shots,
                              Rng& rng);

/// One-photon evolution through a linear-optics network: the scattering
/// matrix applied directly, U = S.
QuditState photon_evolution(const ComplexMatrix& s, const QuditState& psi);

}  // namespace qve
