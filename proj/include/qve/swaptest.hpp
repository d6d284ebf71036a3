#pragma once

#include <cstdint>

#include "qve/simulator.hpp"
#include "qve/types.hpp"

namespace qve {

/// Pass/fail tallies of a SWAP-style test with the derived estimators.
/// z_hat = p0_hat - p1_hat is an unbiased estimate of the squared overlap.
struct TestStats {
  std::int64_t shots = 0;
  std::int64_t passes = 0;
  std::int64_t fails = 0;
  double p0_hat = 0.0;
  double p1_hat = 0.0;
  double z_hat = 0.0;
  double p0_stderr = 0.0;  // one binomial standard error
  double z_stderr = 0.0;

  static TestStats from_counts(std::int64_t passes, std::int64_t shots);
};

/// Ancilla-based SWAP test: H, transversal CSWAP, H, then the ancilla is
/// measured; pass = ancilla 0. E[p0_hat] = (1 + |<a|b>|^2) / 2.
TestStats full_swap_test(const StateVector& a, const StateVector& b,
                         std::int64_t shots, Rng& rng);

/// Ancilla-free test: per qubit pair, CNOT controlled by the b-register
/// qubit targeting the a-register qubit, then H on the b-register qubit;
/// all 2n qubits are measured and a shot passes iff the bitwise AND of the
/// two result strings has even parity. Statistics match the full test.
TestStats destructive_swap_test(const StateVector& a, const StateVector& b,
                                std::int64_t shots, Rng& rng);

/// (1 + |<a|b>|^2) / 2, no sampling.
double exact_pass_probability(const StateVector& a, const StateVector& b);

/// Pass probability computed by simulating the ancilla circuit.
double full_test_pass_probability(const StateVector& a, const StateVector& b);

/// Pass probability computed by simulating the ancilla-free circuit and
/// summing the even-AND-parity outcomes.
double destructive_test_pass_probability(const StateVector& a,
                                         const StateVector& b);

/// Per shot, draws a pure state from rho and runs one destructive-test shot
/// against sigma. E[p0_hat] = (1 + tr(rho |sigma><sigma|)) / 2.
TestStats mixed_swap_test(const DensityMatrix& rho, const StateVector& sigma,
                          std::int64_t shots, Rng& rng);

/// (1 + tr(rho |sigma><sigma|)) / 2, no sampling.
double mixed_exact_pass_probability(const DensityMatrix& rho,
                                    const StateVector& sigma);

}  // namespace qve
