#pragma once

#include "qve/simulator.hpp"
#include "qve/types.hpp"

namespace qve {

using ParamVector = RealVector;

enum class Entangler { Chain, Ring };

/// Hardware-efficient trial-circuit template: per layer, an RX rotation on
/// every qubit, the CNOT entangler, then an RY rotation on every qubit.
struct AnsatzSpec {
  int n_qubits = 1;
  int n_layers = 1;
  Entangler entangler = Entangler::Chain;

  static AnsatzSpec with_default_depth(int n_qubits,
                                       Entangler entangler = Entangler::Chain);
};

/// 2 * n_qubits * n_layers: one RX and one RY angle per qubit per layer.
int param_count(const AnsatzSpec& spec);

/// Angle layout per layer l: RX angles at [2*l*n, 2*l*n + n), RY angles at
/// [2*l*n + n, 2*(l+1)*n).
Circuit build_circuit(const AnsatzSpec& spec, const ParamVector& theta);

StateVector prepare_state(const AnsatzSpec& spec, const ParamVector& theta);

/// I.i.d. angles uniform on [0, 2*pi).
ParamVector random_init(const AnsatzSpec& spec, Rng& rng);

}  // namespace qve
