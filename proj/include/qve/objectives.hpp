#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "qve/ansatz.hpp"
#include "qve/simulator.hpp"
#include "qve/types.hpp"

namespace qve {

/// Eigenvector search for a unitary: f(theta) = |<psi(theta)|U|psi(theta)>|^2.
struct UnitaryEig {
  ComplexMatrix u;
};

/// Generalized problem U|e> = lambda V|e>: f = |<psi|U^dag V|psi>|^2.
struct Generalized {
  ComplexMatrix u;
  ComplexMatrix v;
};

/// Normal matrix A via the unitary surrogate e^{i(A + A^dag)}, which shares
/// A's eigenvectors. Build through `make_normal_eig` so the surrogate is
/// constructed (and A validated) once.
struct NormalEig {
  ComplexMatrix a;
  ComplexMatrix surrogate;
};

NormalEig make_normal_eig(const ComplexMatrix& a);

/// Principal-component search on rho: f = tr(rho sigma(theta)), optionally
/// deflated against previously found components.
struct Qpca {
  DensityMatrix rho;
  std::vector<ParamVector> prior_components;
  double penalty_c = 10.0;
};

using Problem = std::variant<UnitaryEig, Generalized, NormalEig, Qpca>;

/// Throws unless the problem matrices have the classes and the dimension the
/// spec requires (2^n_qubits, unitary/normal/density at 1e-8).
void validate_problem(const Problem& problem, const AnsatzSpec& spec);

class EvalMode {
 public:
  static EvalMode exact() { return EvalMode(0); }
  static EvalMode sampled(std::int64_t shots);

  bool is_exact() const { return shots_ == 0; }
  std::int64_t shots() const { return shots_; }

 private:
  explicit EvalMode(std::int64_t shots) : shots_(shots) {}
  std::int64_t shots_;
};

/// The maximization objective f(theta). Exact values lie in [0, 1]; sampled
/// values are z_hat estimates in [-1, 1].
double objective_value(const Problem& problem, const AnsatzSpec& spec,
                       const ParamVector& theta, EvalMode mode, Rng& rng);

inline constexpr double kQpcaTraceFloor = 1e-6;

struct DeflationValue {
  double value = 0.0;
  /// Set when the trace estimate hit the floor: the trial state is nearly
  /// orthogonal to rho's support.
  bool saturated = false;
};

/// Deflated QPCA objective 1/max(t, floor) + C * sum_j |<psi|psi_j>|^2,
/// minimized to find the component after the priors.
DeflationValue qpca_deflation_value(const DensityMatrix& rho,
                                    const AnsatzSpec& spec,
                                    const ParamVector& theta,
                                    const std::vector<ParamVector>& priors,
                                    double penalty_c, EvalMode mode, Rng& rng);

enum class MinimizationForm { Negate, Reciprocal };

/// Negate: -f. Reciprocal: 1/f, saturated at sign * 1e9 near zero (the
/// optional flag reports saturation).
double to_minimization(double value, MinimizationForm form,
                       bool* saturated = nullptr);

/// <psi(theta)|M|psi(theta)> with M = U (UnitaryEig) or A (NormalEig);
/// equals the eigenvalue at an exact eigenvector. Other kinds are
/// unsupported.
Complex rayleigh_quotient(const Problem& problem, const AnsatzSpec& spec,
                          const ParamVector& theta);

}  // namespace qve
