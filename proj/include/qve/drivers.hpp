#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qve/objectives.hpp"
#include "qve/optimizer.hpp"

namespace qve {

/// Convergence thresholds: exact mode 1 - 1e-3, sampled mode
/// 1 - max(1e-3, 3/sqrt(shots)).
double convergence_threshold(EvalMode mode);

struct EigResult {
  ParamVector theta_star;
  /// Exact objective re-evaluated at theta_star (also in sampled mode).
  double objective_final = 0.0;
  /// <psi|M|psi> for M = U or A; absent for the generalized problem.
  std::optional<Complex> rayleigh;
  /// ||M psi - lambda psi|| with lambda the Rayleigh quotient (M = U^dag V
  /// for the generalized problem).
  double residual = 0.0;
  /// Projection onto the oracle eigenspace nearest the Rayleigh estimate.
  double oracle_fidelity = 0.0;
  bool converged = false;
  OptimizationTrace trace;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;
};

struct QpcaComponent {
  ParamVector theta;
  double eigenvalue_estimate = 0.0;  // exact tr(rho sigma(theta))
  double oracle_fidelity = 0.0;
  bool saturated = false;
};

struct QpcaResult {
  std::vector<QpcaComponent> components;  // in found order
  std::vector<OptimizationTrace> traces;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;
};

EigResult find_eigenvector(const ComplexMatrix& u, const AnsatzSpec& spec,
                           const OptimizerConfig& opt_cfg, EvalMode mode);

EigResult solve_generalized(const ComplexMatrix& u, const ComplexMatrix& v,
                            const AnsatzSpec& spec,
                            const OptimizerConfig& opt_cfg, EvalMode mode);

/// Runs find_eigenvector on the surrogate e^{i(A + A^dag)}; Rayleigh
/// quotient, residual and oracle fidelity are computed against A itself.
/// When distinct eigenvalues of A collapse to the same surrogate
/// eigenvalue, a "degenerate surrogate" warning is attached: the found
/// vector is an eigenvector of the surrogate but possibly not of A.
EigResult find_eigenvector_normal(const ComplexMatrix& a,
                                  const AnsatzSpec& spec,
                                  const OptimizerConfig& opt_cfg,
                                  EvalMode mode);

/// Finds k components successively: the first maximizes tr(rho sigma),
/// later ones minimize the deflated objective against all earlier
/// components. Components with pairwise overlap above 0.05 are flagged in
/// the warnings.
QpcaResult qpca(const DensityMatrix& rho, int k, const AnsatzSpec& spec,
                const OptimizerConfig& opt_cfg, EvalMode mode,
                double penalty_c = 10.0);

struct VerificationCheck {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
};

struct VerificationReport {
  std::vector<VerificationCheck> checks;
  bool all_passed = false;
};

VerificationReport verify(const EigResult& result, const Problem& problem,
                          const AnsatzSpec& spec, EvalMode mode);

VerificationReport verify(const QpcaResult& result, const DensityMatrix& rho,
                          const AnsatzSpec& spec);

}  // namespace qve
