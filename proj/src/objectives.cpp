#include "qve/objectives.hpp"

#include <algorithm>
#include <cmath>

#include "qve/numerics.hpp"
#include "qve/swaptest.hpp"

namespace qve {

namespace {

void require_dim(const ComplexMatrix& m, const AnsatzSpec& spec,
                 const char* what) {
  const Eigen::Index want = Eigen::Index(1) << spec.n_qubits;
  if (m.rows() != want || m.cols() != want) {
    throw DimensionError(std::string(what) + ": matrix dimension " +
                         std::to_string(m.rows()) + " does not match 2^" +
                         std::to_string(spec.n_qubits));
  }
}

StateVector apply_full_matrix(const ComplexMatrix& m, const StateVector& s) {
  ComplexVector out = m * s.amplitudes;
  const double norm = out.norm();
  if (std::abs(norm - 1.0) > 1e-8) {
    throw ValidationError("not_unitary",
                          "matrix application changed the state norm");
  }
  return StateVector::from_amplitudes(s.n_qubits, out / norm);
}

double exact_squared_expectation(const ComplexMatrix& m,
                                 const StateVector& s) {
  return std::clamp(std::norm(s.amplitudes.dot(m * s.amplitudes)), 0.0, 1.0);
}

double qpca_trace(const DensityMatrix& rho, const StateVector& s,
                  EvalMode mode, Rng& rng) {
  if (mode.is_exact()) {
    const Complex t = s.amplitudes.dot(rho.matrix * s.amplitudes);
    return std::clamp(t.real(), 0.0, 1.0);
  }
  return mixed_swap_test(rho, s, mode.shots(), rng).z_hat;
}

}  // namespace

NormalEig make_normal_eig(const ComplexMatrix& a) {
  if (!is_normal(a, kDefaultClassifyTol)) {
    throw ValidationError("not_normal",
                          "make_normal_eig: matrix is not normal within 1e-8");
  }
  return NormalEig{a, unitary_from_hermitian(hermitize(a))};
}

void validate_problem(const Problem& problem, const AnsatzSpec& spec) {
  if (const auto* p = std::get_if<UnitaryEig>(&problem)) {
    require_dim(p->u, spec, "UnitaryEig");
    if (!is_unitary(p->u, kDefaultClassifyTol)) {
      throw ValidationError("not_unitary",
                            "UnitaryEig: matrix is not unitary within 1e-8");
    }
  } else if (const auto* p = std::get_if<Generalized>(&problem)) {
    require_dim(p->u, spec, "Generalized");
    require_dim(p->v, spec, "Generalized");
    if (!is_unitary(p->u, kDefaultClassifyTol) ||
        !is_unitary(p->v, kDefaultClassifyTol)) {
      throw ValidationError("not_unitary",
                            "Generalized: U and V must be unitary within 1e-8");
    }
  } else if (const auto* p = std::get_if<NormalEig>(&problem)) {
    require_dim(p->a, spec, "NormalEig");
    if (!is_normal(p->a, kDefaultClassifyTol)) {
      throw ValidationError("not_normal",
                            "NormalEig: matrix is not normal within 1e-8");
    }
    require_dim(p->surrogate, spec, "NormalEig surrogate");
    if (!is_unitary(p->surrogate, 1e-8)) {
      throw ValidationError("not_unitary",
                            "NormalEig: surrogate is not unitary (build the "
                            "problem via make_normal_eig)");
    }
  } else if (const auto* p = std::get_if<Qpca>(&problem)) {
    require_dim(p->rho.matrix, spec, "Qpca");
    if (p->penalty_c < 0.0) {
      throw ValidationError("invalid_penalty",
                            "Qpca: penalty must be non-negative");
    }
    for (const ParamVector& prior : p->prior_components) {
      if (prior.size() != param_count(spec)) {
        throw ValidationError("param_count_mismatch",
                              "Qpca: prior component has wrong length");
      }
    }
  }
}

EvalMode EvalMode::sampled(std::int64_t shots) {
  if (shots < 1) {
    throw ValidationError("invalid_shots",
                          "EvalMode: sampled mode needs shots >= 1");
  }
  return EvalMode(shots);
}

double objective_value(const Problem& problem, const AnsatzSpec& spec,
                       const ParamVector& theta, EvalMode mode, Rng& rng) {
  validate_problem(problem, spec);
  const StateVector psi = prepare_state(spec, theta);

  if (const auto* p = std::get_if<UnitaryEig>(&problem)) {
    if (mode.is_exact()) return exact_squared_expectation(p->u, psi);
    const StateVector u_psi = apply_full_matrix(p->u, psi);
    return destructive_swap_test(u_psi, psi, mode.shots(), rng).z_hat;
  }
  if (const auto* p = std::get_if<Generalized>(&problem)) {
    if (mode.is_exact()) {
      return exact_squared_expectation(
          ComplexMatrix(p->u.adjoint() * p->v), psi);
    }
    const StateVector u_psi = apply_full_matrix(p->u, psi);
    const StateVector v_psi = apply_full_matrix(p->v, psi);
    return destructive_swap_test(u_psi, v_psi, mode.shots(), rng).z_hat;
  }
  if (const auto* p = std::get_if<NormalEig>(&problem)) {
    if (mode.is_exact()) return exact_squared_expectation(p->surrogate, psi);
    const StateVector u_psi = apply_full_matrix(p->surrogate, psi);
    return destructive_swap_test(u_psi, psi, mode.shots(), rng).z_hat;
  }
  const auto& p = std::get<Qpca>(problem);
  return qpca_trace(p.rho, psi, mode, rng);
}

DeflationValue qpca_deflation_value(const DensityMatrix& rho,
                                    const AnsatzSpec& spec,
                                    const ParamVector& theta,
                                    const std::vector<ParamVector>& priors,
                                    double penalty_c, EvalMode mode,
                                    Rng& rng) {
  if (penalty_c < 0.0) {
    throw ValidationError("invalid_penalty",
                          "qpca_deflation_value: penalty must be >= 0");
  }
  const StateVector psi = prepare_state(spec, theta);
  const double t = qpca_trace(rho, psi, mode, rng);

  DeflationValue out;
  out.saturated = t <= kQpcaTraceFloor;
  out.value = 1.0 / std::max(t, kQpcaTraceFloor);
  for (const ParamVector& prior : priors) {
    const StateVector prior_state = prepare_state(spec, prior);
    double overlap = 0.0;
    if (mode.is_exact()) {
      overlap = pure_overlap(psi, prior_state);
    } else {
      // Same shot budget as the main term, per the uniform-noise policy.
      overlap = destructive_swap_test(psi, prior_state, mode.shots(), rng)
                    .z_hat;
    }
    out.value += penalty_c * overlap;
  }
  return out;
}

double to_minimization(double value, MinimizationForm form, bool* saturated) {
  if (saturated != nullptr) *saturated = false;
  if (form == MinimizationForm::Negate) return -value;
  if (std::abs(value) <= 1e-9) {
    if (saturated != nullptr) *saturated = true;
    return (std::signbit(value) ? -1.0 : 1.0) * 1e9;
  }
  return 1.0 / value;
}

Complex rayleigh_quotient(const Problem& problem, const AnsatzSpec& spec,
                          const ParamVector& theta) {
  const ComplexMatrix* m = nullptr;
  if (const auto* p = std::get_if<UnitaryEig>(&problem)) {
    m = &p->u;
  } else if (const auto* p = std::get_if<NormalEig>(&problem)) {
    m = &p->a;
  } else {
    throw ValidationError("unsupported_kind",
                          "rayleigh_quotient: defined for UnitaryEig and "
                          "NormalEig problems only");
  }
  validate_problem(problem, spec);
  const StateVector psi = prepare_state(spec, theta);
  return psi.amplitudes.dot(*m * psi.amplitudes);
}

}  // namespace qve
