#include "qve/drivers.hpp"

#include <algorithm>
#include <cmath>

#include "qve/numerics.hpp"
#include "qve/swaptest.hpp"

namespace qve {

namespace {

// Eigenvalue-distance tolerance when picking the oracle eigenspace for the
// fidelity score.
constexpr double kOracleMatchTol = 0.05;

double sampled_threshold_offset(std::int64_t shots) {
  return std::max(1e-3, 3.0 / std::sqrt(static_cast<double>(shots)));
}

/// Stop target for the minimizer. Sampled mode uses a tighter offset than
/// the convergence threshold: binomial noise shrinks as the estimate
/// approaches 1, so a noisy crossing of this target implies the true value
/// is close.
double stop_target(EvalMode mode) {
  if (mode.is_exact()) return -(1.0 - 1e-3);
  return -(1.0 -
           std::max(1e-3, 1.0 / std::sqrt(static_cast<double>(mode.shots()))));
}

struct EigSetup {
  Problem problem;
  const ComplexMatrix* report_matrix;   // Rayleigh / residual target
  const ComplexMatrix* oracle_matrix;   // eigenspace fidelity source
  bool report_rayleigh;
  bool unit_circle_spectrum;            // project lambda onto |z| = 1
};

EigResult run_eig_search(const EigSetup& setup, const AnsatzSpec& spec,
                         const OptimizerConfig& opt_cfg, EvalMode mode) {
  validate_problem(setup.problem, spec);
  Rng rng(opt_cfg.seed);

  OptimizerConfig cfg = opt_cfg;
  cfg.target_value = stop_target(mode);
  const auto objective = [&](const ParamVector& theta) {
    return to_minimization(
        objective_value(setup.problem, spec, theta, mode, rng),
        MinimizationForm::Negate);
  };
  const ParamVector theta0 = random_init(spec, rng);
  auto [theta_star, trace] = minimize(objective, theta0, cfg, rng);

  EigResult result;
  result.theta_star = theta_star;
  result.trace = std::move(trace);
  result.seed = opt_cfg.seed;
  result.objective_final = objective_value(setup.problem, spec, theta_star,
                                           EvalMode::exact(), rng);
  result.converged = result.objective_final >= convergence_threshold(mode);

  const StateVector psi = prepare_state(spec, theta_star);
  const ComplexMatrix& m = *setup.report_matrix;
  const Complex lambda = psi.amplitudes.dot(m * psi.amplitudes);
  result.residual = (m * psi.amplitudes - lambda * psi.amplitudes).norm();
  if (setup.report_rayleigh) result.rayleigh = lambda;

  Complex lambda_sel = lambda;
  if (setup.unit_circle_spectrum) {
    const double mod = std::abs(lambda);
    if (mod > 1e-12) lambda_sel = lambda / mod;
  }
  result.oracle_fidelity = eigenspace_fidelity(
      psi.amplitudes, *setup.oracle_matrix, lambda_sel, kOracleMatchTol);
  return result;
}

}  // namespace

double convergence_threshold(EvalMode mode) {
  if (mode.is_exact()) return 1.0 - 1e-3;
  return 1.0 - sampled_threshold_offset(mode.shots());
}

EigResult find_eigenvector(const ComplexMatrix& u, const AnsatzSpec& spec,
                           const OptimizerConfig& opt_cfg, EvalMode mode) {
  EigSetup setup{UnitaryEig{u}, &u, &u, true, true};
  return run_eig_search(setup, spec, opt_cfg, mode);
}

EigResult solve_generalized(const ComplexMatrix& u, const ComplexMatrix& v,
                            const AnsatzSpec& spec,
                            const OptimizerConfig& opt_cfg, EvalMode mode) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw DimensionError("solve_generalized: U and V sizes differ");
  }
  const ComplexMatrix w = u.adjoint() * v;
  EigSetup setup{Generalized{u, v}, &w, &w, false, true};
  EigResult result = run_eig_search(setup, spec, opt_cfg, mode);
  result.rayleigh.reset();
  return result;
}

EigResult find_eigenvector_normal(const ComplexMatrix& a,
                                  const AnsatzSpec& spec,
                                  const OptimizerConfig& opt_cfg,
                                  EvalMode mode) {
  const NormalEig problem = make_normal_eig(a);
  EigSetup setup{problem, &problem.a, &problem.a, true, false};
  EigResult result = run_eig_search(setup, spec, opt_cfg, mode);

  // Distinct eigenvalues of A that share Re(lambda) collapse to one
  // eigenvalue of the surrogate; the search cannot tell them apart.
  const std::vector<SpectralPair> pairs = oracle_eigendecompose(a);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      const Complex si = std::exp(Complex(0.0, 2.0 * pairs[i].eigenvalue.real()));
      const Complex sj = std::exp(Complex(0.0, 2.0 * pairs[j].eigenvalue.real()));
      if (std::abs(si - sj) < 1e-8 &&
          std::abs(pairs[i].eigenvalue - pairs[j].eigenvalue) > 1e-8) {
        result.warnings.push_back(
            "degenerate surrogate: distinct eigenvalues of A map to the "
            "same eigenvalue of e^{i(A+A^dag)}; the result is an "
            "eigenvector of the surrogate but may mix eigenvectors of A");
        i = pairs.size();
        break;
      }
    }
  }
  return result;
}

QpcaResult qpca(const DensityMatrix& rho, int k, const AnsatzSpec& spec,
                const OptimizerConfig& opt_cfg, EvalMode mode,
                double penalty_c) {
  if (k < 1 || (Eigen::Index(1) << spec.n_qubits) < k) {
    throw ValidationError("invalid_component_count",
                          "qpca: k must be in [1, dim]");
  }
  if (rho.dim() != (Eigen::Index(1) << spec.n_qubits)) {
    throw DimensionError("qpca: rho dimension does not match the ansatz");
  }
  Rng rng(opt_cfg.seed);
  QpcaResult result;
  result.seed = opt_cfg.seed;

  const std::vector<SpectralPair> oracle_pairs = oracle_eigendecompose(
      ComplexMatrix((rho.matrix + rho.matrix.adjoint()) / 2.0));

  std::vector<ParamVector> priors;
  for (int j = 0; j < k; ++j) {
    OptimizerConfig cfg = opt_cfg;
    cfg.target_value = -std::numeric_limits<double>::infinity();
    std::function<double(const ParamVector&)> objective;
    if (j == 0) {
      const Problem problem = Qpca{rho, {}, penalty_c};
      objective = [&, problem](const ParamVector& theta) {
        return to_minimization(
            objective_value(problem, spec, theta, mode, rng),
            MinimizationForm::Negate);
      };
    } else {
      objective = [&, priors](const ParamVector& theta) {
        return qpca_deflation_value(rho, spec, theta, priors, penalty_c,
                                    mode, rng)
            .value;
      };
    }
    const ParamVector theta0 = random_init(spec, rng);
    auto [theta_star, trace] = minimize(objective, theta0, cfg, rng);

    QpcaComponent component;
    component.theta = theta_star;
    const StateVector psi = prepare_state(spec, theta_star);
    const Complex t = psi.amplitudes.dot(rho.matrix * psi.amplitudes);
    component.eigenvalue_estimate = std::clamp(t.real(), 0.0, 1.0);
    component.saturated = component.eigenvalue_estimate <= kQpcaTraceFloor;
    const Complex target_eigenvalue =
        oracle_pairs[static_cast<std::size_t>(j)].eigenvalue;
    component.oracle_fidelity =
        eigenspace_fidelity(psi.amplitudes, rho.matrix, target_eigenvalue,
                            1e-6);
    result.components.push_back(std::move(component));
    result.traces.push_back(std::move(trace));
    priors.push_back(theta_star);
  }

  for (std::size_t i = 0; i < result.components.size(); ++i) {
    for (std::size_t j = i + 1; j < result.components.size(); ++j) {
      const double overlap =
          pure_overlap(prepare_state(spec, result.components[i].theta),
                       prepare_state(spec, result.components[j].theta));
      if (overlap > 0.05) {
        result.warnings.push_back(
            "components " + std::to_string(i) + " and " + std::to_string(j) +
            " overlap " + std::to_string(overlap) + " (acceptance 0.05)");
      }
    }
  }
  return result;
}

VerificationReport verify(const EigResult& result, const Problem& problem,
                          const AnsatzSpec& spec, EvalMode mode) {
  VerificationReport report;
  Rng rng(result.seed);

  const double exact = objective_value(problem, spec, result.theta_star,
                                       EvalMode::exact(), rng);
  report.checks.push_back({"objective_reproduced",
                           std::abs(exact - result.objective_final) <= 1e-12,
                           std::abs(exact - result.objective_final), 1e-12});
  const double threshold = convergence_threshold(mode);
  report.checks.push_back(
      {"converged", exact >= threshold, exact, threshold});

  const ComplexMatrix* m = nullptr;
  const ComplexMatrix* oracle_m = nullptr;
  ComplexMatrix generalized_w;
  bool unit_circle = true;
  if (const auto* p = std::get_if<UnitaryEig>(&problem)) {
    m = &p->u;
    oracle_m = &p->u;
  } else if (const auto* p = std::get_if<NormalEig>(&problem)) {
    m = &p->a;
    oracle_m = &p->a;
    unit_circle = false;
  } else if (const auto* p = std::get_if<Generalized>(&problem)) {
    generalized_w = p->u.adjoint() * p->v;
    m = &generalized_w;
    oracle_m = &generalized_w;
  } else {
    throw ValidationError("unsupported_kind",
                          "verify: EigResult requires a UnitaryEig, "
                          "Generalized or NormalEig problem");
  }

  const StateVector psi = prepare_state(spec, result.theta_star);
  const Complex lambda = psi.amplitudes.dot(*m * psi.amplitudes);
  const double residual =
      ((*m) * psi.amplitudes - lambda * psi.amplitudes).norm();
  report.checks.push_back({"residual", residual <= 0.1, residual, 0.1});

  Complex lambda_sel = lambda;
  if (unit_circle && std::abs(lambda) > 1e-12) {
    lambda_sel = lambda / std::abs(lambda);
  }
  const double fidelity = eigenspace_fidelity(psi.amplitudes, *oracle_m,
                                              lambda_sel, kOracleMatchTol);
  report.checks.push_back(
      {"oracle_fidelity", fidelity >= 0.95, fidelity, 0.95});

  report.all_passed =
      std::all_of(report.checks.begin(), report.checks.end(),
                  [](const VerificationCheck& c) { return c.passed; });
  return report;
}

VerificationReport verify(const QpcaResult& result, const DensityMatrix& rho,
                          const AnsatzSpec& spec) {
  VerificationReport report;
  const std::vector<SpectralPair> pairs = oracle_eigendecompose(
      ComplexMatrix((rho.matrix + rho.matrix.adjoint()) / 2.0));
  const double lambda1 = pairs.front().eigenvalue.real();

  std::vector<StateVector> states;
  for (std::size_t j = 0; j < result.components.size(); ++j) {
    const QpcaComponent& component = result.components[j];
    const StateVector psi = prepare_state(spec, component.theta);
    states.push_back(psi);
    const Complex t = psi.amplitudes.dot(rho.matrix * psi.amplitudes);
    const double estimate = std::clamp(t.real(), 0.0, 1.0);
    const std::string tag = "_" + std::to_string(j);
    report.checks.push_back(
        {"estimate_reproduced" + tag,
         std::abs(estimate - component.eigenvalue_estimate) <= 1e-12,
         std::abs(estimate - component.eigenvalue_estimate), 1e-12});
    report.checks.push_back({"lambda1_bound" + tag,
                             estimate <= lambda1 + 0.02, estimate,
                             lambda1 + 0.02});
    const double fidelity =
        eigenspace_fidelity(psi.amplitudes, rho.matrix,
                            pairs[j].eigenvalue, 1e-6);
    report.checks.push_back(
        {"oracle_fidelity" + tag, fidelity >= 0.95, fidelity, 0.95});
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = i + 1; j < states.size(); ++j) {
      const double overlap = pure_overlap(states[i], states[j]);
      report.checks.push_back(
          {"orthogonality_" + std::to_string(i) + "_" + std::to_string(j),
           overlap <= 0.05, overlap, 0.05});
    }
  }
  report.all_passed =
      std::all_of(report.checks.begin(), report.checks.end(),
                  [](const VerificationCheck& c) { return c.passed; });
  return report;
}

}  // namespace qve
