#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qve/objectives.hpp"
#include "qve/optimizer.hpp"
#include "test_support.hpp"

using namespace qve;

namespace {

const AnsatzSpec kOneQubit{1, 1, Entangler::Chain};

/// Angles (alpha, beta) with RY(beta) RX(alpha)|0> equal to v up to a
/// global phase, from the Bloch coordinates of v.
ParamVector solve_one_qubit_angles(const ComplexVector& v) {
  const double x = 2.0 * std::real(std::conj(v(0)) * v(1));
  const double y = 2.0 * std::imag(std::conj(v(0)) * v(1));
  const double z = std::norm(v(0)) - std::norm(v(1));
  ParamVector theta(2);
  theta << std::asin(std::clamp(-y, -1.0, 1.0)), std::atan2(x, z);
  return theta;
}

ComplexMatrix pauli_z() { return test::diagonal_matrix({1.0, -1.0}); }

}  // namespace

TEST_CASE("identity unitary scores 1 for any parameters") {
  Rng rng(3);
  const AnsatzSpec spec{2, 2, Entangler::Chain};
  const Problem problem = UnitaryEig{ComplexMatrix::Identity(4, 4)};
  for (int i = 0; i < 5; ++i) {
    const ParamVector theta = random_init(spec, rng);
    REQUIRE(std::abs(objective_value(problem, spec, theta,
                                     EvalMode::exact(), rng) -
                     1.0) <= 1e-12);
  }
}

TEST_CASE("Z objective vanishes on |+>") {
  Rng rng(5);
  ParamVector theta(2);
  theta << 0.0, M_PI / 2.0;  // RY(pi/2)|0> = |+>
  const Problem problem = UnitaryEig{pauli_z()};
  REQUIRE(std::abs(objective_value(problem, kOneQubit, theta,
                                   EvalMode::exact(), rng)) <= 1e-12);
}

TEST_CASE("objective reaches 1 at an analytically solved eigenvector") {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix u = random_unitary(2, rng);
    const auto pairs = oracle_eigendecompose(u);
    for (const SpectralPair& p : pairs) {
      const ParamVector theta = solve_one_qubit_angles(p.eigenvector);
      const double value = objective_value(UnitaryEig{u}, kOneQubit, theta,
                                           EvalMode::exact(), rng);
      REQUIRE(value >= 1.0 - 1e-8);
    }
  }
}

TEST_CASE("exact objective never exceeds 1") {
  Rng rng(11);
  const AnsatzSpec spec{2, 2, Entangler::Chain};
  const ComplexMatrix u = random_unitary(4, rng);
  const ComplexMatrix v = random_unitary(4, rng);
  const ComplexMatrix a = test::make_normal_with_gaps(4, 0.2, rng);
  const DensityMatrix rho =
      DensityMatrix::from_matrix(2, random_density(4, rng));
  const std::vector<Problem> problems = {
      UnitaryEig{u}, Generalized{u, v}, make_normal_eig(a),
      Qpca{rho, {}, 10.0}};
  for (const Problem& problem : problems) {
    for (int i = 0; i < 10; ++i) {
      const ParamVector theta = random_init(spec, rng);
      const double value =
          objective_value(problem, spec, theta, EvalMode::exact(), rng);
      REQUIRE(value <= 1.0);
      REQUIRE(value >= 0.0);
    }
  }
}

TEST_CASE("generalized objective with V = I reduces to the plain one") {
  Rng rng(13);
  const AnsatzSpec spec{2, 2, Entangler::Chain};
  const ComplexMatrix u = random_unitary(4, rng);
  const Problem plain = UnitaryEig{u};
  const Problem general = Generalized{u.adjoint(), ComplexMatrix::Identity(4, 4)};
  // |<psi|(U^dag)^dag I|psi>|^2 = |<psi|U|psi>|^2.
  for (int i = 0; i < 10; ++i) {
    const ParamVector theta = random_init(spec, rng);
    const double a =
        objective_value(plain, spec, theta, EvalMode::exact(), rng);
    const double b =
        objective_value(general, spec, theta, EvalMode::exact(), rng);
    REQUIRE(std::abs(a - b) <= 1e-12);
  }
}

TEST_CASE("normal-matrix objective equals the surrogate unitary objective") {
  Rng rng(17);
  const AnsatzSpec spec{2, 2, Entangler::Chain};
  const ComplexMatrix a = test::make_normal_with_gaps(4, 0.2, rng);
  const NormalEig normal = make_normal_eig(a);
  const Problem surrogate_problem = UnitaryEig{normal.surrogate};
  const Problem normal_problem = normal;
  for (int i = 0; i < 10; ++i) {
    const ParamVector theta = random_init(spec, rng);
    REQUIRE(std::abs(objective_value(normal_problem, spec, theta,
                                     EvalMode::exact(), rng) -
                     objective_value(surrogate_problem, spec, theta,
                                     EvalMode::exact(), rng)) <= 1e-10);
  }
}

TEST_CASE("qpca objective is bounded by the top eigenvalue") {
  Rng rng(19);
  const AnsatzSpec spec{2, 2, Entangler::Chain};
  const DensityMatrix rho =
      DensityMatrix::from_matrix(2, random_density(4, rng));
  const double lambda1 =
      oracle_eigendecompose(rho.matrix).front().eigenvalue.real();
  const Problem problem = Qpca{rho, {}, 10.0};
  for (int i = 0; i < 200; ++i) {
    const ParamVector theta = random_init(spec, rng);
    REQUIRE(objective_value(problem, spec, theta, EvalMode::exact(), rng) <=
            lambda1 + 1e-10);
  }
}

TEST_CASE("sampled objective tracks the exact value") {
  Rng rng(23);
  const AnsatzSpec spec{2, 1, Entangler::Chain};
  const EvalMode sampled = EvalMode::sampled(100000);
  int checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    Problem problem = UnitaryEig{random_unitary(4, rng)};
    if (trial % 3 == 1) {
      problem = Generalized{random_unitary(4, rng), random_unitary(4, rng)};
    } else if (trial % 3 == 2) {
      problem =
          Qpca{DensityMatrix::from_matrix(2, random_density(4, rng)), {}, 10.0};
    }
    const ParamVector theta = random_init(spec, rng);
    const double exact =
        objective_value(problem, spec, theta, EvalMode::exact(), rng);
    const double estimate =
        objective_value(problem, spec, theta, sampled, rng);
    REQUIRE(std::abs(exact - estimate) <= 0.02);
    ++checked;
  }
  REQUIRE(checked == 50);
}

TEST_CASE("objective validates problem matrices and dimensions") {
  Rng rng(29);
  const AnsatzSpec spec{2, 1, Entangler::Chain};
  const ParamVector theta = ParamVector::Zero(param_count(spec));
  REQUIRE_THROWS_AS(
      objective_value(UnitaryEig{ComplexMatrix::Identity(2, 2)}, spec, theta,
                      EvalMode::exact(), rng),
      DimensionError);
  REQUIRE_THROWS_AS(
      objective_value(UnitaryEig{ComplexMatrix::Identity(4, 4) * 2.0}, spec,
                      theta, EvalMode::exact(), rng),
      ValidationError);
  REQUIRE_THROWS_AS(EvalMode::sampled(0), ValidationError);
}

TEST_CASE("deflation value on matching and penalized parameters") {
  Rng rng(31);
  ParamVector theta(2);
  theta << 1.234, -0.521;
  const DensityMatrix rho =
      DensityMatrix::pure(prepare_state(kOneQubit, theta));

  // No priors, ansatz matches rho exactly: 1 / 1 + 0.
  const DeflationValue base = qpca_deflation_value(
      rho, kOneQubit, theta, {}, 10.0, EvalMode::exact(), rng);
  REQUIRE(std::abs(base.value - 1.0) <= 1e-10);
  REQUIRE_FALSE(base.saturated);

  // One prior equal to theta itself: 1 / 1 + 10 * 1.
  const DeflationValue penalized = qpca_deflation_value(
      rho, kOneQubit, theta, {theta}, 10.0, EvalMode::exact(), rng);
  REQUIRE(std::abs(penalized.value - 11.0) <= 1e-10);
}

TEST_CASE("deflation arithmetic on diag(0.7, 0.3)") {
  Rng rng(37);
  const DensityMatrix rho =
      DensityMatrix::from_matrix(1, test::diagonal_matrix({0.7, 0.3}));
  ParamVector zero_theta(2);
  zero_theta << 0.0, 0.0;  // prepares |0>
  ParamVector one_theta(2);
  one_theta << M_PI, 0.0;  // prepares |1> up to phase

  const DeflationValue v = qpca_deflation_value(
      rho, kOneQubit, one_theta, {zero_theta}, 10.0, EvalMode::exact(), rng);
  REQUIRE(std::abs(v.value - 1.0 / 0.3) <= 1e-9);
  REQUIRE_FALSE(v.saturated);
}

TEST_CASE("deflation saturates when the trial leaves rho's support") {
  Rng rng(41);
  const DensityMatrix rho =
      DensityMatrix::pure(StateVector::zero_state(1));
  ParamVector one_theta(2);
  one_theta << M_PI, 0.0;
  const DeflationValue v = qpca_deflation_value(
      rho, kOneQubit, one_theta, {}, 10.0, EvalMode::exact(), rng);
  REQUIRE(v.saturated);
  REQUIRE(v.value >= 1e5);
}

TEST_CASE("to_minimization forms") {
  REQUIRE(to_minimization(1.0, MinimizationForm::Negate) == -1.0);
  REQUIRE(to_minimization(0.5, MinimizationForm::Reciprocal) == 2.0);
  REQUIRE(to_minimization(-0.25, MinimizationForm::Negate) == 0.25);

  bool saturated = false;
  REQUIRE(to_minimization(1e-12, MinimizationForm::Reciprocal, &saturated) ==
          1e9);
  REQUIRE(saturated);
  REQUIRE(to_minimization(-1e-12, MinimizationForm::Reciprocal, &saturated) ==
          -1e9);
  REQUIRE(saturated);
  REQUIRE(to_minimization(0.5, MinimizationForm::Reciprocal, &saturated) ==
          2.0);
  REQUIRE_FALSE(saturated);
}

TEST_CASE("rayleigh quotient at computational basis states") {
  Rng rng(43);
  const Problem problem = UnitaryEig{pauli_z()};
  ParamVector zero_theta(2);
  zero_theta << 0.0, 0.0;
  ParamVector one_theta(2);
  one_theta << M_PI, 0.0;
  REQUIRE(std::abs(rayleigh_quotient(problem, kOneQubit, zero_theta) -
                   Complex(1.0)) <= 1e-12);
  REQUIRE(std::abs(rayleigh_quotient(problem, kOneQubit, one_theta) -
                   Complex(-1.0)) <= 1e-12);

  REQUIRE_THROWS_AS(
      rayleigh_quotient(Generalized{pauli_z(), pauli_z()}, kOneQubit,
                        zero_theta),
      ValidationError);
  const DensityMatrix rho =
      DensityMatrix::pure(StateVector::zero_state(1));
  REQUIRE_THROWS_AS(rayleigh_quotient(Qpca{rho, {}, 1.0}, kOneQubit,
                                      zero_theta),
                    ValidationError);
}

TEST_CASE("rayleigh quotient approaches an eigenvalue at high objective") {
  Rng rng(47);
  const ComplexMatrix u = random_unitary(4, rng);
  const AnsatzSpec spec{2, 3, Entangler::Chain};
  const Problem problem = UnitaryEig{u};

  OptimizerConfig cfg;
  cfg.max_evals = 4000;
  cfg.restarts = 5;
  cfg.target_value = -(1.0 - 1e-6);
  cfg.seed = 0;
  const auto objective = [&](const ParamVector& theta) {
    return to_minimization(
        objective_value(problem, spec, theta, EvalMode::exact(), rng),
        MinimizationForm::Negate);
  };
  auto [theta, trace] = minimize(objective, random_init(spec, rng), cfg, rng);
  REQUIRE(-trace.best_value >= 0.999);

  const Complex lambda = rayleigh_quotient(problem, spec, theta);
  double best_gap = 1e9;
  for (const SpectralPair& p : oracle_eigendecompose(u)) {
    best_gap = std::min(best_gap, std::abs(lambda - p.eigenvalue));
  }
  REQUIRE(best_gap <= 1e-3);
}
