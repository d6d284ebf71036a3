#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qve/numerics.hpp"
#include "test_support.hpp"

using namespace qve;

TEST_CASE("classify_matrix picks the strictest class") {
  REQUIRE(classify_matrix(ComplexMatrix::Identity(2, 2), 1e-10) ==
          MatrixClass::Unitary);

  REQUIRE(classify_matrix(test::diagonal_matrix({0.7, 0.3}), 1e-10) ==
          MatrixClass::Density);

  ComplexMatrix nilpotent = ComplexMatrix::Zero(2, 2);
  nilpotent(0, 1) = 1.0;
  REQUIRE(classify_matrix(nilpotent, 1e-10) == MatrixClass::General);

  ComplexMatrix pauli_x(2, 2);
  pauli_x << 0, 1, 1, 0;
  REQUIRE(classify_matrix(pauli_x, 1e-10) == MatrixClass::Unitary);

  REQUIRE(classify_matrix(test::diagonal_matrix({2.0, 1.0}), 1e-10) ==
          MatrixClass::Hermitian);

  REQUIRE(classify_matrix(test::diagonal_matrix({Complex(1.0, 2.0), 1.0}),
                          1e-10) == MatrixClass::Normal);

  ComplexMatrix rect(2, 3);
  REQUIRE_THROWS_AS(classify_matrix(rect, 1e-10), DimensionError);
  REQUIRE_THROWS_AS(classify_matrix(ComplexMatrix::Identity(2, 2), 0.0),
                    ValidationError);
}

TEST_CASE("hermitize doubles Hermitian input and kills anti-Hermitian") {
  Rng rng(11);
  const ComplexMatrix u = random_unitary(4, rng);

  ComplexMatrix herm(2, 2);
  herm << 1.0, Complex(0.5, 0.25), Complex(0.5, -0.25), -2.0;
  REQUIRE((hermitize(herm) - 2.0 * herm).norm() <= 1e-14);

  const ComplexMatrix anti = Complex(0.0, 1.0) * herm;  // A^dag = -A
  REQUIRE(hermitize(anti).norm() <= 1e-14);

  for (int trial = 0; trial < 20; ++trial) {
    ComplexMatrix g(3, 3);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        g(r, c) = Complex(rng.gaussian(), rng.gaussian());
      }
    }
    REQUIRE(is_hermitian(hermitize(g), 1e-12));
  }
  (void)u;
}

TEST_CASE("hermitize of a normal matrix preserves eigenvectors") {
  Rng rng(23);
  const ComplexMatrix a = test::make_normal_with_gaps(4, 0.3, rng);
  const ComplexMatrix h = hermitize(a);

  const auto a_pairs = oracle_eigendecompose(a);
  for (const SpectralPair& p : a_pairs) {
    // Each eigenvector of A must lie in H's eigenspace for 2 Re(lambda).
    const double fid = eigenspace_fidelity(
        p.eigenvector, h, 2.0 * p.eigenvalue.real(), 1e-6);
    REQUIRE(fid >= 1.0 - 1e-8);
  }
}

TEST_CASE("unitary_from_hermitian on fixed and random inputs") {
  REQUIRE((unitary_from_hermitian(ComplexMatrix::Zero(2, 2)) -
           ComplexMatrix::Identity(2, 2))
              .norm() <= 1e-12);

  const ComplexMatrix pi_z = test::diagonal_matrix({M_PI, -M_PI});
  REQUIRE((unitary_from_hermitian(pi_z) + ComplexMatrix::Identity(2, 2))
              .norm() <= 1e-10);

  Rng rng(37);
  ComplexMatrix g(4, 4);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) g(r, c) = Complex(rng.gaussian(), rng.gaussian());
  }
  const ComplexMatrix h = (g + g.adjoint()) / 2.0;
  const ComplexMatrix u = unitary_from_hermitian(h);

  // Independent reconstruction from the oracle pairs of H.
  ComplexMatrix rebuilt = ComplexMatrix::Zero(4, 4);
  for (const SpectralPair& p : oracle_eigendecompose(h)) {
    rebuilt += std::exp(Complex(0.0, p.eigenvalue.real())) *
               (p.eigenvector * p.eigenvector.adjoint());
  }
  REQUIRE((u - rebuilt).cwiseAbs().maxCoeff() <= 1e-8);

  REQUIRE_THROWS_AS(unitary_from_hermitian(Complex(0.0, 1.0) * pi_z),
                    ValidationError);
}

TEST_CASE("unitary_from_hermitian output is unitary with unimodular det") {
  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix g(4, 4);
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        g(r, c) = Complex(rng.gaussian(), rng.gaussian());
      }
    }
    const ComplexMatrix u = unitary_from_hermitian((g + g.adjoint()) / 2.0);
    REQUIRE(is_unitary(u, 1e-10));
    REQUIRE(std::abs(std::abs(u.determinant()) - 1.0) <= 1e-8);
  }
}

TEST_CASE("oracle_eigendecompose on diagonal and textbook matrices") {
  const auto diag_pairs =
      oracle_eigendecompose(test::diagonal_matrix({2.0, 1.0}));
  REQUIRE(diag_pairs.size() == 2);
  REQUIRE(std::abs(diag_pairs[0].eigenvalue - Complex(2.0)) <= 1e-10);
  REQUIRE(std::abs(diag_pairs[1].eigenvalue - Complex(1.0)) <= 1e-10);
  REQUIRE(std::abs(std::abs(diag_pairs[0].eigenvector(0)) - 1.0) <= 1e-10);
  REQUIRE(std::abs(std::abs(diag_pairs[1].eigenvector(1)) - 1.0) <= 1e-10);

  ComplexMatrix pauli_x(2, 2);
  pauli_x << 0, 1, 1, 0;
  const auto x_pairs = oracle_eigendecompose(pauli_x);
  REQUIRE(std::abs(x_pairs[0].eigenvalue - Complex(1.0)) <= 1e-10);
  REQUIRE(std::abs(x_pairs[1].eigenvalue - Complex(-1.0)) <= 1e-10);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  REQUIRE(std::abs(std::abs(x_pairs[0].eigenvector(0)) - inv_sqrt2) <= 1e-10);
  // (1, 1)/sqrt(2) and (1, -1)/sqrt(2) up to a global phase.
  REQUIRE(std::abs(x_pairs[0].eigenvector(0) - x_pairs[0].eigenvector(1)) <=
          1e-10);
  REQUIRE(std::abs(x_pairs[1].eigenvector(0) + x_pairs[1].eigenvector(1)) <=
          1e-10);
}

TEST_CASE("oracle_eigendecompose self-checks on random unitaries") {
  Rng rng(53);
  const ComplexMatrix u = random_unitary(8, rng);
  const auto pairs = oracle_eigendecompose(u);
  REQUIRE(pairs.size() == 8);
  for (const SpectralPair& p : pairs) {
    REQUIRE((u * p.eigenvector - p.eigenvalue * p.eigenvector).norm() <=
            1e-8);
    REQUIRE(std::abs(std::abs(p.eigenvalue) - 1.0) <= 1e-8);
  }

  // Reconstruction and orthonormality.
  ComplexMatrix rebuilt = ComplexMatrix::Zero(8, 8);
  ComplexMatrix vectors(8, 8);
  for (int i = 0; i < 8; ++i) {
    rebuilt += pairs[i].eigenvalue *
               (pairs[i].eigenvector * pairs[i].eigenvector.adjoint());
    vectors.col(i) = pairs[i].eigenvector;
  }
  REQUIRE((rebuilt - u).norm() <= 1e-7);
  REQUIRE((vectors.adjoint() * vectors - ComplexMatrix::Identity(8, 8))
              .norm() <= 1e-8);
}

TEST_CASE("oracle_eigendecompose handles degenerate spectra") {
  // Fully degenerate: any orthonormal basis works.
  const auto id_pairs =
      oracle_eigendecompose(ComplexMatrix::Identity(4, 4));
  for (const SpectralPair& p : id_pairs) {
    REQUIRE(std::abs(p.eigenvalue - Complex(1.0)) <= 1e-10);
  }

  // QFT has repeated eigenvalues; residuals must still close.
  const ComplexMatrix f = test::qft_matrix(4);
  for (const SpectralPair& p : oracle_eigendecompose(f)) {
    REQUIRE((f * p.eigenvector - p.eigenvalue * p.eigenvector).norm() <=
            1e-8);
  }

  // Eigenvalues that collide in the Hermitian part alone (1 and -1 have
  // the same imaginary part; i and -i the same real part).
  const ComplexMatrix mixed = test::diagonal_matrix(
      {Complex(0, 1), Complex(0, -1), Complex(1, 0), Complex(-1, 0)});
  for (const SpectralPair& p : oracle_eigendecompose(mixed)) {
    REQUIRE((mixed * p.eigenvector - p.eigenvalue * p.eigenvector).norm() <=
            1e-8);
  }
}

TEST_CASE("oracle_eigendecompose rejects non-normal input") {
  ComplexMatrix nilpotent = ComplexMatrix::Zero(2, 2);
  nilpotent(0, 1) = 1.0;
  REQUIRE_THROWS_AS(oracle_eigendecompose(nilpotent), ValidationError);
}

TEST_CASE("oracle sort order is descending by re, then im") {
  const ComplexMatrix m = test::diagonal_matrix(
      {Complex(1, -2), Complex(1, 3), Complex(4, 0), Complex(-1, 0)});
  const auto pairs = oracle_eigendecompose(m);
  REQUIRE(std::abs(pairs[0].eigenvalue - Complex(4, 0)) <= 1e-9);
  REQUIRE(std::abs(pairs[1].eigenvalue - Complex(1, 3)) <= 1e-9);
  REQUIRE(std::abs(pairs[2].eigenvalue - Complex(1, -2)) <= 1e-9);
  REQUIRE(std::abs(pairs[3].eigenvalue - Complex(-1, 0)) <= 1e-9);
}

TEST_CASE("eigenspace_fidelity projects correctly") {
  const ComplexMatrix m = test::diagonal_matrix({3.0, 2.0, 1.0, 0.0});
  ComplexVector e0 = ComplexVector::Zero(4);
  e0(0) = 1.0;
  ComplexVector e1 = ComplexVector::Zero(4);
  e1(1) = 1.0;

  REQUIRE(eigenspace_fidelity(e0, m, Complex(3.0), 1e-6) == 1.0);
  REQUIRE(eigenspace_fidelity(e1, m, Complex(3.0), 1e-6) == 0.0);

  const ComplexVector mix = (e0 + e1) / std::sqrt(2.0);
  REQUIRE(std::abs(eigenspace_fidelity(mix, m, Complex(3.0), 1e-6) - 0.5) <=
          1e-12);

  // No eigenvalue near lambda: zero, not an error.
  REQUIRE(eigenspace_fidelity(e0, m, Complex(100.0), 1e-6) == 0.0);

  // Global phase invariance.
  Rng rng(71);
  const ComplexVector v = random_state_vector(4, rng);
  const double base = eigenspace_fidelity(v, m, Complex(2.0), 1e-6);
  for (double phi : {0.3, 1.7, 2.9}) {
    const ComplexVector rotated = std::exp(Complex(0, phi)) * v;
    REQUIRE(std::abs(eigenspace_fidelity(rotated, m, Complex(2.0), 1e-6) -
                     base) <= 1e-12);
  }
}

TEST_CASE("eigenspace_fidelity groups degenerate eigenvalues") {
  const ComplexMatrix m = test::diagonal_matrix({1.0, 1.0, -1.0, -1.0});
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = 1.0 / std::sqrt(2.0);
  v(1) = 1.0 / std::sqrt(2.0);
  REQUIRE(std::abs(eigenspace_fidelity(v, m, Complex(1.0), 1e-6) - 1.0) <=
          1e-10);
}

TEST_CASE("random_unitary is unitary and seed-stable") {
  Rng rng_a(99);
  Rng rng_b(99);
  const ComplexMatrix u1 = random_unitary(8, rng_a);
  const ComplexMatrix u2 = random_unitary(8, rng_b);
  REQUIRE(is_unitary(u1, 1e-12));
  REQUIRE((u1 - u2).norm() == 0.0);

  Rng rng_c(100);
  REQUIRE((u1 - random_unitary(8, rng_c)).norm() > 1e-3);
}

TEST_CASE("random_density is a valid density matrix") {
  Rng rng(7);
  const ComplexMatrix rho = random_density(4, rng);
  REQUIRE(classify_matrix(rho, 1e-8) == MatrixClass::Density);
}
