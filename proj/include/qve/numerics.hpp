#pragma once

#include <vector>

#include "qve/types.hpp"

namespace qve {

enum class MatrixClass { Unitary, Hermitian, Normal, Density, General };

inline constexpr double kDefaultClassifyTol = 1e-8;

/// Frobenius-norm membership tests for the individual classes.
bool is_unitary(const ComplexMatrix& m, double tol = kDefaultClassifyTol);
bool is_hermitian(const ComplexMatrix& m, double tol = kDefaultClassifyTol);
bool is_normal(const ComplexMatrix& m, double tol = kDefaultClassifyTol);
bool is_density(const ComplexMatrix& m, double tol = kDefaultClassifyTol);

/// Strictest class whose defining residual is within `tol`. Classes are
/// cumulative: every density/unitary/hermitian matrix is also normal.
/// Precedence when several hold: Density, Unitary, Hermitian, Normal.
MatrixClass classify_matrix(const ComplexMatrix& m,
                            double tol = kDefaultClassifyTol);

const char* matrix_class_name(MatrixClass c);

/// H_A = A + A^dag. Shares A's eigenvectors when A is normal, with
/// eigenvalues 2 Re(lambda).
ComplexMatrix hermitize(const ComplexMatrix& a);

/// e^{iH} for Hermitian H, built by diagonalizing H and exponentiating the
/// spectrum. Eigenvalues of the result are e^{i mu} for H's eigenvalues mu.
ComplexMatrix unitary_from_hermitian(const ComplexMatrix& h);

struct SpectralPair {
  Complex eigenvalue;
  ComplexVector eigenvector;
};

/// Full orthonormal eigendecomposition of a normal matrix, sorted by
/// descending eigenvalue real part (ties by descending imaginary part).
///
/// The matrix is split into commuting Hermitian parts
/// A = (M + M^dag)/2, B = (M - M^dag)/(2i) and a random real combination
/// alpha*A + beta*B is diagonalized; a generic combination separates
/// eigenvalues that are degenerate in either part alone. Draws that
/// accidentally conflate distinct eigenvalues of M are detected through the
/// per-vector residual ||M v - lambda v|| and redrawn. The internal draw
/// stream is fixed-seeded, so the decomposition is a pure function of M.
std::vector<SpectralPair> oracle_eigendecompose(const ComplexMatrix& m);

/// ||P v||^2 where P projects onto the span of oracle eigenvectors whose
/// eigenvalues lie within `tol` of `lambda`. Returns 0 when no eigenvalue
/// is that close. Insensitive to the global phase of v.
double eigenspace_fidelity(const ComplexVector& v, const ComplexMatrix& m,
                           Complex lambda, double tol);

/// Kronecker product, a (x) b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

/// Haar-ish random unitary: QR of a complex Gaussian matrix with the
/// R-diagonal phase fix.
ComplexMatrix random_unitary(int dim, Rng& rng);

/// Normalized complex Gaussian vector.
ComplexVector random_state_vector(int dim, Rng& rng);

/// Full-rank random density matrix: random orthonormal eigenbasis with
/// exponentially distributed weights normalized to trace one.
ComplexMatrix random_density(int dim, Rng& rng);

}  // namespace qve
