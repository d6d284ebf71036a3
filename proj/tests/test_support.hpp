#pragma once

#include <cmath>
#include <vector>

#include "qve/numerics.hpp"
#include "qve/types.hpp"

namespace qve::test {

/// Random normal matrix with eigenvalue real parts separated by at least
/// `re_gap`: a random orthonormal eigenbasis with hand-placed eigenvalues.
inline ComplexMatrix make_normal_with_gaps(int dim, double re_gap, Rng& rng) {
  const ComplexMatrix basis = random_unitary(dim, rng);
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const double re =
        i * (re_gap + 0.2) + rng.uniform(0.0, 0.5 * re_gap);
    const double im = rng.uniform(-1.0, 1.0);
    m.noalias() +=
        Complex(re, im) * (basis.col(i) * basis.col(i).adjoint());
  }
  return m;
}

/// Discrete Fourier transform matrix, F_jk = exp(2*pi*i*j*k/d) / sqrt(d).
inline ComplexMatrix qft_matrix(int dim) {
  ComplexMatrix f(dim, dim);
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  for (int j = 0; j < dim; ++j) {
    for (int k = 0; k < dim; ++k) {
      const double phase = 2.0 * M_PI * j * k / dim;
      f(j, k) = norm * Complex(std::cos(phase), std::sin(phase));
    }
  }
  return f;
}

inline ComplexMatrix diagonal_matrix(const std::vector<Complex>& entries) {
  const auto dim = static_cast<Eigen::Index>(entries.size());
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    m(i, i) = entries[static_cast<std::size_t>(i)];
  }
  return m;
}

}  // namespace qve::test
