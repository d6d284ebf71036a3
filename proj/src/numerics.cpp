#include "qve/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>

namespace qve {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionError(std::string(what) + ": matrix must be square, got " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
  if (!m.allFinite()) {
    throw ValidationError("non_finite",
                          std::string(what) + ": matrix has NaN/Inf entries");
  }
}

ComplexMatrix identity_like(const ComplexMatrix& m) {
  return ComplexMatrix::Identity(m.rows(), m.cols());
}

}  // namespace

bool is_unitary(const ComplexMatrix& m, double tol) {
  require_square(m, "is_unitary");
  return (m.adjoint() * m - identity_like(m)).norm() <= tol;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  require_square(m, "is_hermitian");
  return (m - m.adjoint()).norm() <= tol;
}

bool is_normal(const ComplexMatrix& m, double tol) {
  require_square(m, "is_normal");
  return (m * m.adjoint() - m.adjoint() * m).norm() <= tol;
}

bool is_density(const ComplexMatrix& m, double tol) {
  require_square(m, "is_density");
  if (!is_hermitian(m, tol)) return false;
  if (std::abs(m.trace() - Complex(1.0, 0.0)) > tol) return false;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(
      ComplexMatrix((m + m.adjoint()) / 2.0), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

MatrixClass classify_matrix(const ComplexMatrix& m, double tol) {
  require_square(m, "classify_matrix");
  if (tol <= 0.0) {
    throw ValidationError("invalid_tolerance",
                          "classify_matrix: tol must be positive");
  }
  if (is_density(m, tol)) return MatrixClass::Density;
  if (is_unitary(m, tol)) return MatrixClass::Unitary;
  if (is_hermitian(m, tol)) return MatrixClass::Hermitian;
  if (is_normal(m, tol)) return MatrixClass::Normal;
  return MatrixClass::General;
}

const char* matrix_class_name(MatrixClass c) {
  switch (c) {
    case MatrixClass::Unitary: return "unitary";
    case MatrixClass::Hermitian: return "hermitian";
    case MatrixClass::Normal: return "normal";
    case MatrixClass::Density: return "density";
    case MatrixClass::General: return "general";
  }
  return "general";
}

ComplexMatrix hermitize(const ComplexMatrix& a) {
  require_square(a, "hermitize");
  return a + a.adjoint();
}

std::vector<SpectralPair> oracle_eigendecompose(const ComplexMatrix& m) {
  require_square(m, "oracle_eigendecompose");
  if (m.rows() > 256) {
    throw ValidationError("dimension_too_large",
                          "oracle_eigendecompose: dimension capped at 256");
  }
  if (!is_normal(m, kDefaultClassifyTol)) {
    throw ValidationError(
        "not_normal",
        "oracle_eigendecompose: matrix is not normal; no orthonormal "
        "eigenbasis exists");
  }

  const Eigen::Index dim = m.rows();
  const ComplexMatrix herm_part = (m + m.adjoint()) / 2.0;
  const ComplexMatrix skew_part = (m - m.adjoint()) / Complex(0.0, 2.0);
  const double scale = std::max(1.0, m.norm());

  // The draw stream is fixed so the decomposition is reproducible.
  Rng rng(0x6f7261636c65ULL);

  std::vector<SpectralPair> best;
  double best_worst_residual = std::numeric_limits<double>::infinity();

  for (int attempt = 0; attempt < 64; ++attempt) {
    const double t = rng.uniform(0.0, 2.0 * M_PI);
    const ComplexMatrix combo =
        std::cos(t) * herm_part + std::sin(t) * skew_part;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(combo);
    if (es.info() != Eigen::Success) continue;

    std::vector<SpectralPair> pairs(static_cast<std::size_t>(dim));
    double worst_residual = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i) {
      ComplexVector v = es.eigenvectors().col(i);
      const Complex lambda = v.dot(m * v);
      worst_residual = std::max(worst_residual, (m * v - lambda * v).norm());
      pairs[static_cast<std::size_t>(i)] = SpectralPair{lambda, std::move(v)};
    }
    if (worst_residual < best_worst_residual) {
      best_worst_residual = worst_residual;
      best = std::move(pairs);
    }
    if (best_worst_residual <= 1e-10 * scale) break;
  }

  if (best.empty() || best_worst_residual > 1e-8 * scale) {
    throw ValidationError("oracle_failed",
                          "oracle_eigendecompose: no random combination "
                          "separated the spectrum to tolerance");
  }

  std::sort(best.begin(), best.end(),
            [](const SpectralPair& a, const SpectralPair& b) {
              if (a.eigenvalue.real() != b.eigenvalue.real()) {
                return a.eigenvalue.real() > b.eigenvalue.real();
              }
              return a.eigenvalue.imag() > b.eigenvalue.imag();
            });
  return best;
}

ComplexMatrix unitary_from_hermitian(const ComplexMatrix& h) {
  require_square(h, "unitary_from_hermitian");
  if (!is_hermitian(h, 1e-10)) {
    throw ValidationError("not_hermitian",
                          "unitary_from_hermitian: input is not Hermitian "
                          "within 1e-10");
  }
  const std::vector<SpectralPair> pairs = oracle_eigendecompose(h);
  ComplexMatrix u = ComplexMatrix::Zero(h.rows(), h.cols());
  for (const SpectralPair& p : pairs) {
    const Complex phase = std::exp(Complex(0.0, p.eigenvalue.real()));
    u.noalias() += phase * (p.eigenvector * p.eigenvector.adjoint());
  }
  return u;
}

double eigenspace_fidelity(const ComplexVector& v, const ComplexMatrix& m,
                           Complex lambda, double tol) {
  require_square(m, "eigenspace_fidelity");
  if (v.size() != m.rows()) {
    throw DimensionError("eigenspace_fidelity: vector/matrix size mismatch");
  }
  if (std::abs(v.norm() - 1.0) > 1e-10) {
    throw ValidationError("not_normalized",
                          "eigenspace_fidelity: vector must be normalized");
  }
  const std::vector<SpectralPair> pairs = oracle_eigendecompose(m);
  double fidelity = 0.0;
  for (const SpectralPair& p : pairs) {
    if (std::abs(p.eigenvalue - lambda) <= tol) {
      fidelity += std::norm(p.eigenvector.dot(v));
    }
  }
  return std::clamp(fidelity, 0.0, 1.0);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

ComplexMatrix random_unitary(int dim, Rng& rng) {
  if (dim < 1) throw DimensionError("random_unitary: dim must be positive");
  ComplexMatrix g(dim, dim);
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      g(i, j) = Complex(rng.gaussian(), rng.gaussian());
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const double mod = std::abs(r(j, j));
    if (mod > 0.0) q.col(j) *= r(j, j) / mod;
  }
  return q;
}

ComplexVector random_state_vector(int dim, Rng& rng) {
  if (dim < 1) {
    throw DimensionError("random_state_vector: dim must be positive");
  }
  ComplexVector v(dim);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    v(i) = Complex(rng.gaussian(), rng.gaussian());
  }
  const double norm = v.norm();
  if (norm == 0.0) {
    v.setZero();
    v(0) = 1.0;
    return v;
  }
  return v / norm;
}

ComplexMatrix random_density(int dim, Rng& rng) {
  const ComplexMatrix basis = random_unitary(dim, rng);
  RealVector weights(dim);
  for (int i = 0; i < dim; ++i) {
    weights(i) = -std::log(1.0 - rng.uniform());
  }
  weights /= weights.sum();
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    rho.noalias() += weights(i) * (basis.col(i) * basis.col(i).adjoint());
  }
  return rho;
}

}  // namespace qve
