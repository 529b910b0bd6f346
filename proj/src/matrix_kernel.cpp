#include "centrality/matrix_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "centrality/errors.hpp"

namespace centrality {

void require_square_finite(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::ShapeMismatch,
                "expected a nonempty square matrix, got " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()));
  }
  if (!m.allFinite()) throw Error(ErrorCode::ShapeMismatch, "matrix has non-finite entries");
}

namespace {

// Exactly Hermitian blocks (the common case for sampled densities) take the
// eigenvalue path: singular values are then the absolute eigenvalues.
bool exactly_hermitian(const ComplexMatrix& m) { return m.rows() == m.cols() && m == m.adjoint(); }

RealVector abs_eigenvalues(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs();
}

}  // namespace

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (exactly_hermitian(m)) return abs_eigenvalues(m).maxCoeff();
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

double norm_scale(const ComplexMatrix& m) { return std::max(1.0, operator_norm(m)); }

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).norm() <= tol * norm_scale(m);
}

EigenDecomposition herm_eig(const ComplexMatrix& h, double tol) {
  require_square_finite(h);
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  const double asym = (h - h.adjoint()).norm();

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NoConvergence, "Hermitian eigensolver did not converge");
  }
  const Eigen::Index n = h.rows();
  EigenDecomposition out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  // Eigen returns ascending order.
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = solver.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }

  const double scale = std::max({1.0, std::abs(out.values(0)), std::abs(out.values(n - 1))});
  if (asym > tol * scale) {
    throw Error(ErrorCode::NotHermitian,
                "||H - H*|| = " + format_number(asym) + " exceeds tolerance");
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const double residual = (sym * out.vectors.col(k) - out.values(k) * out.vectors.col(k)).norm();
    if (residual > tol * scale) {
      throw Error(ErrorCode::NoConvergence,
                  "eigenpair residual " + format_number(residual) + " exceeds tolerance");
    }
  }
  return out;
}

ComplexMatrix spectral_sum(const EigenDecomposition& eig, const std::vector<double>& weights) {
  const Eigen::Index n = eig.vectors.rows();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < eig.vectors.cols(); ++k) {
    const double w = weights[static_cast<std::size_t>(k)];
    if (w == 0.0) continue;
    out.noalias() += w * eig.vectors.col(k) * eig.vectors.col(k).adjoint();
  }
  return out;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& h, double tol) {
  const EigenDecomposition eig = herm_eig(h, tol);
  const Eigen::Index n = eig.values.size();
  const double scale = std::max({1.0, std::abs(eig.values(0)), std::abs(eig.values(n - 1))});
  const double min_eig = eig.values(n - 1);
  if (min_eig < -tol * scale) {
    throw Error(ErrorCode::NotPSD, "minimum eigenvalue " + format_number(min_eig));
  }
  std::vector<double> roots(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    const double v = eig.values(k);
    roots[static_cast<std::size_t>(k)] = v <= 0.0 ? 0.0 : std::sqrt(v);
  }
  return spectral_sum(eig, roots);
}

PolarDecomposition polar_decompose(const ComplexMatrix& m, double /*tol*/) {
  require_square_finite(m);
  // Full U and V for a square input: W = U V^* is unitary even when M is
  // singular, which is exactly the kernel completion.
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const ComplexMatrix& u = svd.matrixU();
  const ComplexMatrix& v = svd.matrixV();
  PolarDecomposition out;
  out.unitary = u * v.adjoint();
  out.positive = v * svd.singularValues().cast<Complex>().asDiagonal() * v.adjoint();
  out.positive = 0.5 * (out.positive + out.positive.adjoint());
  return out;
}

double trace_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (exactly_hermitian(m)) return abs_eigenvalues(m).sum();
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

}  // namespace centrality
