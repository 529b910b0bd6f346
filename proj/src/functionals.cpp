#include "centrality/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "centrality/errors.hpp"

namespace centrality {

NormalFunctional::NormalFunctional(AlgebraElement density, double tol) : density_(std::move(density)) {
  // One eigenvalue pass over the Hermitian parts decides the class; the
  // operator norm of a near-Hermitian density is taken from the same spectrum.
  double spectral_norm = 0.0;
  double min_eig = INFINITY;
  double asym = 0.0;
  for (const auto& b : density_.blocks()) {
    asym = std::max(asym, (b - b.adjoint()).norm());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (b + b.adjoint()), Eigen::EigenvaluesOnly);
    const RealVector& values = solver.eigenvalues();
    spectral_norm = std::max(spectral_norm, values.cwiseAbs().maxCoeff());
    min_eig = std::min(min_eig, values.minCoeff());
    norm_ += trace_norm(b);
  }
  const double scale = std::max(1.0, spectral_norm);
  if (asym <= tol * scale) {
    class_ = min_eig >= -tol * scale ? FunctionalClass::Positive : FunctionalClass::Hermitian;
  }
}

NormalFunctional NormalFunctional::zero(const AlgebraShape& shape) {
  return NormalFunctional(AlgebraElement::zero(shape));
}

Complex evaluate(const NormalFunctional& phi, const AlgebraElement& x) {
  require_same_shape(phi.density(), x);
  Complex out = 0.0;
  for (std::size_t k = 0; k < x.num_blocks(); ++k) {
    // Tr(rho x) without forming the product.
    out += phi.density().block(k).cwiseProduct(x.block(k).transpose()).sum();
  }
  return out;
}

NormalFunctional module_action(ActionSide side, const AlgebraElement& x, const NormalFunctional& phi) {
  const AlgebraElement& rho = phi.density();
  require_same_shape(rho, x);
  switch (side) {
    case ActionSide::Left: return NormalFunctional(rho * x);
    case ActionSide::Right: return NormalFunctional(x * rho);
    case ActionSide::Sandwich: return NormalFunctional(x * rho * x);
  }
  throw Error(ErrorCode::InvalidInputs, "unknown action side");
}

JordanPair jordan_decompose(const NormalFunctional& phi) {
  if (!phi.is_hermitian()) throw Error(ErrorCode::NotHermitian, "Jordan decomposition needs a Hermitian functional");
  std::vector<ComplexMatrix> plus;
  std::vector<ComplexMatrix> minus;
  for (const auto& b : phi.density().blocks()) {
    const EigenDecomposition eig = herm_eig(0.5 * (b + b.adjoint()));
    const auto n = static_cast<std::size_t>(eig.values.size());
    std::vector<double> pos(n);
    std::vector<double> neg(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double v = eig.values(static_cast<Eigen::Index>(k));
      pos[k] = std::max(v, 0.0);
      neg[k] = std::max(-v, 0.0);
    }
    plus.push_back(spectral_sum(eig, pos));
    minus.push_back(spectral_sum(eig, neg));
  }
  const AlgebraShape& shape = phi.shape();
  return {NormalFunctional(AlgebraElement(shape, std::move(plus))),
          NormalFunctional(AlgebraElement(shape, std::move(minus)))};
}

FunctionalPolar functional_polar(const NormalFunctional& phi) {
  // rho^* = W (rho rho^*)^{1/2}, hence rho = (rho rho^*)^{1/2} W^*.
  std::vector<ComplexMatrix> unitary;
  std::vector<ComplexMatrix> abs;
  for (const auto& b : phi.density().blocks()) {
    const PolarDecomposition polar = polar_decompose(b.adjoint());
    unitary.push_back(polar.unitary.adjoint());
    abs.push_back(polar.positive);
  }
  const AlgebraShape& shape = phi.shape();
  return {AlgebraElement(shape, std::move(unitary)),
          NormalFunctional(AlgebraElement(shape, std::move(abs)))};
}

NormalFunctional functional_abs(const NormalFunctional& phi) { return functional_polar(phi).abs; }

AlgebraElement support_projection(const NormalFunctional& psi) {
  if (!psi.is_positive()) throw Error(ErrorCode::NotPositive, "support projection needs a positive functional");
  const double clamp = kClampTol * norm_scale(psi.density());
  std::vector<ComplexMatrix> blocks;
  for (const auto& b : psi.density().blocks()) {
    const EigenDecomposition eig = herm_eig(0.5 * (b + b.adjoint()));
    std::vector<double> ind(static_cast<std::size_t>(eig.values.size()));
    for (std::size_t k = 0; k < ind.size(); ++k) {
      ind[k] = eig.values(static_cast<Eigen::Index>(k)) > clamp ? 1.0 : 0.0;
    }
    blocks.push_back(spectral_sum(eig, ind));
  }
  return {psi.shape(), std::move(blocks)};
}

namespace {

// sum_k w(lambda_k) <v_k, a v_k> over the spectrum of the Hermitian part.
template <typename Weight>
double spectral_pairing(const NormalFunctional& phi, const AlgebraElement& a, Weight weight) {
  require_same_shape(phi.density(), a);
  double out = 0.0;
  for (std::size_t k = 0; k < a.num_blocks(); ++k) {
    const ComplexMatrix& b = phi.density().block(k);
    const EigenDecomposition eig = herm_eig(0.5 * (b + b.adjoint()));
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
      const double w = weight(eig.values(i));
      if (w == 0.0) continue;
      out += w * eig.vectors.col(i).dot(a.block(k) * eig.vectors.col(i)).real();
    }
  }
  return out;
}

}  // namespace

double positive_part_at(const NormalFunctional& phi, const AlgebraElement& a) {
  if (!phi.is_hermitian()) throw Error(ErrorCode::NotHermitian, "positive part needs a Hermitian functional");
  return spectral_pairing(phi, a, [](double v) { return std::max(v, 0.0); });
}

double abs_at(const NormalFunctional& phi, const AlgebraElement& a) {
  if (phi.is_hermitian()) return spectral_pairing(phi, a, [](double v) { return std::abs(v); });
  // (rho rho^*)^{1/2} = U S U^* from the SVD rho = U S V^*.
  require_same_shape(phi.density(), a);
  double out = 0.0;
  for (std::size_t k = 0; k < a.num_blocks(); ++k) {
    Eigen::JacobiSVD<ComplexMatrix> svd(phi.density().block(k), Eigen::ComputeFullU);
    const ComplexMatrix& u = svd.matrixU();
    for (Eigen::Index i = 0; i < u.cols(); ++i) {
      out += svd.singularValues()(i) * u.col(i).dot(a.block(k) * u.col(i)).real();
    }
  }
  return out;
}

}  // namespace centrality
