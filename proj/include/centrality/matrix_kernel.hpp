#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace centrality {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-9;
// Eigenvalues with |lambda| <= kClampTol * max(1, ||H||) are treated as zero.
inline constexpr double kClampTol = 1e-10;

struct EigenDecomposition {
  RealVector values;      // descending
  ComplexMatrix vectors;  // column k pairs with values[k]
};

struct PolarDecomposition {
  ComplexMatrix unitary;   // W
  ComplexMatrix positive;  // P = (M^* M)^{1/2}
};

/// Throws ShapeMismatch unless M is square with finite entries.
void require_square_finite(const ComplexMatrix& m);

double operator_norm(const ComplexMatrix& m);

/// max(1, ||m||), the scale every relative tolerance in the kernel uses.
double norm_scale(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double tol = kDefaultTol);

/// Spectral decomposition of a Hermitian matrix, eigenvalues descending.
/// The input is symmetrized before solving; the residual ||Hv - lambda v|| of
/// every pair is checked against tol * max(1, ||H||) afterwards.
EigenDecomposition herm_eig(const ComplexMatrix& h, double tol = kDefaultTol);

/// Square root of a PSD matrix. Eigenvalues in [-clamp, 0) are clamped to zero;
/// anything more negative than -tol * max(1, ||H||) raises NotPSD.
ComplexMatrix psd_sqrt(const ComplexMatrix& h, double tol = kDefaultTol);

/// Right polar decomposition M = W P with W a full unitary (the kernel of P is
/// mapped onto the orthogonal complement of range(M) by basis completion).
PolarDecomposition polar_decompose(const ComplexMatrix& m, double tol = kDefaultTol);

/// Sum of singular values.
double trace_norm(const ComplexMatrix& m);

/// sum_k weights[k] v_k v_k^* over the eigenvectors of eig.
ComplexMatrix spectral_sum(const EigenDecomposition& eig, const std::vector<double>& weights);

}  // namespace centrality
