#pragma once

#include "centrality/algebra.hpp"

namespace centrality {

enum class FunctionalClass { General, Hermitian, Positive };

// A functional x -> sum_k Tr(rho_k x_k), stored through its density rho. In
// finite dimension every functional is normal and arises this way.
class NormalFunctional {
 public:
  explicit NormalFunctional(AlgebraElement density, double tol = kDefaultTol);

  static NormalFunctional zero(const AlgebraShape& shape);

  const AlgebraShape& shape() const noexcept { return density_.shape(); }
  const AlgebraElement& density() const noexcept { return density_; }
  FunctionalClass functional_class() const noexcept { return class_; }
  bool is_hermitian() const noexcept { return class_ != FunctionalClass::General; }
  bool is_positive() const noexcept { return class_ == FunctionalClass::Positive; }
  /// Trace norm of the density.
  double norm() const noexcept { return norm_; }

  friend NormalFunctional operator+(const NormalFunctional& f, const NormalFunctional& g) {
    return NormalFunctional(f.density_ + g.density_);
  }
  friend NormalFunctional operator-(const NormalFunctional& f, const NormalFunctional& g) {
    return NormalFunctional(f.density_ - g.density_);
  }
  friend NormalFunctional operator-(const NormalFunctional& f) { return NormalFunctional(-f.density_); }
  friend NormalFunctional operator*(double c, const NormalFunctional& f) {
    return NormalFunctional(f.density_ * Complex(c));
  }

 private:
  AlgebraElement density_;
  FunctionalClass class_ = FunctionalClass::General;
  double norm_ = 0.0;
};

Complex evaluate(const NormalFunctional& phi, const AlgebraElement& x);

enum class ActionSide {
  Left,      // x phi : y -> phi(x y), density rho x
  Right,     // phi x : y -> phi(y x), density x rho
  Sandwich,  // x phi x : y -> phi(x y x), density x rho x
};

NormalFunctional module_action(ActionSide side, const AlgebraElement& x, const NormalFunctional& phi);

struct JordanPair {
  NormalFunctional positive_part;
  NormalFunctional negative_part;
};

/// Spectral split of a Hermitian density into orthogonally supported PSD parts.
JordanPair jordan_decompose(const NormalFunctional& phi);

/// |phi|, with density (rho rho^*)^{1/2}.
NormalFunctional functional_abs(const NormalFunctional& phi);

struct FunctionalPolar {
  AlgebraElement unitary;  // u, with phi(y) = |phi|(u y)
  NormalFunctional abs;
};

/// phi = u |phi| in the left-multiplication convention (u psi)(y) = psi(u y).
/// The partial isometry is completed to a full unitary.
FunctionalPolar functional_polar(const NormalFunctional& phi);

/// Range projection of a positive functional's density.
AlgebraElement support_projection(const NormalFunctional& psi);

inline double functional_norm(const NormalFunctional& phi) { return phi.norm(); }

/// phi^+(a), the positive part evaluated at a.
double positive_part_at(const NormalFunctional& phi, const AlgebraElement& a);
/// |phi|(a).
double abs_at(const NormalFunctional& phi, const AlgebraElement& a);

}  // namespace centrality
