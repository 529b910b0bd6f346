#pragma once

#include <map>
#include <optional>

#include "centrality/conditions.hpp"

namespace centrality {

// Positive functionals psi1, psi2 with |psi1 - psi2|(a) > psi1(a) + psi2(a),
// built from a symmetry s and a state phi with phi(sas) < phi(a):
//
//   psi1 = lambda s phi s + phi s + s phi + phi / lambda = lambda v1 phi v1,  v1 = s + 1/lambda
//   psi2 = lambda s phi s - phi s - s phi + phi / lambda = lambda v2 phi v2,  v2 = s - 1/lambda
//
// With eps = (phi(a) - phi(sas)) / phi(a):
//   lhs = |psi1 - psi2|(a) = 2 (2 - eps) phi(a)
//   rhs = (psi1 + psi2)(a) = 2 (lambda (1 - eps) + 1/lambda) phi(a)
// and lhs - rhs = 2 (1 - sqrt(1 - eps))^2 phi(a) at lambda = 1/sqrt(1 - eps).
struct Lemma1Witness {
  AlgebraElement symmetry;
  NormalFunctional state;
  double epsilon = 0.0;
  double lambda0 = 0.0;
  NormalFunctional psi1;
  NormalFunctional psi2;
  double state_at_a = 0.0;  // phi(a)
  double lhs = 0.0;
  double rhs = 0.0;
  double scale = 1.0;

  double margin() const { return lhs - rhs; }
};

/// Below this distance from 1, eps is treated as exactly 1.
inline constexpr double kEpsilonOneCutoff = 1e-12;

/// lambda(1 - eps) + 1/lambda is minimized at 1/sqrt(1 - eps); eps = 1 has no
/// minimizer and any lambda > 1 works, 2 is used.
double optimal_lambda(double epsilon);

struct ViolatingProjection {
  AlgebraElement p;
  double min_eigenvalue;  // lambda_min(a - pap) < 0
  std::size_t block;
};

/// For non-central a: p projects onto (e + f)/sqrt(2), with e, f eigenvectors
/// for the extreme eigenvalues of the block with the largest spread. Restricted
/// to span{e, f}, det(a - pap) = -(alpha - beta)^2 / 4. Returns nullopt for
/// central a.
std::optional<ViolatingProjection> find_violating_projection(const AlgebraElement& a,
                                                             double tol = kDefaultTol);

struct SymmetryState {
  AlgebraElement symmetry;
  NormalFunctional state;
  double gap;  // phi(a) - phi(sas) > 0
};

/// s = 2p - 1 from the violating projection and the vector state at the most
/// negative eigenvector of sas - a.
std::optional<SymmetryState> violating_symmetry_state(const AlgebraElement& a, double tol = kDefaultTol);

/// Builds the witness pair. lambda defaults to optimal_lambda(eps). Throws
/// NotAViolation unless phi(sas) < phi(a) - tol * scale and the resulting
/// margin clears tol * scale; InconsistentMath if an exact identity fails.
Lemma1Witness lemma1_construct(const AlgebraElement& a, const AlgebraElement& s, const NormalFunctional& phi,
                               std::optional<double> lambda = std::nullopt, double tol = kDefaultTol);

/// The functional with density sigma u, u^* the unitary factor of the right
/// polar decomposition of a sigma (sigma = the violating projection), for which
/// |phi(a)| = ||a sigma||_1 > Tr(sigma a) = |phi|(a). nullopt for central a.
std::optional<MarginReport> gardner_witness(const AlgebraElement& a, double tol = kDefaultTol);

/// All eleven certificates, each re-checked with margin < -tol * scale. Throws
/// DerivationFailed when a step does not produce a violation.
std::map<ConditionId, MarginReport> derive_condition_certificates(const AlgebraElement& a,
                                                                  const Lemma1Witness& w,
                                                                  double tol = kDefaultTol);

struct WitnessChain {
  Lemma1Witness lemma;
  std::map<ConditionId, MarginReport> certificates;
};

/// find_violating_projection -> violating_symmetry_state -> lemma1_construct ->
/// derive_condition_certificates. nullopt for central a.
std::optional<WitnessChain> build_witness_chain(const AlgebraElement& a, double tol = kDefaultTol);

/// Recomputes the report from its stored inputs and accepts it only if it is a
/// genuine violation whose stored lhs/rhs/margin match the recomputation.
/// Throws ShapeMismatch when shapes differ; every other failure returns false.
bool verify_certificate(const MarginReport& cert, const AlgebraElement& a, double tol = kDefaultTol);

/// Recomputes eps, the psi densities, both Lemma identities and the margins
/// from (a, s, phi, lambda0, psi1, psi2).
bool verify_certificate(const Lemma1Witness& w, const AlgebraElement& a, double tol = kDefaultTol);

}  // namespace centrality
