#include "centrality/witness.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "centrality/errors.hpp"

namespace centrality {

namespace {

// Exact identities of the construction are checked at these relative levels.
constexpr double kDensityIdentityTol = 1e-10;
constexpr double kAbsIdentityTol = 1e-9;

// Rotates v so that its largest-modulus entry is real and positive.
ComplexVector canonical_phase(ComplexVector v) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (std::abs(v(i)) > std::abs(v(best)) * (1.0 + 1e-12)) best = i;
  }
  const double mag = std::abs(v(best));
  if (mag > 0.0) v *= std::conj(v(best)) / mag;
  return v;
}

void require_positive_element(const AlgebraElement& a, double tol) {
  if (!is_positive(a, tol).positive) throw Error(ErrorCode::NotPositiveElement, "a must be positive");
}

AlgebraElement block_rank_one(const AlgebraShape& shape, std::size_t block, const ComplexVector& v) {
  ComplexMatrix cols = v;
  return projection_from_vectors(shape, block, cols);
}

double real_at(const NormalFunctional& f, const AlgebraElement& a) { return evaluate(f, a).real(); }

double treated_epsilon(double phi_a, double phi_sas) {
  const double eps = (phi_a - phi_sas) / phi_a;
  return 1.0 - eps < kEpsilonOneCutoff ? 1.0 : eps;
}

struct PsiPair {
  NormalFunctional psi1;
  NormalFunctional psi2;
};

// psi_i as module-action compositions of phi.
PsiPair build_psi(const AlgebraElement& s, const NormalFunctional& phi, double lambda) {
  const NormalFunctional s_phi_s = module_action(ActionSide::Sandwich, s, phi);
  const NormalFunctional phi_s = module_action(ActionSide::Right, s, phi);
  const NormalFunctional s_phi = module_action(ActionSide::Left, s, phi);
  const NormalFunctional cross = phi_s + s_phi;
  const NormalFunctional even = lambda * s_phi_s + (1.0 / lambda) * phi;
  return {even + cross, even - cross};
}

// lambda v phi v with v = s + sign / lambda, as a density.
AlgebraElement psi_from_square(const AlgebraElement& s, const AlgebraElement& rho, double lambda, double sign) {
  const AlgebraElement v = s + AlgebraElement::identity(s.shape()) * Complex(sign / lambda);
  return v * rho * v * Complex(lambda);
}

struct LemmaIdentities {
  double psi1_gap;  // ||psi1 - lambda v1 rho v1||
  double psi2_gap;
  double abs_gap;   // || |psi1 - psi2| - 2(rho + s rho s) ||
};

LemmaIdentities lemma_identities(const AlgebraElement& s, const NormalFunctional& phi, double lambda,
                                 const NormalFunctional& psi1, const NormalFunctional& psi2) {
  const AlgebraElement& rho = phi.density();
  LemmaIdentities out{};
  out.psi1_gap = distance(psi1.density(), psi_from_square(s, rho, lambda, 1.0));
  out.psi2_gap = distance(psi2.density(), psi_from_square(s, rho, lambda, -1.0));
  const AlgebraElement abs_density = functional_abs(psi1 - psi2).density();
  out.abs_gap = distance(abs_density, Complex(2.0) * (rho + s * rho * s));
  return out;
}

double witness_scale(const AlgebraElement& a, const NormalFunctional& psi1, const NormalFunctional& psi2) {
  return std::max({1.0, a.norm(), psi1.norm() + psi2.norm()});
}

void require_same_shapes(const AlgebraElement& a, const ConditionInputs& inputs) {
  std::visit(
      [&](const auto& in) {
        using T = std::decay_t<decltype(in)>;
        if constexpr (std::is_same_v<T, ProjectionInputs>) {
          require_same_shape(a, in.p);
        } else if constexpr (std::is_same_v<T, DecompositionInputs>) {
          for (const auto* f : {&in.phi, &in.phi1, &in.phi2}) require_same_shape(a, f->density());
        } else if constexpr (std::is_same_v<T, SingleInputs>) {
          require_same_shape(a, in.phi.density());
        } else {
          require_same_shape(a, in.phi.density());
          require_same_shape(a, in.psi.density());
        }
      },
      inputs);
}

}  // namespace

double optimal_lambda(double epsilon) {
  if (1.0 - epsilon < kEpsilonOneCutoff) return 2.0;
  return 1.0 / std::sqrt(1.0 - epsilon);
}

std::optional<ViolatingProjection> find_violating_projection(const AlgebraElement& a, double tol) {
  require_positive_element(a, tol);
  if (is_central(a, tol)) return std::nullopt;

  std::size_t best = 0;
  double best_spread = -1.0;
  EigenDecomposition best_eig;
  for (std::size_t k = 0; k < a.num_blocks(); ++k) {
    const ComplexMatrix& b = a.block(k);
    EigenDecomposition eig = herm_eig(0.5 * (b + b.adjoint()), tol);
    const double spread = eig.values(0) - eig.values(eig.values.size() - 1);
    if (spread > best_spread) {
      best_spread = spread;
      best = k;
      best_eig = std::move(eig);
    }
  }
  const Eigen::Index n = best_eig.values.size();
  const ComplexVector e = canonical_phase(best_eig.vectors.col(0));
  const ComplexVector f = canonical_phase(best_eig.vectors.col(n - 1));
  const ComplexVector v = (e + f) / std::sqrt(2.0);
  AlgebraElement p = block_rank_one(a.shape(), best, v);
  const double min_eig = min_eigenvalue(a - p * a * p, tol);
  return ViolatingProjection{std::move(p), min_eig, best};
}

std::optional<SymmetryState> violating_symmetry_state(const AlgebraElement& a, double tol) {
  auto vp = find_violating_projection(a, tol);
  if (!vp) return std::nullopt;
  AlgebraElement s = symmetry_from_projection(vp->p, tol);
  const AlgebraElement diff = s * a * s - a;

  std::size_t block = 0;
  double lowest = INFINITY;
  ComplexVector vec;
  for (std::size_t k = 0; k < diff.num_blocks(); ++k) {
    const ComplexMatrix& b = diff.block(k);
    const EigenDecomposition eig = herm_eig(0.5 * (b + b.adjoint()), tol);
    const Eigen::Index last = eig.values.size() - 1;
    if (eig.values(last) < lowest) {
      lowest = eig.values(last);
      block = k;
      vec = eig.vectors.col(last);
    }
  }
  NormalFunctional state(block_rank_one(a.shape(), block, canonical_phase(vec)));
  const double gap = real_at(state, a) - real_at(state, s * a * s);
  return SymmetryState{std::move(s), std::move(state), gap};
}

Lemma1Witness lemma1_construct(const AlgebraElement& a, const AlgebraElement& s, const NormalFunctional& phi,
                               std::optional<double> lambda, double tol) {
  require_same_shape(a, s);
  require_same_shape(a, phi.density());
  require_positive_element(a, tol);
  if (!is_symmetry(s, tol)) throw Error(ErrorCode::InvalidInputs, "s must be a symmetry");
  if (!phi.is_positive()) throw Error(ErrorCode::NotPositive, "phi must be positive");
  if (lambda && !(*lambda > 0.0)) throw Error(ErrorCode::InvalidInputs, "lambda must be positive");

  const double phi_a = real_at(phi, a);
  const double phi_sas = real_at(phi, s * a * s);
  const double pre_scale = std::max({1.0, a.norm(), phi.norm()});
  if (!(phi_sas < phi_a - tol * pre_scale)) {
    throw Error(ErrorCode::NotAViolation, "phi(sas) = " + format_number(phi_sas) +
                                              " is not below phi(a) = " + format_number(phi_a));
  }

  const double eps = treated_epsilon(phi_a, phi_sas);
  const double lam = lambda.value_or(optimal_lambda(eps));
  PsiPair psi = build_psi(s, phi, lam);

  const LemmaIdentities ids = lemma_identities(s, phi, lam, psi.psi1, psi.psi2);
  const double scale = witness_scale(a, psi.psi1, psi.psi2);
  if (ids.psi1_gap > kDensityIdentityTol * scale || ids.psi2_gap > kDensityIdentityTol * scale) {
    throw Error(ErrorCode::InconsistentMath, "psi_i differs from lambda v_i phi v_i");
  }
  if (ids.abs_gap > kAbsIdentityTol * scale) {
    throw Error(ErrorCode::InconsistentMath, "|psi1 - psi2| differs from 2(phi + s phi s)");
  }
  if (!psi.psi1.is_positive() || !psi.psi2.is_positive()) {
    throw Error(ErrorCode::InconsistentMath, "psi_i is not positive");
  }

  Lemma1Witness w{s, phi, eps, lam, psi.psi1, psi.psi2, phi_a, 0.0, 0.0, scale};
  w.lhs = abs_at(psi.psi1 - psi.psi2, a);
  w.rhs = real_at(psi.psi1, a) + real_at(psi.psi2, a);
  if (!(w.margin() > tol * scale)) {
    throw Error(ErrorCode::NotAViolation,
                "witness margin " + format_number(w.margin()) + " is below tolerance");
  }
  return w;
}

std::optional<MarginReport> gardner_witness(const AlgebraElement& a, double tol) {
  auto vp = find_violating_projection(a, tol);
  if (!vp) return std::nullopt;
  const AlgebraElement& sigma = vp->p;
  const AlgebraElement a_sigma = a * sigma;
  std::vector<ComplexMatrix> u;
  for (const auto& b : a_sigma.blocks()) u.push_back(polar_decompose(b, tol).unitary.adjoint());
  const AlgebraElement unitary(a.shape(), std::move(u));
  NormalFunctional phi(sigma * unitary);
  return condition_margin_trusted(ConditionId::gardner, a, SingleInputs{std::move(phi)}, tol);
}

std::map<ConditionId, MarginReport> derive_condition_certificates(const AlgebraElement& a,
                                                                  const Lemma1Witness& w, double tol) {
  const NormalFunctional chi = w.psi1 - w.psi2;
  const JordanPair jp = jordan_decompose(chi);
  const double first = real_at(jp.positive_part, a) - real_at(w.psi1, a);
  const double mirrored = real_at(jp.negative_part, a) - real_at(w.psi2, a);
  if (!(first > 0.0) && !(mirrored > 0.0)) {
    throw Error(ErrorCode::DerivationFailed, "neither chi^+(a) > psi1(a) nor chi^-(a) > psi2(a)");
  }
  // Mirrored branch: chi -> -chi with the roles of psi1 and psi2 exchanged.
  const bool use_first = first >= mirrored;
  const NormalFunctional& pos = use_first ? w.psi1 : w.psi2;
  const NormalFunctional& neg = use_first ? w.psi2 : w.psi1;
  const NormalFunctional branch_chi = use_first ? chi : -chi;
  const NormalFunctional minus_neg = -neg;

  std::map<ConditionId, ConditionInputs> inputs;
  inputs.emplace(ConditionId::iii, DecompositionInputs{branch_chi, pos, neg});
  inputs.emplace(ConditionId::iv, OrderedPairInputs{branch_chi, pos});
  for (ConditionId id : {ConditionId::v, ConditionId::vi, ConditionId::x}) {
    inputs.emplace(id, PairInputs{pos, minus_neg});
  }
  for (ConditionId id : {ConditionId::vii, ConditionId::viii}) {
    inputs.emplace(id, WeightedPairInputs{pos, minus_neg, 0.5});
  }
  for (ConditionId id : {ConditionId::ix, ConditionId::xi}) inputs.emplace(id, SingleInputs{branch_chi});

  std::map<ConditionId, MarginReport> out;
  for (auto& [id, in] : inputs) out.emplace(id, condition_margin(id, a, in, tol));

  auto vp = find_violating_projection(a, tol);
  auto gardner = gardner_witness(a, tol);
  if (!vp || !gardner) throw Error(ErrorCode::DerivationFailed, "element is central");
  out.emplace(ConditionId::ii, condition_margin(ConditionId::ii, a, ProjectionInputs{vp->p}, tol));
  out.emplace(ConditionId::gardner, std::move(*gardner));

  for (const auto& [id, report] : out) {
    if (report.satisfied(tol)) {
      throw Error(ErrorCode::DerivationFailed, "certificate for condition " + std::string(to_string(id)) +
                                                   " has margin " + format_number(report.margin));
    }
  }
  return out;
}

std::optional<WitnessChain> build_witness_chain(const AlgebraElement& a, double tol) {
  auto ss = violating_symmetry_state(a, tol);
  if (!ss) return std::nullopt;
  Lemma1Witness lemma = lemma1_construct(a, ss->symmetry, ss->state, std::nullopt, tol);
  auto certificates = derive_condition_certificates(a, lemma, tol);
  return WitnessChain{std::move(lemma), std::move(certificates)};
}

bool verify_certificate(const MarginReport& cert, const AlgebraElement& a, double tol) {
  require_same_shapes(a, cert.inputs);
  try {
    const MarginReport again = condition_margin(cert.condition, a, cert.inputs, tol);
    const double slack = tol * again.scale;
    return !again.satisfied(tol) && std::abs(again.lhs - cert.lhs) <= slack &&
           std::abs(again.rhs - cert.rhs) <= slack && std::abs(again.margin - cert.margin) <= slack;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ShapeMismatch) throw;
    return false;
  }
}

bool verify_certificate(const Lemma1Witness& w, const AlgebraElement& a, double tol) {
  for (const auto* x : {&w.symmetry, &w.state.density(), &w.psi1.density(), &w.psi2.density()}) {
    require_same_shape(a, *x);
  }
  try {
    if (!is_positive(a, tol).positive || !is_symmetry(w.symmetry, tol)) return false;
    if (!w.state.is_positive() || !w.psi1.is_positive() || !w.psi2.is_positive()) return false;
    if (!(w.lambda0 > 0.0)) return false;

    const AlgebraElement& s = w.symmetry;
    const double phi_a = real_at(w.state, a);
    const double phi_sas = real_at(w.state, s * a * s);
    if (!(phi_a > 0.0) || !(phi_sas < phi_a)) return false;
    const double eps = treated_epsilon(phi_a, phi_sas);
    const double scale = witness_scale(a, w.psi1, w.psi2);
    if (std::abs(eps - w.epsilon) > tol) return false;

    const LemmaIdentities ids = lemma_identities(s, w.state, w.lambda0, w.psi1, w.psi2);
    if (ids.psi1_gap > kDensityIdentityTol * scale || ids.psi2_gap > kDensityIdentityTol * scale) return false;
    if (ids.abs_gap > kAbsIdentityTol * scale) return false;

    const double lhs = abs_at(w.psi1 - w.psi2, a);
    const double rhs = real_at(w.psi1, a) + real_at(w.psi2, a);
    const double slack = tol * scale;
    if (std::abs(lhs - w.lhs) > slack || std::abs(rhs - w.rhs) > slack) return false;
    if (std::abs(lhs - 2.0 * (2.0 - eps) * phi_a) > slack) return false;
    const double closed_rhs = 2.0 * (w.lambda0 * (1.0 - eps) + 1.0 / w.lambda0) * phi_a;
    if (std::abs(rhs - closed_rhs) > slack) return false;
    return lhs - rhs > slack;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ShapeMismatch) throw;
    return false;
  }
}

}  // namespace centrality
