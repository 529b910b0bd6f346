#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "centrality/errors.hpp"
#include "centrality/witness.hpp"
#include "test_support.hpp"

using namespace centrality;
using testing_support::density_by_evaluation;
using testing_support::element;
using testing_support::mat;
using testing_support::max_abs_diff;
using testing_support::single;

namespace {

NormalFunctional fn(const ComplexMatrix& rho) { return NormalFunctional(single(rho)); }

const AlgebraElement& swap2() {
  static const AlgebraElement s = single(mat({{0, 1}, {1, 0}}));
  return s;
}

NormalFunctional e11_state() { return fn(mat({{1, 0}, {0, 0}})); }

}  // namespace

TEST_CASE("worked witness on diag(1,0)") {
  const AlgebraElement a = single(mat({{1, 0}, {0, 0}}));
  const Lemma1Witness w = lemma1_construct(a, swap2(), e11_state());
  CHECK(w.epsilon == 1.0);
  CHECK(w.lambda0 == 2.0);
  CHECK(max_abs_diff(w.psi1.density(), single(mat({{0.5, 1}, {1, 2}}))) < 1e-12);
  CHECK(max_abs_diff(w.psi2.density(), single(mat({{0.5, -1}, {-1, 2}}))) < 1e-12);
  CHECK(w.lhs == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(w.rhs == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(w.margin() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(verify_certificate(w, a));
}

TEST_CASE("eps = 0.75 closed forms") {
  const AlgebraElement a = single(mat({{1, 0}, {0, 0.25}}));
  const Lemma1Witness w = lemma1_construct(a, swap2(), e11_state());
  CHECK(w.state_at_a == doctest::Approx(1.0));
  CHECK(w.epsilon == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(w.lambda0 == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(w.lhs == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(w.rhs == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(w.margin() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("small eps: the margin behaves like eps^2 / 2") {
  const double eps = 1e-3;
  const AlgebraElement a = single(mat({{1, 0}, {0, 1 - eps}}));
  const Lemma1Witness w = lemma1_construct(a, swap2(), e11_state());
  CHECK(w.epsilon == doctest::Approx(eps).epsilon(1e-9));
  const double exact = 2.0 * std::pow(1.0 - std::sqrt(1.0 - eps), 2);
  CHECK(w.margin() == doctest::Approx(exact).epsilon(1e-6));
  // Series: 2 (eps/2 + eps^2/8 + ...)^2 = eps^2/2 (1 + eps/2 + ...).
  CHECK(w.margin() == doctest::Approx(eps * eps / 2.0).epsilon(2e-3));
}

TEST_CASE("lemma1_construct rejects non-violations") {
  const AlgebraElement a = single(mat({{1, 0}, {0, 0}}));
  const NormalFunctional e22 = fn(mat({{0, 0}, {0, 1}}));
  try {
    lemma1_construct(a, swap2(), e22);
    FAIL("expected NotAViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAViolation);
  }
  const AlgebraElement central = AlgebraElement::central(a.shape(), {0.5});
  CHECK_THROWS_AS(lemma1_construct(central, swap2(), e11_state()), Error);
}

TEST_CASE("the rhs factor 2 confirmed by brute-force evaluation") {
  // (psi1 + psi2)(a) evaluated from its definition as a functional, with no
  // use of module_action or the closed form.
  RngStream rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const AlgebraShape shape({3, 2});
    const AlgebraElement a = random_noncentral_positive(shape, rng);
    const auto ss = violating_symmetry_state(a);
    REQUIRE(ss.has_value());
    const Lemma1Witness w = lemma1_construct(a, ss->symmetry, ss->state);
    const AlgebraElement& s = ss->symmetry;
    const double lam = w.lambda0;
    auto psi_sum = [&](const AlgebraElement& y) {
      const Complex one = lam * evaluate(ss->state, s * y * s) + evaluate(ss->state, s * y) +
                          evaluate(ss->state, y * s) + evaluate(ss->state, y) / lam;
      const Complex two = lam * evaluate(ss->state, s * y * s) - evaluate(ss->state, s * y) -
                          evaluate(ss->state, y * s) + evaluate(ss->state, y) / lam;
      return one + two;
    };
    const AlgebraElement rho = density_by_evaluation(shape, psi_sum);
    const double brute = testing_support::trace_pairing(rho, a).real();
    const double phi_a = evaluate(ss->state, a).real();
    const double doubled = 2.0 * (lam * (1.0 - w.epsilon) + 1.0 / lam) * phi_a;
    CHECK(brute == doctest::Approx(doubled).epsilon(1e-10));
    CHECK(std::abs(brute - doubled / 2.0) > 0.1 * std::abs(brute));
    CHECK(w.rhs == doctest::Approx(brute).epsilon(1e-10));
  }
}

TEST_CASE("optimal lambda and the minimization identity") {
  CHECK(optimal_lambda(1.0) == 2.0);
  CHECK(optimal_lambda(1.0 - 1e-13) == 2.0);
  CHECK(optimal_lambda(0.75) == doctest::Approx(2.0));
  for (double eps : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    double best = INFINITY;
    for (int i = 0; i < 10000; ++i) {
      const double lam = std::pow(10.0, -3.0 + 6.0 * i / 9999.0);
      best = std::min(best, lam * (1.0 - eps) + 1.0 / lam);
    }
    CHECK(std::abs(best - 2.0 * std::sqrt(1.0 - eps)) < 1e-6);
    const double l0 = optimal_lambda(eps);
    CHECK(l0 * (1.0 - eps) + 1.0 / l0 == doctest::Approx(2.0 * std::sqrt(1.0 - eps)).epsilon(1e-14));
  }
}

TEST_CASE("strictness: 2 - eps exceeds both sqrt(1 - eps) and 2 sqrt(1 - eps)") {
  RngStream rng(72);
  for (int i = 0; i < 1000; ++i) {
    const double eps = 1e-6 + (1.0 - 2e-6) * rng.uniform();
    CHECK(2.0 - eps > std::sqrt(1.0 - eps));
    CHECK(2.0 - eps > 2.0 * std::sqrt(1.0 - eps));
  }
  CHECK(2.0 - 1.0 > 2.0 * std::sqrt(0.0));
}

TEST_CASE("find_violating_projection examples") {
  const auto vp = find_violating_projection(single(mat({{1, 0}, {0, 0}})));
  REQUIRE(vp.has_value());
  CHECK(max_abs_diff(vp->p, single(mat({{0.5, 0.5}, {0.5, 0.5}}))) < 1e-12);
  CHECK(vp->min_eigenvalue == doctest::Approx(-0.3090169943749474).epsilon(1e-12));

  CHECK_FALSE(find_violating_projection(AlgebraElement::central(AlgebraShape({3, 1}), {2.0, 4.0})).has_value());

  const AlgebraElement a = element({2, 1}, {mat({{2, 0}, {0, 1}}), mat({{5}})});
  const auto vp2 = find_violating_projection(a);
  REQUIRE(vp2.has_value());
  CHECK(vp2->block == 0);
  CHECK(vp2->p.block(1)(0, 0) == Complex(0.0));
  const ComplexMatrix restricted = a.block(0) - vp2->p.block(0) * a.block(0) * vp2->p.block(0);
  CHECK((restricted.determinant()).real() == doctest::Approx(-0.25).epsilon(1e-12));
}

TEST_CASE("violating_symmetry_state examples") {
  const auto s1 = violating_symmetry_state(single(mat({{1, 0}, {0, 0}})));
  REQUIRE(s1.has_value());
  CHECK(max_abs_diff(s1->symmetry, swap2()) < 1e-12);
  CHECK(max_abs_diff(s1->state.density(), e11_state().density()) < 1e-12);
  CHECK(s1->gap == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_FALSE(violating_symmetry_state(AlgebraElement::identity(AlgebraShape({2}))).has_value());

  const AlgebraElement a = single(mat({{2, 0}, {0, 1}}));
  const auto s2 = violating_symmetry_state(a);
  REQUIRE(s2.has_value());
  CHECK(max_abs_diff(s2->state.density(), e11_state().density()) < 1e-12);
  const Lemma1Witness w = lemma1_construct(a, s2->symmetry, s2->state);
  CHECK(w.epsilon == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("gardner witness examples") {
  const auto g1 = gardner_witness(single(mat({{1, 0}, {0, 0}})));
  REQUIRE(g1.has_value());
  CHECK(g1->lhs == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(g1->rhs == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(g1->margin == doctest::Approx(0.5 - std::sqrt(0.5)).epsilon(1e-12));

  CHECK_FALSE(gardner_witness(AlgebraElement::central(AlgebraShape({2, 2}), {1.0, 3.0})).has_value());

  const auto g2 = gardner_witness(single(mat({{2, 0}, {0, 1}})));
  REQUIRE(g2.has_value());
  // a sigma = [[1, 1], [0.5, 0.5]] is rank one: its trace norm is its Frobenius norm.
  CHECK(g2->lhs == doctest::Approx(std::sqrt(2.5)).epsilon(1e-12));
  CHECK(g2->lhs == doctest::Approx(testing_support::trace_norm2_closed_form(mat({{1, 1}, {0.5, 0.5}}))).epsilon(1e-12));
  CHECK(g2->rhs == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("worked certificates") {
  const AlgebraElement a = single(mat({{1, 0}, {0, 0}}));
  const Lemma1Witness w = lemma1_construct(a, swap2(), e11_state());
  const auto certs = derive_condition_certificates(a, w);
  CHECK(certs.size() == 11);
  CHECK(certs.at(ConditionId::iii).lhs == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(certs.at(ConditionId::iii).rhs == doctest::Approx(0.5).epsilon(1e-12));
  const auto& iii = std::get<DecompositionInputs>(certs.at(ConditionId::iii).inputs);
  CHECK(max_abs_diff(iii.phi.density(), single(mat({{0, 2}, {2, 0}}))) < 1e-12);
  CHECK(certs.at(ConditionId::xi).lhs == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(certs.at(ConditionId::vii).lhs == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(certs.at(ConditionId::vii).rhs == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(certs.at(ConditionId::vi).lhs == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(certs.at(ConditionId::vi).rhs == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& [id, cert] : certs) {
    CHECK(cert.condition == id);
    CHECK(verify_certificate(cert, a));
  }
}

TEST_CASE("tampered certificates are rejected") {
  const AlgebraElement a = single(mat({{1, 0}, {0, 0}}));
  Lemma1Witness w = lemma1_construct(a, swap2(), e11_state());
  w.psi1 = NormalFunctional(w.psi1.density() + single(mat({{0, 0.1}, {0.1, 0}})));
  CHECK_FALSE(verify_certificate(w, a));

  const auto chain = build_witness_chain(a);
  REQUIRE(chain.has_value());
  MarginReport ii = chain->certificates.at(ConditionId::ii);
  CHECK(verify_certificate(ii, a));
  ii.inputs = ProjectionInputs{single(mat({{1, 0}, {0, 0}}))};
  CHECK_FALSE(verify_certificate(ii, a));

  MarginReport vi = chain->certificates.at(ConditionId::vi);
  vi.lhs += 0.01;
  CHECK_FALSE(verify_certificate(vi, a));

  CHECK_THROWS_AS(verify_certificate(chain->certificates.at(ConditionId::v), AlgebraElement::identity(AlgebraShape({3}))),
                  Error);
  CHECK_FALSE(build_witness_chain(AlgebraElement::identity(AlgebraShape({2, 2}))).has_value());
}

TEST_CASE("Lemma identities and end-to-end soundness on random non-central elements") {
  RngStream rng(73);
  const std::vector<std::vector<int>> shapes = {{2}, {3}, {2, 2}, {4, 3, 2}, {2, 1}, {1, 3}};
  for (int trial = 0; trial < 120; ++trial) {
    const AlgebraShape shape(shapes[trial % shapes.size()]);
    const AlgebraElement a = random_noncentral_positive(shape, rng);
    const auto chain = build_witness_chain(a);
    REQUIRE(chain.has_value());
    const Lemma1Witness& w = chain->lemma;
    const AlgebraElement one = AlgebraElement::identity(shape);
    const AlgebraElement& s = w.symmetry;
    const AlgebraElement& rho = w.state.density();
    const AlgebraElement v1 = s + Complex(1.0 / w.lambda0) * one;
    const AlgebraElement v2 = s - Complex(1.0 / w.lambda0) * one;
    const double scale = std::max({1.0, a.norm(), w.psi1.norm() + w.psi2.norm()});
    CHECK(max_abs_diff(w.psi1.density(), Complex(w.lambda0) * (v1 * rho * v1)) <= 1e-10 * scale);
    CHECK(max_abs_diff(w.psi2.density(), Complex(w.lambda0) * (v2 * rho * v2)) <= 1e-10 * scale);
    CHECK(max_abs_diff(functional_abs(w.psi1 - w.psi2).density(), Complex(2.0) * (rho + s * rho * s)) <= 1e-9 * scale);
    CHECK(std::abs(w.lhs - 2.0 * (2.0 - w.epsilon) * w.state_at_a) <= 1e-9 * scale);
    CHECK(std::abs(w.rhs - 2.0 * (w.lambda0 * (1.0 - w.epsilon) + 1.0 / w.lambda0) * w.state_at_a) <= 1e-9 * scale);
    CHECK(w.margin() >= 1e-8 * w.scale);
    CHECK(verify_certificate(w, a));
    REQUIRE(chain->certificates.size() == 11);
    for (const auto& [id, cert] : chain->certificates) {
      CHECK(cert.margin < -1e-8 * cert.scale);
      CHECK(verify_certificate(cert, a));
    }
  }
}
