#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "centrality/errors.hpp"
#include "centrality/matrix_kernel.hpp"
#include "centrality/rng.hpp"
#include "test_support.hpp"

using namespace centrality;
using testing_support::mat;
using testing_support::max_abs_diff;

namespace {

ComplexMatrix random_block(int n, RngStream& rng) {
  ComplexMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
  return g;
}

ComplexMatrix random_hermitian_block(int n, RngStream& rng) {
  const ComplexMatrix g = random_block(n, rng);
  return 0.5 * (g + g.adjoint());
}

// Rank r < n matrix.
ComplexMatrix random_low_rank(int n, int r, RngStream& rng) {
  ComplexMatrix left(n, r);
  ComplexMatrix right(r, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < r; ++k) {
      left(i, k) = rng.complex_normal();
      right(k, i) = rng.complex_normal();
    }
  return left * right;
}

}  // namespace

TEST_CASE("herm_eig on the swap matrix matches the characteristic polynomial") {
  const ComplexMatrix h = mat({{0, 1}, {1, 0}});
  const auto [hi, lo] = testing_support::eig2_closed_form(h);
  const EigenDecomposition eig = herm_eig(h);
  CHECK(eig.values(0) == doctest::Approx(hi).epsilon(1e-14));
  CHECK(eig.values(1) == doctest::Approx(lo).epsilon(1e-14));
  CHECK(hi == doctest::Approx(1.0));
  CHECK(lo == doctest::Approx(-1.0));
  // Eigenvectors are (1, 1)/sqrt2 and (1, -1)/sqrt2 up to phase.
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(std::abs(eig.vectors(0, 0)) - r) < 1e-12);
  CHECK(std::abs(eig.vectors(0, 0) - eig.vectors(1, 0)) < 1e-12);
  CHECK(std::abs(eig.vectors(0, 1) + eig.vectors(1, 1)) < 1e-12);
}

TEST_CASE("herm_eig on diagonal and zero input") {
  const EigenDecomposition d = herm_eig(mat({{2, 0}, {0, 3}}));
  CHECK(d.values(0) == 3.0);
  CHECK(d.values(1) == 2.0);
  CHECK(std::abs(d.vectors(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(d.vectors(0, 1)) == doctest::Approx(1.0));

  const EigenDecomposition z = herm_eig(ComplexMatrix::Zero(2, 2));
  CHECK(z.values.cwiseAbs().maxCoeff() == 0.0);
  CHECK(max_abs_diff(z.vectors.adjoint() * z.vectors, ComplexMatrix::Identity(2, 2)) < 1e-14);
}

TEST_CASE("herm_eig rejects non-Hermitian and malformed input") {
  try {
    herm_eig(mat({{0, 1}, {0, 0}}));
    FAIL("expected NotHermitian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
  }
  CHECK_THROWS_AS(herm_eig(ComplexMatrix(2, 3)), Error);
  ComplexMatrix bad = mat({{1, 0}, {0, 1}});
  bad(0, 0) = NAN;
  CHECK_THROWS_AS(herm_eig(bad), Error);
}

TEST_CASE("herm_eig reconstruction and ordering on random Hermitian matrices") {
  RngStream rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 8;
    const ComplexMatrix h = random_hermitian_block(n, rng);
    const EigenDecomposition eig = herm_eig(h);
    const ComplexMatrix rebuilt = eig.vectors * eig.values.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
    CHECK((rebuilt - h).norm() <= 1e-9 * norm_scale(h));
    CHECK((eig.vectors.adjoint() * eig.vectors - ComplexMatrix::Identity(n, n)).norm() <= 1e-9);
    for (int k = 1; k < n; ++k) CHECK(eig.values(k - 1) >= eig.values(k));
  }
}

TEST_CASE("psd_sqrt examples") {
  CHECK(max_abs_diff(psd_sqrt(mat({{4, 0}, {0, 9}})), mat({{2, 0}, {0, 3}})) < 1e-14);
  const ComplexMatrix proj = mat({{0.5, 0.5}, {0.5, 0.5}});
  CHECK(max_abs_diff(psd_sqrt(proj), proj) < 1e-14);
  CHECK(max_abs_diff(psd_sqrt(2.0 * ComplexMatrix::Identity(2, 2)), std::sqrt(2.0) * ComplexMatrix::Identity(2, 2)) <
        1e-14);
}

TEST_CASE("psd_sqrt agrees with the 2x2 closed form and squares back") {
  RngStream rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix b = random_block(2, rng);
    const ComplexMatrix a = b.adjoint() * b;
    const ComplexMatrix root = psd_sqrt(a);
    CHECK(max_abs_diff(root, testing_support::sqrt2_closed_form(a)) < 1e-9 * norm_scale(a));
  }
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 8;
    const ComplexMatrix b = random_block(n, rng);
    const ComplexMatrix a = b.adjoint() * b;
    const ComplexMatrix root = psd_sqrt(a);
    CHECK((root * root - a).norm() <= 1e-9 * norm_scale(a));
    CHECK(is_hermitian(root));
  }
}

TEST_CASE("psd_sqrt clamps roundoff negatives and rejects real ones") {
  const ComplexMatrix nearly = mat({{1, 0}, {0, -1e-13}});
  const ComplexMatrix root = psd_sqrt(nearly);
  CHECK(root(1, 1) == Complex(0.0));
  try {
    psd_sqrt(mat({{1, 0}, {0, -0.1}}));
    FAIL("expected NotPSD");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPSD);
  }
}

TEST_CASE("polar_decompose examples") {
  const PolarDecomposition id = polar_decompose(ComplexMatrix::Identity(2, 2));
  CHECK(max_abs_diff(id.unitary, ComplexMatrix::Identity(2, 2)) < 1e-14);
  CHECK(max_abs_diff(id.positive, ComplexMatrix::Identity(2, 2)) < 1e-14);

  // Nilpotent: P = diag(0, 1) and W maps e2 -> e1; the kernel completion sends
  // e1 to a unit multiple of e2.
  const ComplexMatrix nil = mat({{0, 1}, {0, 0}});
  const PolarDecomposition np = polar_decompose(nil);
  CHECK(max_abs_diff(np.positive, mat({{0, 0}, {0, 1}})) < 1e-14);
  CHECK(std::abs(np.unitary(0, 1) - Complex(1.0)) < 1e-14);
  CHECK(std::abs(np.unitary(0, 0)) < 1e-14);
  CHECK(std::abs(np.unitary(1, 1)) < 1e-14);
  CHECK(std::abs(std::abs(np.unitary(1, 0)) - 1.0) < 1e-14);

  // Rank one: P = sqrt(M* M) from the closed form, trace sqrt(0.5).
  const ComplexMatrix m = mat({{0.5, 0.5}, {0, 0}});
  const PolarDecomposition mp = polar_decompose(m);
  const ComplexMatrix expected = testing_support::sqrt2_closed_form(m.adjoint() * m);
  CHECK(max_abs_diff(mp.positive, expected) < 1e-12);
  CHECK(std::abs(expected(0, 0) - 0.35355339059327373) < 1e-12);
  CHECK(mp.positive.trace().real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(max_abs_diff(mp.unitary * mp.positive, m) < 1e-12);
}

TEST_CASE("polar_decompose gives a unitary factor on random and rank-deficient input") {
  RngStream rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 6;
    const ComplexMatrix m = trial % 2 == 0 && n > 1 ? random_low_rank(n, n / 2, rng) : random_block(n, rng);
    const PolarDecomposition p = polar_decompose(m);
    CHECK((p.unitary.adjoint() * p.unitary - ComplexMatrix::Identity(n, n)).norm() <= 1e-9);
    CHECK((p.unitary * p.positive - m).norm() <= 1e-9 * norm_scale(m));
    CHECK((p.positive * p.positive - m.adjoint() * m).norm() <= 1e-9 * norm_scale(m) * norm_scale(m));
  }
}

TEST_CASE("trace_norm examples and closed form") {
  CHECK(trace_norm(mat({{1, 0}, {0, -2}})) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(trace_norm(mat({{0, 2}, {2, 0}})) == doctest::Approx(testing_support::trace_norm2_closed_form(mat({{0, 2}, {2, 0}}))));
  CHECK(trace_norm(mat({{0, 2}, {2, 0}})) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(trace_norm(ComplexMatrix::Zero(3, 3)) == 0.0);

  RngStream rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix m = random_block(2, rng);
    CHECK(trace_norm(m) == doctest::Approx(testing_support::trace_norm2_closed_form(m)).epsilon(1e-10));
  }
}

TEST_CASE("trace_norm triangle inequality") {
  RngStream rng(15);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 7;
    const ComplexMatrix a = random_block(n, rng);
    const ComplexMatrix b = trial % 3 == 0 ? ComplexMatrix(2.5 * a) : random_block(n, rng);
    CHECK(trace_norm(a + b) <= trace_norm(a) + trace_norm(b) + 1e-10);
  }
}
