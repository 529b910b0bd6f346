#include "centrality/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "centrality/errors.hpp"

namespace centrality {

AlgebraShape::AlgebraShape(std::vector<int> block_dims, int dimension_cap)
    : dims_(std::move(block_dims)) {
  if (dims_.empty()) throw Error(ErrorCode::DimensionMismatch, "shape needs at least one block");
  for (int d : dims_) {
    if (d <= 0) throw Error(ErrorCode::DimensionMismatch, "block dimensions must be positive");
    total_ += d;
    if (total_ > dimension_cap) {
      throw Error(ErrorCode::DimensionMismatch,
                  "total dimension exceeds cap of " + std::to_string(dimension_cap));
    }
  }
}

bool AlgebraShape::is_abelian() const noexcept {
  return std::all_of(dims_.begin(), dims_.end(), [](int d) { return d == 1; });
}

AlgebraElement::AlgebraElement(AlgebraShape shape, std::vector<ComplexMatrix> blocks)
    : shape_(std::move(shape)), blocks_(std::move(blocks)) {
  if (blocks_.size() != shape_.num_blocks()) {
    throw Error(ErrorCode::ShapeMismatch, "expected " + std::to_string(shape_.num_blocks()) +
                                              " blocks, got " + std::to_string(blocks_.size()));
  }
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const int n = shape_.block_dim(k);
    if (blocks_[k].rows() != n || blocks_[k].cols() != n) {
      throw Error(ErrorCode::ShapeMismatch, "block " + std::to_string(k) + " must be " +
                                                std::to_string(n) + "x" + std::to_string(n));
    }
    if (!blocks_[k].allFinite()) {
      throw Error(ErrorCode::ShapeMismatch, "block " + std::to_string(k) + " has non-finite entries");
    }
  }
}

AlgebraElement AlgebraElement::zero(const AlgebraShape& shape) {
  std::vector<ComplexMatrix> blocks;
  for (int n : shape.block_dims()) blocks.push_back(ComplexMatrix::Zero(n, n));
  return {shape, std::move(blocks)};
}

AlgebraElement AlgebraElement::identity(const AlgebraShape& shape) {
  std::vector<ComplexMatrix> blocks;
  for (int n : shape.block_dims()) blocks.push_back(ComplexMatrix::Identity(n, n));
  return {shape, std::move(blocks)};
}

AlgebraElement AlgebraElement::central(const AlgebraShape& shape, const std::vector<double>& values) {
  if (values.size() != shape.num_blocks()) {
    throw Error(ErrorCode::ShapeMismatch, "one scalar per block required");
  }
  std::vector<ComplexMatrix> blocks;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const int n = shape.block_dim(k);
    blocks.push_back(values[k] * ComplexMatrix::Identity(n, n));
  }
  return {shape, std::move(blocks)};
}

AlgebraElement AlgebraElement::adjoint() const {
  std::vector<ComplexMatrix> out;
  out.reserve(blocks_.size());
  for (const auto& b : blocks_) out.push_back(b.adjoint());
  return {shape_, std::move(out)};
}

double AlgebraElement::norm() const {
  double out = 0.0;
  for (const auto& b : blocks_) out = std::max(out, operator_norm(b));
  return out;
}

Complex AlgebraElement::trace() const {
  Complex out = 0.0;
  for (const auto& b : blocks_) out += b.trace();
  return out;
}

void require_same_shape(const AlgebraElement& x, const AlgebraElement& y) {
  if (!(x.shape() == y.shape())) throw Error(ErrorCode::ShapeMismatch, "algebra shapes differ");
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
  require_same_shape(*this, other);
  for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] += other.blocks_[k];
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other) {
  require_same_shape(*this, other);
  for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] -= other.blocks_[k];
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(Complex scalar) {
  for (auto& b : blocks_) b *= scalar;
  return *this;
}

AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_shape(x, y);
  std::vector<ComplexMatrix> out;
  out.reserve(x.num_blocks());
  for (std::size_t k = 0; k < x.num_blocks(); ++k) out.push_back(x.block(k) * y.block(k));
  return {x.shape(), std::move(out)};
}

double distance(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_shape(x, y);
  double out = 0.0;
  for (std::size_t k = 0; k < x.num_blocks(); ++k) {
    out = std::max(out, (x.block(k) - y.block(k)).norm());
  }
  return out;
}

double norm_scale(const AlgebraElement& x) { return std::max(1.0, x.norm()); }

bool is_hermitian(const AlgebraElement& x, double tol) {
  const double scale = norm_scale(x);
  return std::all_of(x.blocks().begin(), x.blocks().end(), [&](const ComplexMatrix& b) {
    return (b - b.adjoint()).norm() <= tol * scale;
  });
}

namespace {

// Eigenvalues of the Hermitian part of each block, descending per block.
std::vector<RealVector> block_spectra(const AlgebraElement& x) {
  std::vector<RealVector> out;
  for (const auto& b : x.blocks()) out.push_back(herm_eig(0.5 * (b + b.adjoint())).values);
  return out;
}

}  // namespace

PositivityReport is_positive(const AlgebraElement& x, double tol) {
  PositivityReport report;
  const auto spectra = block_spectra(x);
  report.min_eigenvalue = spectra.front()(spectra.front().size() - 1);
  for (const auto& s : spectra) report.min_eigenvalue = std::min(report.min_eigenvalue, s(s.size() - 1));
  report.positive = is_hermitian(x, tol) && report.min_eigenvalue >= -tol * norm_scale(x);
  return report;
}

bool is_projection(const AlgebraElement& x, double tol) {
  const double scale = norm_scale(x);
  return is_hermitian(x, tol) && distance(x * x, x) <= tol * scale;
}

bool is_symmetry(const AlgebraElement& x, double tol) {
  return is_hermitian(x, tol) && distance(x * x, AlgebraElement::identity(x.shape())) <= tol;
}

bool is_unitary(const AlgebraElement& x, double tol) {
  return distance(x.adjoint() * x, AlgebraElement::identity(x.shape())) <= tol;
}

double max_eigenvalue(const AlgebraElement& x, double tol) {
  if (!is_hermitian(x, tol)) throw Error(ErrorCode::NotHermitian, "max_eigenvalue needs Hermitian input");
  double out = -INFINITY;
  for (const auto& s : block_spectra(x)) out = std::max(out, s(0));
  return out;
}

double min_eigenvalue(const AlgebraElement& x, double tol) {
  if (!is_hermitian(x, tol)) throw Error(ErrorCode::NotHermitian, "min_eigenvalue needs Hermitian input");
  double out = INFINITY;
  for (const auto& s : block_spectra(x)) out = std::min(out, s(s.size() - 1));
  return out;
}

AlgebraElement psd_sqrt(const AlgebraElement& x, double tol) {
  std::vector<ComplexMatrix> out;
  for (const auto& b : x.blocks()) out.push_back(psd_sqrt(b, tol));
  return {x.shape(), std::move(out)};
}

CenterReport center_distance(const AlgebraElement& a, double tol) {
  if (!is_hermitian(a, tol)) throw Error(ErrorCode::NotHermitian, "center_distance needs Hermitian input");
  const auto spectra = block_spectra(a);
  double dist = 0.0;
  std::vector<double> mids;
  for (const auto& s : spectra) {
    const double hi = s(0);
    const double lo = s(s.size() - 1);
    dist = std::max(dist, 0.5 * (hi - lo));
    mids.push_back(0.5 * (hi + lo));
  }
  return {dist, AlgebraElement::central(a.shape(), mids)};
}

bool is_central(const AlgebraElement& a, double tol) {
  return center_distance(a, tol).distance <= tol * norm_scale(a);
}

AlgebraElement projection_from_vectors(const AlgebraShape& shape, std::size_t block_index,
                                       const ComplexMatrix& vectors, double tol) {
  if (block_index >= shape.num_blocks()) {
    throw Error(ErrorCode::ShapeMismatch, "block index out of range");
  }
  AlgebraElement out = AlgebraElement::zero(shape);
  if (vectors.cols() == 0) return out;
  const int n = shape.block_dim(block_index);
  if (vectors.rows() != n) throw Error(ErrorCode::ShapeMismatch, "vector length must match block dimension");
  const ComplexMatrix gram = vectors.adjoint() * vectors;
  if ((gram - ComplexMatrix::Identity(gram.rows(), gram.cols())).norm() > tol) {
    throw Error(ErrorCode::NotOrthonormal, "vectors are not orthonormal");
  }
  std::vector<ComplexMatrix> blocks = out.blocks();
  blocks[block_index] = vectors * vectors.adjoint();
  return {shape, std::move(blocks)};
}

AlgebraElement symmetry_from_projection(const AlgebraElement& p, double tol) {
  if (!is_projection(p, tol)) throw Error(ErrorCode::NotProjection, "symmetry needs a projection");
  return Complex(2.0) * p - AlgebraElement::identity(p.shape());
}

// ---------------------------------------------------------------------------

namespace {

ComplexMatrix gaussian_block(int n, RngStream& rng) {
  ComplexMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
  return g;
}

}  // namespace

AlgebraElement random_general(const AlgebraShape& shape, RngStream& rng) {
  std::vector<ComplexMatrix> blocks;
  for (int n : shape.block_dims()) blocks.push_back(gaussian_block(n, rng));
  return {shape, std::move(blocks)};
}

AlgebraElement random_hermitian(const AlgebraShape& shape, RngStream& rng) {
  std::vector<ComplexMatrix> blocks;
  for (int n : shape.block_dims()) {
    const ComplexMatrix g = gaussian_block(n, rng);
    blocks.push_back(0.5 * (g + g.adjoint()));
  }
  return {shape, std::move(blocks)};
}

AlgebraElement random_psd(const AlgebraShape& shape, RngStream& rng) {
  std::vector<ComplexMatrix> blocks;
  for (int n : shape.block_dims()) {
    const ComplexMatrix b = gaussian_block(n, rng);
    ComplexMatrix psd = b.adjoint() * b;
    blocks.push_back(0.5 * (psd + psd.adjoint()));
  }
  return {shape, std::move(blocks)};
}

AlgebraElement random_state_density(const AlgebraShape& shape, RngStream& rng) {
  AlgebraElement psd = random_psd(shape, rng);
  const double tr = psd.trace().real();
  return psd * Complex(1.0 / tr);
}

AlgebraElement random_projection(const AlgebraShape& shape, RngStream& rng) {
  std::vector<ComplexMatrix> blocks;
  for (int n : shape.block_dims()) {
    const int rank = rng.uniform_int(0, n);
    const ComplexMatrix g = gaussian_block(n, rng);
    const EigenDecomposition eig = herm_eig(0.5 * (g + g.adjoint()));
    const ComplexMatrix v = eig.vectors.leftCols(rank);
    blocks.push_back(v * v.adjoint());
  }
  return {shape, std::move(blocks)};
}

AlgebraElement random_unitary(const AlgebraShape& shape, RngStream& rng) {
  std::vector<ComplexMatrix> blocks;
  for (int n : shape.block_dims()) {
    const ComplexMatrix g = gaussian_block(n, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
    const ComplexMatrix& r = qr.matrixQR();
    // Fix column phases so the distribution is Haar.
    for (int j = 0; j < n; ++j) {
      const double mag = std::abs(r(j, j));
      if (mag > 0.0) q.col(j) *= r(j, j) / mag;
    }
    blocks.push_back(q);
  }
  return {shape, std::move(blocks)};
}

AlgebraElement random_central_positive(const AlgebraShape& shape, RngStream& rng) {
  std::vector<double> values;
  for (std::size_t k = 0; k < shape.num_blocks(); ++k) values.push_back(2.0 * rng.uniform());
  return AlgebraElement::central(shape, values);
}

AlgebraElement random_noncentral_positive(const AlgebraShape& shape, RngStream& rng) {
  if (shape.is_abelian()) {
    throw Error(ErrorCode::InvalidInputs, "every element of an abelian algebra is central");
  }
  auto far_enough = [](const AlgebraElement& a) {
    return center_distance(a).distance > kNoncentralMargin * norm_scale(a);
  };
  constexpr int kAttempts = 64;
  AlgebraElement a = random_psd(shape, rng);
  for (int attempt = 1; attempt < kAttempts && !far_enough(a); ++attempt) a = random_psd(shape, rng);
  if (far_enough(a)) return a;

  // Perturb the largest block by a growing rank-one bump until the spread wins.
  const auto& dims = shape.block_dims();
  const std::size_t big =
      static_cast<std::size_t>(std::max_element(dims.begin(), dims.end()) - dims.begin());
  double bump = norm_scale(a);
  while (!far_enough(a)) {
    std::vector<ComplexMatrix> blocks = a.blocks();
    blocks[big](0, 0) += bump;
    a = AlgebraElement(shape, std::move(blocks));
    bump *= 2.0;
  }
  return a;
}

AlgebraElement random_generate(RandomKind kind, const AlgebraShape& shape, RngStream& rng) {
  switch (kind) {
    case RandomKind::Hermitian: return random_hermitian(shape, rng);
    case RandomKind::Psd: return random_psd(shape, rng);
    case RandomKind::State: return random_state_density(shape, rng);
    case RandomKind::Projection: return random_projection(shape, rng);
    case RandomKind::Unitary: return random_unitary(shape, rng);
    case RandomKind::CentralPositive: return random_central_positive(shape, rng);
    case RandomKind::NoncentralPositive: return random_noncentral_positive(shape, rng);
  }
  throw Error(ErrorCode::InvalidInputs, "unknown random kind");
}

}  // namespace centrality
