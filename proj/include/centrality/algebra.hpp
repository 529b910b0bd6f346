#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "centrality/matrix_kernel.hpp"
#include "centrality/rng.hpp"

namespace centrality {

inline constexpr int kDefaultDimensionCap = 64;

// The ambient algebra M = M_{n_1}(C) + ... + M_{n_k}(C). Its center is the set
// of blockwise scalar multiples of the identity.
class AlgebraShape {
 public:
  explicit AlgebraShape(std::vector<int> block_dims, int dimension_cap = kDefaultDimensionCap);

  const std::vector<int>& block_dims() const noexcept { return dims_; }
  std::size_t num_blocks() const noexcept { return dims_.size(); }
  int block_dim(std::size_t k) const { return dims_.at(k); }
  int total_dim() const noexcept { return total_; }
  /// True when every block is 1x1, i.e. the algebra is commutative.
  bool is_abelian() const noexcept;

  bool operator==(const AlgebraShape& other) const noexcept { return dims_ == other.dims_; }

 private:
  std::vector<int> dims_;
  int total_ = 0;
};

// A block-diagonal operator, one dense complex matrix per block.
class AlgebraElement {
 public:
  AlgebraElement(AlgebraShape shape, std::vector<ComplexMatrix> blocks);

  static AlgebraElement zero(const AlgebraShape& shape);
  static AlgebraElement identity(const AlgebraShape& shape);
  /// Central element with block k equal to values[k] * I.
  static AlgebraElement central(const AlgebraShape& shape, const std::vector<double>& values);

  const AlgebraShape& shape() const noexcept { return shape_; }
  const std::vector<ComplexMatrix>& blocks() const noexcept { return blocks_; }
  const ComplexMatrix& block(std::size_t k) const { return blocks_.at(k); }
  std::size_t num_blocks() const noexcept { return blocks_.size(); }

  AlgebraElement adjoint() const;
  /// Operator norm: the largest block norm.
  double norm() const;
  Complex trace() const;

  AlgebraElement& operator+=(const AlgebraElement& other);
  AlgebraElement& operator-=(const AlgebraElement& other);
  AlgebraElement& operator*=(Complex scalar);

  friend AlgebraElement operator+(AlgebraElement x, const AlgebraElement& y) { return x += y; }
  friend AlgebraElement operator-(AlgebraElement x, const AlgebraElement& y) { return x -= y; }
  friend AlgebraElement operator*(AlgebraElement x, Complex c) { return x *= c; }
  friend AlgebraElement operator*(Complex c, AlgebraElement x) { return x *= c; }
  friend AlgebraElement operator-(AlgebraElement x) { return x *= Complex(-1.0); }
  friend AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y);

 private:
  AlgebraShape shape_;
  std::vector<ComplexMatrix> blocks_;
};

void require_same_shape(const AlgebraElement& x, const AlgebraElement& y);

/// Blockwise max of Frobenius distances.
double distance(const AlgebraElement& x, const AlgebraElement& y);

/// max(1, ||x||).
double norm_scale(const AlgebraElement& x);

bool is_hermitian(const AlgebraElement& x, double tol = kDefaultTol);

struct PositivityReport {
  bool positive = false;
  double min_eigenvalue = 0.0;
};

/// Positive iff Hermitian within tol and every block's smallest eigenvalue is
/// at least -tol * max(1, ||x||). min_eigenvalue is only meaningful for
/// Hermitian input (it is reported for the Hermitian part otherwise).
PositivityReport is_positive(const AlgebraElement& x, double tol = kDefaultTol);

bool is_projection(const AlgebraElement& x, double tol = kDefaultTol);
bool is_symmetry(const AlgebraElement& x, double tol = kDefaultTol);
bool is_unitary(const AlgebraElement& x, double tol = kDefaultTol);

/// Largest and smallest eigenvalue over all blocks of a Hermitian element.
double max_eigenvalue(const AlgebraElement& x, double tol = kDefaultTol);
double min_eigenvalue(const AlgebraElement& x, double tol = kDefaultTol);

/// Blockwise PSD square root.
AlgebraElement psd_sqrt(const AlgebraElement& x, double tol = kDefaultTol);

struct CenterReport {
  double distance = 0.0;
  AlgebraElement nearest_central;
};

/// Operator-norm distance from a Hermitian element to the center: the largest
/// half eigen-spread over blocks, with the blockwise spectral midpoints as the
/// nearest central element.
CenterReport center_distance(const AlgebraElement& a, double tol = kDefaultTol);

/// center_distance(a) <= tol * max(1, ||a||).
bool is_central(const AlgebraElement& a, double tol = kDefaultTol);

/// Projection onto span(columns of vectors) inside one block, zero on every
/// other block. An empty column set gives the zero projection.
AlgebraElement projection_from_vectors(const AlgebraShape& shape, std::size_t block_index,
                                       const ComplexMatrix& vectors, double tol = kDefaultTol);

/// s = 2p - 1, a symmetry of the whole algebra.
AlgebraElement symmetry_from_projection(const AlgebraElement& p, double tol = kDefaultTol);

// ---------------------------------------------------------------------------
// Seeded generators. Each consumes only the given stream.

enum class RandomKind {
  Hermitian,
  Psd,
  State,
  Projection,
  Unitary,
  CentralPositive,
  NoncentralPositive,
};

/// Non-centrality margin for generated instances: distance >= this * max(1, ||a||).
inline constexpr double kNoncentralMargin = 0.05;

AlgebraElement random_hermitian(const AlgebraShape& shape, RngStream& rng);
AlgebraElement random_psd(const AlgebraShape& shape, RngStream& rng);
AlgebraElement random_state_density(const AlgebraShape& shape, RngStream& rng);
AlgebraElement random_projection(const AlgebraShape& shape, RngStream& rng);
AlgebraElement random_unitary(const AlgebraShape& shape, RngStream& rng);
AlgebraElement random_central_positive(const AlgebraShape& shape, RngStream& rng);
/// Throws InvalidInputs on an abelian shape, where every element is central.
AlgebraElement random_noncentral_positive(const AlgebraShape& shape, RngStream& rng);
/// Element with independent complex Gaussian entries in every block.
AlgebraElement random_general(const AlgebraShape& shape, RngStream& rng);

AlgebraElement random_generate(RandomKind kind, const AlgebraShape& shape, RngStream& rng);

}  // namespace centrality
