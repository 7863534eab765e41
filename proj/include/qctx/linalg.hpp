#pragma once

// Hermitian operators, projectors, density matrices and the finite
// functional calculus on top of Matrix<B>.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qctx/backend.hpp"
#include "qctx/matrix.hpp"

namespace qctx {

template <Backend B>
bool commute(const Matrix<B>& a, const Matrix<B>& b) {
  return a * b == b * a;
}

template <Backend B>
class HermitianOperator {
 public:
  using Real = typename B::Real;

  /// Throws ValidationError if m is not square or not self-adjoint.
  static HermitianOperator from_matrix(Matrix<B> m);
  static HermitianOperator diagonal(std::span<const Real> values);

  std::size_t dim() const { return matrix_.rows(); }
  const Matrix<B>& matrix() const { return matrix_; }

  friend bool operator==(const HermitianOperator& a, const HermitianOperator& b) {
    return a.matrix_ == b.matrix_;
  }

 private:
  explicit HermitianOperator(Matrix<B> m) : matrix_(std::move(m)) {}
  Matrix<B> matrix_;
};

/// Orthogonal projection. The matrix itself is the canonical representation
/// of the range: two projectors onto the same subspace have identical
/// matrices (bitwise on the exact backend).
template <Backend B>
class Projector {
 public:
  using Scalar = typename B::Scalar;
  using Vector = std::vector<Scalar>;

  static Projector zero(std::size_t dim);
  static Projector identity(std::size_t dim);
  /// v v^* / <v, v>; the vector need not be normalized.
  static Projector from_vector(std::span<const Scalar> v);
  /// Projection onto the span of the given vectors (any spanning set).
  static Projector onto_span(std::span<const Vector> vectors, std::size_t dim);
  /// Throws ValidationError unless m is Hermitian and idempotent.
  static Projector from_matrix(Matrix<B> m);

  std::size_t dim() const { return matrix_.rows(); }
  std::size_t rank() const { return rank_; }
  bool is_zero() const { return rank_ == 0; }
  const Matrix<B>& matrix() const { return matrix_; }

  bool orthogonal_to(const Projector& o) const;
  /// Operator order P <= Q, i.e. range(P) is contained in range(Q).
  bool leq(const Projector& o) const;
  bool commutes_with(const Projector& o) const { return commute(matrix_, o.matrix_); }

  Projector complement() const;
  /// P Q for commuting P, Q.
  Projector product(const Projector& o) const;
  /// P + Q for orthogonal P, Q.
  Projector plus(const Projector& o) const;

  /// Orthogonal basis of the range, in reduced echelon form.
  std::vector<Vector> range_basis() const;

  /// Stable text rendering of the matrix; equal projectors give equal keys.
  std::string key() const;

  friend bool operator==(const Projector& a, const Projector& b) {
    return a.rank_ == b.rank_ && a.matrix_ == b.matrix_;
  }

 private:
  Projector(Matrix<B> m, std::size_t rank) : matrix_(std::move(m)), rank_(rank) {}
  Matrix<B> matrix_;
  std::size_t rank_ = 0;
};

/// Canonical ordering of projectors: entrywise, row-major, larger entry
/// first. Puts the diagonal unit vectors in their natural order.
template <Backend B>
int compare_projectors(const Projector<B>& a, const Projector<B>& b);

template <Backend B>
class DensityMatrix {
 public:
  using Real = typename B::Real;
  using Scalar = typename B::Scalar;

  /// Throws ValidationError unless Hermitian, trace one and positive
  /// semidefinite.
  static DensityMatrix from_matrix(Matrix<B> m);
  static DensityMatrix pure(std::span<const Scalar> psi);
  static DensityMatrix diagonal(std::span<const Real> weights);
  static DensityMatrix maximally_mixed(std::size_t dim);
  static DensityMatrix basis_state(std::size_t dim, std::size_t k);

  std::size_t dim() const { return matrix_.rows(); }
  const Matrix<B>& matrix() const { return matrix_; }

 private:
  explicit DensityMatrix(Matrix<B> m) : matrix_(std::move(m)) {}
  Matrix<B> matrix_;
};

template <Backend B>
bool is_positive_semidefinite(const Matrix<B>& m);

template <Backend B>
struct Eigenspace {
  typename B::Real eigenvalue;
  Projector<B> projector;
};

/// Spectral decomposition with strictly increasing eigenvalues. On the float
/// backend eigenvalues closer than tolerance() share one eigenprojector. The
/// exact backend requires the spectrum to lie in Q(sqrt 2) and throws
/// ValidationError otherwise.
template <Backend B>
std::vector<Eigenspace<B>> spectral_decompose(const HermitianOperator<B>& a);

/// A real function given by its values on finitely many points.
template <Backend B>
class EigenvalueFunction {
 public:
  using Real = typename B::Real;

  EigenvalueFunction() = default;
  explicit EigenvalueFunction(std::vector<std::pair<Real, Real>> table) : table_(std::move(table)) {}

  void set(Real x, Real y);
  std::optional<Real> operator()(const Real& x) const;
  const std::vector<std::pair<Real, Real>>& table() const { return table_; }

 private:
  std::vector<std::pair<Real, Real>> table_;
};

/// sum_i f(l_i) P_i over the spectral decomposition of a. Throws
/// ValidationError if f is undefined at an eigenvalue.
template <Backend B>
HermitianOperator<B> apply_function(const HermitianOperator<B>& a, const EigenvalueFunction<B>& f);

/// tr(rho P), clamped into [0, 1] when it lies within tolerance outside.
template <Backend B>
typename B::Real born_probability(const DensityMatrix<B>& rho, const Projector<B>& p);

/// Real part of tr(rho M) for an arbitrary matrix.
template <Backend B>
typename B::Real expectation(const DensityMatrix<B>& rho, const Matrix<B>& m);

}  // namespace qctx
