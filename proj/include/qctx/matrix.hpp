#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qctx/backend.hpp"
#include "qctx/error.hpp"

namespace qctx {

/// Small dense row-major matrix over a backend's scalar field. Sizes are
/// desk scale (dim <= 16), so every algorithm here is plain Gaussian
/// elimination.
template <Backend B>
class Matrix {
 public:
  using Scalar = typename B::Scalar;
  using Real = typename B::Real;
  using Vector = std::vector<Scalar>;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix zero(std::size_t n) { return Matrix(n, n); }
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
  }
  static Matrix diagonal(std::span<const Real> values) {
    Matrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = B::from_real(values[i]);
    return m;
  }
  /// v w^*
  static Matrix outer(std::span<const Scalar> v, std::span<const Scalar> w) {
    Matrix m(v.size(), w.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = 0; j < w.size(); ++j) m(i, j) = v[i] * B::conj(w[j]);
    }
    return m;
  }
  /// Matrix whose columns are the given vectors.
  static Matrix from_columns(std::span<const Vector> columns, std::size_t rows) {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      require_same_dim(columns[j].size(), rows, "Matrix::from_columns");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const Scalar> data() const { return data_; }

  Matrix adjoint() const {
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = B::conj((*this)(i, j));
    }
    return m;
  }

  Scalar trace() const {
    Scalar t{};
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  Vector column(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  Vector apply(std::span<const Scalar> v) const {
    require_same_dim(v.size(), cols_, "Matrix::apply");
    Vector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    }
    return out;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o, "matrix addition");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o, "matrix subtraction");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const Scalar& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
  friend Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product: inner dimensions differ");
    Matrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& aik = a(i, k);
        if (B::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
      }
    }
    return m;
  }

  /// Entrywise equality under the backend's predicate.
  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < a.data_.size(); ++k) {
      if (!B::equal(a.data_[k], b.data_[k])) return false;
    }
    return true;
  }

  bool is_zero() const {
    for (const auto& x : data_) {
      if (!B::is_zero(x)) return false;
    }
    return true;
  }

  bool is_hermitian() const { return is_square() && *this == adjoint(); }

  /// Reduced row echelon form; returns the pivot columns.
  std::vector<std::size_t> reduce_in_place() {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
      std::size_t best = rows_;
      double best_weight = 0.0;
      for (std::size_t r = row; r < rows_; ++r) {
        if (B::is_zero((*this)(r, col))) continue;
        const double w = B::pivot_weight((*this)(r, col));
        if (best == rows_ || w > best_weight) {
          best = r;
          best_weight = w;
        }
      }
      if (best == rows_) {
        for (std::size_t r = row; r < rows_; ++r) (*this)(r, col) = Scalar{};
        continue;
      }
      swap_rows(row, best);
      const Scalar inv = B::inverse((*this)(row, col));
      for (std::size_t j = 0; j < cols_; ++j) (*this)(row, j) *= inv;
      (*this)(row, col) = Scalar(1);
      for (std::size_t r = 0; r < rows_; ++r) {
        if (r == row || B::is_zero((*this)(r, col))) continue;
        const Scalar factor = (*this)(r, col);
        for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) -= factor * (*this)(row, j);
        (*this)(r, col) = Scalar{};
      }
      pivots.push_back(col);
      ++row;
    }
    return pivots;
  }

  Matrix reduced() const {
    Matrix m = *this;
    m.reduce_in_place();
    return m;
  }

  std::size_t rank() const {
    Matrix m = *this;
    return m.reduce_in_place().size();
  }

  /// Basis of the kernel, one vector per free column of the reduced form.
  std::vector<Vector> nullspace() const {
    Matrix m = *this;
    const auto pivots = m.reduce_in_place();
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      Vector v(cols_);
      v[free] = Scalar(1);
      for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  std::optional<Matrix> inverse() const {
    if (!is_square()) throw DimensionError("inverse of a non-square matrix");
    const std::size_t n = rows_;
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
      aug(i, n + i) = Scalar(1);
    }
    const auto pivots = aug.reduce_in_place();
    if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    }
    return inv;
  }

 private:
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void check_same_shape(const Matrix& o, const char* what) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError(std::string(what) + ": shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

template <Backend B>
typename B::Scalar inner(std::span<const typename B::Scalar> v, std::span<const typename B::Scalar> w) {
  require_same_dim(v.size(), w.size(), "inner product");
  typename B::Scalar s{};
  for (std::size_t i = 0; i < v.size(); ++i) s += B::conj(v[i]) * w[i];
  return s;
}

}  // namespace qctx
