#include "qctx/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace qctx {

namespace {

template <Backend B>
Eigen::MatrixXcd to_eigen(const Matrix<B>& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = B::to_complex(m(i, j));
    }
  }
  return out;
}

template <Backend B>
std::size_t rank_from_trace(const Matrix<B>& m) {
  const auto t = m.trace();
  if constexpr (B::is_exact) {
    const auto& re = t.real();
    if (!t.imag().is_zero() || !re.is_rational() || re.rational_part().get_den() != 1 || re.sign() < 0) {
      throw ValidationError("projector trace is not a non-negative integer: " + re.to_string());
    }
    return re.rational_part().get_num().get_ui();
  } else {
    const double r = std::round(t.real());
    if (std::abs(t.real() - r) > 1e-6 || r < 0) {
      throw ValidationError("projector trace is not an integer: " + std::to_string(t.real()));
    }
    return static_cast<std::size_t>(r);
  }
}

// Best rational approximation of x by continued fractions, if one with
// denominator <= max_den lies within tol of x.
std::optional<Rational> rational_approx(double x, double tol, long max_den) {
  if (!std::isfinite(x)) return std::nullopt;
  long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double frac = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(frac);
    if (std::abs(a) > 1e15) return std::nullopt;
    const auto ai = static_cast<long long>(a);
    const long long h2 = ai * h1 + h0;
    const long long k2 = ai * k1 + k0;
    if (k2 > max_den) return std::nullopt;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (std::abs(x - static_cast<double>(h1) / static_cast<double>(k1)) <= tol) {
      Rational q(mpz_class(std::to_string(h1)), mpz_class(std::to_string(k1)));
      q.canonicalize();
      return q;
    }
    const double rem = frac - a;
    if (rem == 0.0) return std::nullopt;
    frac = 1.0 / rem;
  }
  return std::nullopt;
}

// Candidate exact values in Q(sqrt 2) for a floating-point eigenvalue, most
// plausible first. Candidates are only hypotheses; callers verify them.
std::vector<QuadraticNumber> exact_candidates(double mu) {
  constexpr double kTol = 1e-9;
  std::vector<QuadraticNumber> out;
  if (auto q = rational_approx(mu, kTol * std::max(1.0, std::abs(mu)), 1000000)) out.emplace_back(*q);
  for (long den = 1; den <= 12; ++den) {
    for (long num = -24 * den; num <= 24 * den; ++num) {
      if (num == 0 || std::gcd(num, den) != 1) continue;
      const double b = static_cast<double>(num) / static_cast<double>(den);
      const double a = mu - b * M_SQRT2;
      if (auto q = rational_approx(a, kTol * std::max(1.0, std::abs(mu)), 10000)) {
        out.emplace_back(*q, Rational(num, den));
      }
    }
  }
  return out;
}

std::vector<Eigenspace<ExactBackend>> exact_spectral(const Matrix<ExactBackend>& a) {
  using B = ExactBackend;
  const std::size_t n = a.rows();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(a), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd approx = solver.eigenvalues();

  std::vector<double> clusters;
  for (Eigen::Index i = 0; i < approx.size(); ++i) {
    if (clusters.empty() || approx(i) - clusters.back() > 1e-6) clusters.push_back(approx(i));
  }

  std::vector<Eigenspace<B>> out;
  std::size_t total_rank = 0;
  for (double mu : clusters) {
    bool found = false;
    for (const auto& lambda : exact_candidates(mu)) {
      Matrix<B> shifted = a - Matrix<B>::identity(n) * B::from_real(lambda);
      auto kernel = shifted.nullspace();
      if (kernel.empty()) continue;
      auto p = Projector<B>::onto_span(kernel, n);
      total_rank += p.rank();
      out.push_back({lambda, std::move(p)});
      found = true;
      break;
    }
    if (!found) {
      throw ValidationError("exact spectral decomposition: eigenvalue near " + std::to_string(mu) +
                            " is not representable in Q(sqrt2)");
    }
  }
  if (total_rank != n) {
    throw ValidationError("exact spectral decomposition: recovered eigenspaces do not span the space");
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.eigenvalue < y.eigenvalue; });
  return out;
}

std::vector<Eigenspace<FloatBackend>> float_spectral(const Matrix<FloatBackend>& a) {
  using B = FloatBackend;
  const std::size_t n = a.rows();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(a));
  if (solver.info() != Eigen::Success) throw ValidationError("eigensolver did not converge");
  const Eigen::VectorXd values = solver.eigenvalues();
  const Eigen::MatrixXcd vectors = solver.eigenvectors();

  std::vector<Eigenspace<B>> out;
  const double eps = tolerance();
  Eigen::Index i = 0;
  while (i < values.size()) {
    Eigen::Index j = i + 1;
    while (j < values.size() && values(j) - values(j - 1) <= eps) ++j;
    Matrix<B> p(n, n);
    double sum = 0.0;
    for (Eigen::Index k = i; k < j; ++k) {
      sum += values(k);
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
          p(r, c) += vectors(static_cast<Eigen::Index>(r), k) * std::conj(vectors(static_cast<Eigen::Index>(c), k));
        }
      }
    }
    out.push_back({sum / static_cast<double>(j - i), Projector<B>::from_matrix(std::move(p))});
    i = j;
  }
  return out;
}

}  // namespace

template <Backend B>
HermitianOperator<B> HermitianOperator<B>::from_matrix(Matrix<B> m) {
  if (!m.is_square() || m.rows() == 0) throw ValidationError("operator must be a non-empty square matrix");
  if (!m.is_hermitian()) throw ValidationError("operator is not Hermitian");
  return HermitianOperator(std::move(m));
}

template <Backend B>
HermitianOperator<B> HermitianOperator<B>::diagonal(std::span<const Real> values) {
  if (values.empty()) throw ValidationError("operator must have positive dimension");
  return HermitianOperator(Matrix<B>::diagonal(values));
}

template <Backend B>
Projector<B> Projector<B>::zero(std::size_t dim) {
  return Projector(Matrix<B>::zero(dim), 0);
}

template <Backend B>
Projector<B> Projector<B>::identity(std::size_t dim) {
  return Projector(Matrix<B>::identity(dim), dim);
}

template <Backend B>
Projector<B> Projector<B>::from_vector(std::span<const Scalar> v) {
  const Scalar n = inner<B>(v, v);
  if (B::is_zero(n)) throw ValidationError("cannot build a projector from the zero vector");
  return Projector(Matrix<B>::outer(v, v) * B::inverse(n), 1);
}

template <Backend B>
Projector<B> Projector<B>::onto_span(std::span<const Vector> vectors, std::size_t dim) {
  if (vectors.empty()) return zero(dim);
  const Matrix<B> a = Matrix<B>::from_columns(vectors, dim);
  Matrix<B> reduced = a;
  const auto pivots = reduced.reduce_in_place();
  if (pivots.empty()) return zero(dim);
  std::vector<Vector> independent;
  for (auto p : pivots) independent.push_back(a.column(p));
  const Matrix<B> basis = Matrix<B>::from_columns(independent, dim);
  const Matrix<B> basis_adj = basis.adjoint();
  const auto gram_inv = (basis_adj * basis).inverse();
  if (!gram_inv) throw ValidationError("singular Gram matrix while building a projector");
  return Projector(basis * *gram_inv * basis_adj, pivots.size());
}

template <Backend B>
Projector<B> Projector<B>::from_matrix(Matrix<B> m) {
  if (!m.is_square() || m.rows() == 0) throw ValidationError("projector must be a non-empty square matrix");
  if (!m.is_hermitian()) throw ValidationError("projector is not Hermitian");
  if (!(m * m == m)) throw ValidationError("projector is not idempotent");
  const std::size_t r = rank_from_trace(m);
  return Projector(std::move(m), r);
}

template <Backend B>
bool Projector<B>::orthogonal_to(const Projector& o) const {
  require_same_dim(dim(), o.dim(), "orthogonality test");
  return (matrix_ * o.matrix_).is_zero();
}

template <Backend B>
bool Projector<B>::leq(const Projector& o) const {
  require_same_dim(dim(), o.dim(), "projector order");
  if (rank_ > o.rank_) return false;
  return o.matrix_ * matrix_ == matrix_;
}

template <Backend B>
Projector<B> Projector<B>::complement() const {
  return Projector(Matrix<B>::identity(dim()) - matrix_, dim() - rank_);
}

template <Backend B>
Projector<B> Projector<B>::product(const Projector& o) const {
  require_same_dim(dim(), o.dim(), "projector product");
  if (!commutes_with(o)) throw ValidationError("product of non-commuting projectors is not a projector");
  Matrix<B> m = matrix_ * o.matrix_;
  const std::size_t r = rank_from_trace(m);
  return Projector(std::move(m), r);
}

template <Backend B>
Projector<B> Projector<B>::plus(const Projector& o) const {
  require_same_dim(dim(), o.dim(), "projector sum");
  if (!orthogonal_to(o)) throw ValidationError("sum of non-orthogonal projectors is not a projector");
  return Projector(matrix_ + o.matrix_, rank_ + o.rank_);
}

template <Backend B>
std::vector<typename Projector<B>::Vector> Projector<B>::range_basis() const {
  const std::size_t n = dim();
  Matrix<B> t(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) t(i, j) = matrix_(j, i);
  }
  const auto pivots = t.reduce_in_place();
  std::vector<Vector> basis;
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    Vector v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = t(r, j);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <Backend B>
std::string Projector<B>::key() const {
  std::string out;
  for (const auto& x : matrix_.data()) {
    out += B::key(x);
    out += ',';
  }
  return out;
}

template <Backend B>
int compare_projectors(const Projector<B>& a, const Projector<B>& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim() ? -1 : 1;
  const auto da = a.matrix().data();
  const auto db = b.matrix().data();
  for (std::size_t k = 0; k < da.size(); ++k) {
    if (int c = B::compare(da[k], db[k]); c != 0) return -c;
  }
  return 0;
}

template <Backend B>
bool is_positive_semidefinite(const Matrix<B>& m) {
  if (!m.is_hermitian()) return false;
  if constexpr (B::is_exact) {
    // Elimination without pivoting: a PSD matrix with a zero pivot has a
    // zero row there, and Schur complements of PSD matrices are PSD.
    Matrix<B> w = m;
    const std::size_t n = w.rows();
    for (std::size_t k = 0; k < n; ++k) {
      const auto pivot = B::real(w(k, k));
      if (pivot.sign() < 0) return false;
      if (pivot.is_zero()) {
        for (std::size_t j = k + 1; j < n; ++j) {
          if (!w(k, j).is_zero()) return false;
        }
        continue;
      }
      const auto inv = B::inverse(w(k, k));
      for (std::size_t i = k + 1; i < n; ++i) {
        if (w(i, k).is_zero()) continue;
        const auto factor = w(i, k) * inv;
        for (std::size_t j = k; j < n; ++j) w(i, j) -= factor * w(k, j);
      }
    }
    return true;
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff() >= -tolerance();
  }
}

template <Backend B>
DensityMatrix<B> DensityMatrix<B>::from_matrix(Matrix<B> m) {
  if (!m.is_square() || m.rows() == 0) throw ValidationError("density matrix must be a non-empty square matrix");
  if (!m.is_hermitian()) throw ValidationError("density matrix is not Hermitian");
  if (!B::equal(m.trace(), Scalar(1))) throw ValidationError("density matrix does not have unit trace");
  if (!is_positive_semidefinite(m)) throw ValidationError("density matrix is not positive semidefinite");
  return DensityMatrix(std::move(m));
}

template <Backend B>
DensityMatrix<B> DensityMatrix<B>::pure(std::span<const Scalar> psi) {
  const Scalar n = inner<B>(psi, psi);
  if (psi.empty() || B::is_zero(n)) throw ValidationError("pure state needs a nonzero vector");
  return DensityMatrix(Matrix<B>::outer(psi, psi) * B::inverse(n));
}

template <Backend B>
DensityMatrix<B> DensityMatrix<B>::diagonal(std::span<const Real> weights) {
  Real total{};
  for (const auto& w : weights) {
    if (!B::at_least(w, Real(0))) throw ValidationError("negative weight in diagonal state");
    total += w;
  }
  if (weights.empty() || !B::equal(total, Real(1))) throw ValidationError("diagonal state weights must sum to 1");
  return DensityMatrix(Matrix<B>::diagonal(weights));
}

template <Backend B>
DensityMatrix<B> DensityMatrix<B>::maximally_mixed(std::size_t dim) {
  if (dim == 0) throw ValidationError("state must have positive dimension");
  const Real w = Real(1) / Real(static_cast<long>(dim));
  return DensityMatrix(Matrix<B>::identity(dim) * B::from_real(w));
}

template <Backend B>
DensityMatrix<B> DensityMatrix<B>::basis_state(std::size_t dim, std::size_t k) {
  if (k >= dim) throw ValidationError("basis index " + std::to_string(k) + " out of range for dimension " + std::to_string(dim));
  Matrix<B> m(dim, dim);
  m(k, k) = Scalar(1);
  return DensityMatrix(std::move(m));
}

template <Backend B>
std::vector<Eigenspace<B>> spectral_decompose(const HermitianOperator<B>& a) {
  if constexpr (B::is_exact) {
    return exact_spectral(a.matrix());
  } else {
    return float_spectral(a.matrix());
  }
}

template <Backend B>
void EigenvalueFunction<B>::set(Real x, Real y) {
  for (auto& [k, v] : table_) {
    if (B::equal(k, x)) {
      v = std::move(y);
      return;
    }
  }
  table_.emplace_back(std::move(x), std::move(y));
}

template <Backend B>
std::optional<typename B::Real> EigenvalueFunction<B>::operator()(const Real& x) const {
  for (const auto& [k, v] : table_) {
    if (B::equal(k, x)) return v;
  }
  return std::nullopt;
}

template <Backend B>
HermitianOperator<B> apply_function(const HermitianOperator<B>& a, const EigenvalueFunction<B>& f) {
  Matrix<B> out(a.dim(), a.dim());
  for (const auto& space : spectral_decompose(a)) {
    const auto value = f(space.eigenvalue);
    if (!value) {
      throw ValidationError("function undefined at eigenvalue " + B::to_string(space.eigenvalue));
    }
    out += space.projector.matrix() * B::from_real(*value);
  }
  return HermitianOperator<B>::from_matrix(std::move(out));
}

template <Backend B>
typename B::Real expectation(const DensityMatrix<B>& rho, const Matrix<B>& m) {
  require_same_dim(rho.dim(), m.rows(), "expectation value");
  return B::real((rho.matrix() * m).trace());
}

template <Backend B>
typename B::Real born_probability(const DensityMatrix<B>& rho, const Projector<B>& p) {
  require_same_dim(rho.dim(), p.dim(), "Born probability");
  using Real = typename B::Real;
  Real t = expectation(rho, p.matrix());
  if (t < Real(0) && B::at_least(t, Real(0))) t = Real(0);
  if (t > Real(1) && B::at_least(Real(1), t)) t = Real(1);
  return t;
}

#define QCTX_INSTANTIATE(B)                                                                               \
  template class HermitianOperator<B>;                                                                    \
  template class Projector<B>;                                                                            \
  template class DensityMatrix<B>;                                                                        \
  template class EigenvalueFunction<B>;                                                                   \
  template int compare_projectors<B>(const Projector<B>&, const Projector<B>&);                           \
  template bool is_positive_semidefinite<B>(const Matrix<B>&);                                            \
  template std::vector<Eigenspace<B>> spectral_decompose<B>(const HermitianOperator<B>&);                 \
  template HermitianOperator<B> apply_function<B>(const HermitianOperator<B>&, const EigenvalueFunction<B>&); \
  template B::Real expectation<B>(const DensityMatrix<B>&, const Matrix<B>&);                             \
  template B::Real born_probability<B>(const DensityMatrix<B>&, const Projector<B>&);

QCTX_INSTANTIATE(ExactBackend)
QCTX_INSTANTIATE(FloatBackend)

#undef QCTX_INSTANTIATE

}  // namespace qctx
