#include "qctx/random.hpp"

#include <algorithm>
#include <numeric>

namespace qctx {

template <Backend B>
std::vector<typename B::Scalar> random_vector(std::size_t dim, Rng& rng) {
  std::vector<typename B::Scalar> v(dim);
  if constexpr (B::is_exact) {
    std::uniform_int_distribution<long> entry(-3, 3);
    while (std::all_of(v.begin(), v.end(), [](const auto& x) { return B::is_zero(x); })) {
      for (auto& x : v) x = typename B::Scalar(entry(rng));
    }
  } else {
    std::normal_distribution<double> g;
    for (auto& x : v) x = {g(rng), g(rng)};
  }
  return v;
}

template <Backend B>
Matrix<B> random_unitary(std::size_t dim, Rng& rng) {
  Matrix<B> u = Matrix<B>::identity(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const auto v = random_vector<B>(dim, rng);
    const auto scale = B::inverse(inner<B>(v, v)) * typename B::Scalar(2);
    u = (Matrix<B>::identity(dim) - Matrix<B>::outer(v, v) * scale) * u;
  }
  return u;
}

template <Backend B>
std::vector<typename B::Real> random_weights(std::size_t n, Rng& rng) {
  using Real = typename B::Real;
  std::vector<Real> w(n);
  if constexpr (B::is_exact) {
    std::uniform_int_distribution<long> entry(0, 6);
    long total = 0;
    std::vector<long> raw(n);
    while (total == 0) {
      for (auto& x : raw) x = entry(rng);
      total = std::accumulate(raw.begin(), raw.end(), 0L);
    }
    for (std::size_t i = 0; i < n; ++i) w[i] = Real(Rational(raw[i], total));
  } else {
    std::exponential_distribution<double> e(1.0);
    double total = 0;
    for (auto& x : w) total += (x = e(rng));
    for (auto& x : w) x /= total;
  }
  return w;
}

template <Backend B>
DensityMatrix<B> random_density(std::size_t dim, Rng& rng) {
  const auto w = random_weights<B>(dim, rng);
  const Matrix<B> u = random_unitary<B>(dim, rng);
  Matrix<B> m = u * Matrix<B>::diagonal(w) * u.adjoint();
  if constexpr (!B::is_exact) m = (m + m.adjoint()) * typename B::Scalar(0.5);
  return DensityMatrix<B>::from_matrix(std::move(m));
}

template <Backend B>
Context<B> random_coarsening(const Context<B>& v, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, v.size() - 1);
  std::vector<Projector<B>> blocks(v.size(), Projector<B>::zero(v.dim()));
  for (const auto& a : v.atoms()) {
    auto& b = blocks[pick(rng)];
    b = b.plus(a);
  }
  std::erase_if(blocks, [](const Projector<B>& p) { return p.is_zero(); });
  return Context<B>::from_atoms(std::move(blocks));
}

namespace {

template <Backend B>
Context<B> basis_context(const Matrix<B>& u) {
  std::vector<Projector<B>> atoms;
  for (std::size_t j = 0; j < u.cols(); ++j) {
    const auto col = u.column(j);
    atoms.push_back(Projector<B>::from_vector(col));
  }
  return Context<B>::from_atoms(std::move(atoms));
}

/// u with the columns in the subset mixed among themselves by a random
/// unitary on that subset.
template <Backend B>
Matrix<B> rotate_subset(const Matrix<B>& u, Rng& rng) {
  const std::size_t d = u.cols();
  std::vector<std::size_t> cols(d);
  std::iota(cols.begin(), cols.end(), std::size_t{0});
  std::shuffle(cols.begin(), cols.end(), rng);
  std::uniform_int_distribution<std::size_t> size(2, d);
  cols.resize(size(rng));
  std::sort(cols.begin(), cols.end());
  const Matrix<B> small = random_unitary<B>(cols.size(), rng);
  Matrix<B> out = u;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t a = 0; a < cols.size(); ++a) {
      typename B::Scalar s{};
      for (std::size_t b = 0; b < cols.size(); ++b) s += u(i, cols[b]) * small(b, a);
      out(i, cols[a]) = s;
    }
  }
  return out;
}

}  // namespace

template <Backend B>
ContextPoset<B> random_poset(std::size_t dim, Rng& rng, std::size_t max_generators, std::size_t max_size) {
  if (dim == 0) throw ValidationError("poset dimension must be positive");
  const Matrix<B> u = random_unitary<B>(dim, rng);
  std::vector<Context<B>> gens{basis_context(u)};
  std::uniform_int_distribution<int> kind(0, 2);
  while (gens.size() < std::max<std::size_t>(max_generators, 1)) {
    const int k = dim < 2 ? 2 : kind(rng);
    if (k == 0) {
      gens.push_back(basis_context(rotate_subset(u, rng)));
    } else if (k == 1) {
      gens.push_back(basis_context(rotate_subset(u, rng)));
      gens.back() = random_coarsening(gens.back(), rng);
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
      gens.push_back(random_coarsening(gens[pick(rng)], rng));
    }
  }
  while (true) {
    auto poset = build_poset<B>(dim, gens, true);
    if (poset.size() <= max_size || gens.size() == 1) return poset;
    gens.pop_back();
  }
}

#define QCTX_INSTANTIATE(B)                                                                                  \
  template std::vector<B::Scalar> random_vector<B>(std::size_t, Rng&);                                       \
  template Matrix<B> random_unitary<B>(std::size_t, Rng&);                                                   \
  template DensityMatrix<B> random_density<B>(std::size_t, Rng&);                                            \
  template std::vector<B::Real> random_weights<B>(std::size_t, Rng&);                                        \
  template Context<B> random_coarsening<B>(const Context<B>&, Rng&);                                         \
  template ContextPoset<B> random_poset<B>(std::size_t, Rng&, std::size_t, std::size_t);

QCTX_INSTANTIATE(ExactBackend)
QCTX_INSTANTIATE(FloatBackend)

#undef QCTX_INSTANTIATE

}  // namespace qctx
