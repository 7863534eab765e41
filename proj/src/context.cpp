#include "qctx/context.hpp"

#include <algorithm>
#include <numeric>

namespace qctx {

template <Backend B>
Context<B>::Context(std::vector<Projector<B>> atoms) : atoms_(std::move(atoms)) {
  std::string key;
  for (const auto& a : atoms_) {
    key += a.key();
    key += ';';
  }
  id_ = stable_hash_hex(key);
}

template <Backend B>
Context<B> Context<B>::from_atoms(std::vector<Projector<B>> atoms) {
  if (atoms.empty()) throw ValidationError("a context needs at least one atom");
  if (atoms.size() > kMaxAtoms) throw ValidationError("a context may have at most 64 atoms");
  const std::size_t d = atoms.front().dim();
  Matrix<B> sum(d, d);
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    require_same_dim(atoms[i].dim(), d, "context atoms");
    if (atoms[i].is_zero()) throw ValidationError("context atom " + std::to_string(i) + " is zero");
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      if (!atoms[i].orthogonal_to(atoms[j])) {
        throw ValidationError("context atoms " + std::to_string(i) + " and " + std::to_string(j) +
                              " are not orthogonal");
      }
    }
    sum += atoms[i].matrix();
  }
  if (!(sum == Matrix<B>::identity(d))) throw ValidationError("context atoms do not sum to the identity");
  std::sort(atoms.begin(), atoms.end(),
            [](const auto& a, const auto& b) { return compare_projectors(a, b) < 0; });
  return Context(std::move(atoms));
}

template <Backend B>
Context<B> Context<B>::trivial(std::size_t dim) {
  if (dim == 0) throw ValidationError("context dimension must be positive");
  return Context({Projector<B>::identity(dim)});
}

template <Backend B>
Projector<B> Context<B>::projector(AtomMask mask) const {
  if ((mask & ~full_mask(size())) != 0) throw ValidationError("mask selects atoms outside the context");
  Projector<B> p = Projector<B>::zero(dim());
  for (std::size_t i : mask_indices(mask)) p = p.plus(atoms_[i]);
  return p;
}

template <Backend B>
std::optional<AtomMask> Context<B>::mask_of(const Projector<B>& p) const {
  require_same_dim(p.dim(), dim(), "lattice membership");
  AtomMask mask = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    if (!atoms_[i].orthogonal_to(p)) mask |= AtomMask{1} << i;
  }
  if (!(projector(mask) == p)) return std::nullopt;
  return mask;
}

template <Backend B>
std::optional<std::vector<typename B::Scalar>> Context<B>::coordinates(const Matrix<B>& m) const {
  require_same_dim(m.rows(), dim(), "algebra membership");
  std::vector<Scalar> coeffs;
  Matrix<B> rebuilt(dim(), dim());
  for (const auto& a : atoms_) {
    const Scalar c = (m * a.matrix()).trace() * B::inverse(Scalar(static_cast<long>(a.rank())));
    rebuilt += a.matrix() * c;
    coeffs.push_back(c);
  }
  if (!(rebuilt == m)) return std::nullopt;
  return coeffs;
}

template <Backend B>
HermitianOperator<B> Context<B>::canonical_probe() const {
  Matrix<B> m(dim(), dim());
  for (std::size_t i = 0; i < size(); ++i) m += atoms_[i].matrix() * Scalar(static_cast<long>(i));
  return HermitianOperator<B>::from_matrix(std::move(m));
}

template <Backend B>
std::vector<SpectralFunctional> spectrum(const Context<B>& v) {
  std::vector<SpectralFunctional> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back({v.id(), i});
  return out;
}

template <Backend B>
typename B::Scalar evaluate(const SpectralFunctional& k, const Context<B>& v, const Matrix<B>& m) {
  if (k.context_id != v.id() || k.atom >= v.size()) {
    throw ValidationError("functional does not belong to context " + v.id());
  }
  auto coords = v.coordinates(m);
  if (!coords) throw ValidationError("operator is not an element of context " + v.id());
  return (*coords)[k.atom];
}

namespace {

template <Backend B>
std::vector<Projector<B>> refine(const std::vector<Projector<B>>& atoms, const std::vector<Projector<B>>& split) {
  std::vector<Projector<B>> out;
  for (const auto& a : atoms) {
    for (const auto& s : split) {
      auto p = a.product(s);
      if (!p.is_zero()) out.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace

template <Backend B>
Context<B> algebra_from_operators(std::size_t dim, std::span<const HermitianOperator<B>> ops) {
  for (std::size_t i = 0; i < ops.size(); ++i) {
    require_same_dim(ops[i].dim(), dim, "algebra_from_operators");
    for (std::size_t j = i + 1; j < ops.size(); ++j) {
      if (!commute(ops[i].matrix(), ops[j].matrix())) {
        throw ValidationError("operators " + std::to_string(i) + " and " + std::to_string(j) + " do not commute");
      }
    }
  }
  std::vector<Projector<B>> atoms{Projector<B>::identity(dim)};
  for (const auto& op : ops) {
    std::vector<Projector<B>> spaces;
    for (auto& s : spectral_decompose(op)) spaces.push_back(std::move(s.projector));
    atoms = refine(atoms, spaces);
  }
  return Context<B>::from_atoms(std::move(atoms));
}

template <Backend B>
Context<B> algebra_from_projectors(std::size_t dim, std::span<const Projector<B>> ps) {
  for (std::size_t i = 0; i < ps.size(); ++i) {
    require_same_dim(ps[i].dim(), dim, "algebra_from_projectors");
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      if (!ps[i].commutes_with(ps[j])) {
        throw ValidationError("projectors " + std::to_string(i) + " and " + std::to_string(j) + " do not commute");
      }
    }
  }
  std::vector<Projector<B>> atoms{Projector<B>::identity(dim)};
  for (const auto& p : ps) atoms = refine(atoms, {p, p.complement()});
  return Context<B>::from_atoms(std::move(atoms));
}

template <Backend B>
bool is_subalgebra(const Context<B>& v2, const Context<B>& v1) {
  require_same_dim(v2.dim(), v1.dim(), "is_subalgebra");
  if (v2.size() > v1.size()) return false;
  for (const auto& b : v2.atoms()) {
    Matrix<B> sum(v1.dim(), v1.dim());
    for (const auto& a : v1.atoms()) {
      if (!a.orthogonal_to(b)) sum += a.matrix();
    }
    if (!(sum == b.matrix())) return false;
  }
  return true;
}

template <Backend B>
Context<B> meet(const Context<B>& v1, const Context<B>& v2) {
  require_same_dim(v1.dim(), v2.dim(), "meet");
  const std::size_t n1 = v1.size();
  const std::size_t n = n1 + v2.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < v2.size(); ++j) {
      if (!v1.atom(i).orthogonal_to(v2.atom(j))) parent[find(i)] = find(n1 + j);
    }
  }
  std::vector<std::size_t> roots;
  std::vector<Projector<B>> atoms;
  for (std::size_t i = 0; i < n1; ++i) {
    const std::size_t r = find(i);
    auto it = std::find(roots.begin(), roots.end(), r);
    if (it == roots.end()) {
      roots.push_back(r);
      atoms.push_back(v1.atom(i));
    } else {
      auto& acc = atoms[static_cast<std::size_t>(it - roots.begin())];
      acc = acc.plus(v1.atom(i));
    }
  }
  return Context<B>::from_atoms(std::move(atoms));
}

template <Backend B>
std::vector<Context<B>> all_coarsenings(const Context<B>& v) {
  const std::size_t k = v.size();
  if (k > 8) throw ValidationError("all_coarsenings is limited to contexts with at most 8 atoms");
  std::vector<Context<B>> out;
  // Restricted growth strings enumerate set partitions.
  std::vector<std::size_t> block(k, 0);
  while (true) {
    const std::size_t blocks = k == 0 ? 0 : *std::max_element(block.begin(), block.end()) + 1;
    std::vector<Projector<B>> atoms(blocks, Projector<B>::zero(v.dim()));
    for (std::size_t i = 0; i < k; ++i) atoms[block[i]] = atoms[block[i]].plus(v.atom(i));
    out.push_back(Context<B>::from_atoms(std::move(atoms)));

    bool advanced = false;
    for (std::size_t i = k; i-- > 1;) {
      const std::size_t prefix_max = *std::max_element(block.begin(), block.begin() + static_cast<long>(i));
      if (block[i] <= prefix_max) {
        ++block[i];
        std::fill(block.begin() + static_cast<long>(i) + 1, block.end(), 0);
        advanced = true;
        break;
      }
    }
    if (!advanced) return out;
  }
}

template <Backend B>
AtomMask coarse_grain(const Context<B>& v1, AtomMask p, const Context<B>& v2) {
  if (!is_subalgebra(v2, v1)) throw OrderError("coarse_grain: target context is not a subalgebra of the source");
  const Projector<B> proj = v1.projector(p);
  AtomMask out = 0;
  for (std::size_t j = 0; j < v2.size(); ++j) {
    if (!v2.atom(j).orthogonal_to(proj)) out |= AtomMask{1} << j;
  }
  return out;
}

template <Backend B>
SpectralFunctional restrict_functional(const SpectralFunctional& k, const Context<B>& v1, const Context<B>& v2) {
  if (k.context_id != v1.id() || k.atom >= v1.size()) {
    throw ValidationError("functional does not belong to context " + v1.id());
  }
  if (!is_subalgebra(v2, v1)) throw OrderError("restrict_functional: target context is not a subalgebra");
  for (std::size_t j = 0; j < v2.size(); ++j) {
    if (v1.atom(k.atom).leq(v2.atom(j))) return {v2.id(), j};
  }
  throw OrderError("restrict_functional: no dominating atom");  // unreachable for subalgebras
}

#define QCTX_INSTANTIATE(B)                                                                                  \
  template class Context<B>;                                                                                 \
  template std::vector<SpectralFunctional> spectrum<B>(const Context<B>&);                                   \
  template B::Scalar evaluate<B>(const SpectralFunctional&, const Context<B>&, const Matrix<B>&);            \
  template Context<B> algebra_from_operators<B>(std::size_t, std::span<const HermitianOperator<B>>);         \
  template Context<B> algebra_from_projectors<B>(std::size_t, std::span<const Projector<B>>);                \
  template bool is_subalgebra<B>(const Context<B>&, const Context<B>&);                                      \
  template Context<B> meet<B>(const Context<B>&, const Context<B>&);                                         \
  template std::vector<Context<B>> all_coarsenings<B>(const Context<B>&);                                    \
  template AtomMask coarse_grain<B>(const Context<B>&, AtomMask, const Context<B>&);                         \
  template SpectralFunctional restrict_functional<B>(const SpectralFunctional&, const Context<B>&, const Context<B>&);

QCTX_INSTANTIATE(ExactBackend)
QCTX_INSTANTIATE(FloatBackend)

#undef QCTX_INSTANTIATE

}  // namespace qctx
