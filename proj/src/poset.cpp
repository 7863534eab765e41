#include "qctx/poset.hpp"

#include <algorithm>

namespace qctx {

PosetShape::PosetShape(std::vector<std::string> ids, std::vector<std::size_t> atom_counts,
                       std::vector<std::vector<char>> order,
                       std::vector<std::vector<std::vector<std::size_t>>> refinement, std::size_t trivial)
    : ids_(std::move(ids)),
      atom_counts_(std::move(atom_counts)),
      order_(std::move(order)),
      refinement_(std::move(refinement)),
      trivial_(trivial) {
  const std::size_t n = ids_.size();
  if (atom_counts_.size() != n || order_.size() != n || refinement_.size() != n || trivial_ >= n) {
    throw ValidationError("inconsistent poset shape");
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (order_[a].size() != n || refinement_[a].size() != n) throw ValidationError("inconsistent poset shape");
    if (!order_[a][a]) throw ValidationError("poset order is not reflexive");
    if (!order_[trivial_][a]) throw ValidationError("trivial context is not below context " + ids_[a]);
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && order_[a][b] && order_[b][a]) throw ValidationError("poset order is not antisymmetric");
      if (order_[b][a] && refinement_[a][b].size() != atom_counts_[a]) {
        throw ValidationError("missing refinement map in poset shape");
      }
      for (std::size_t c = 0; c < n; ++c) {
        if (order_[a][b] && order_[b][c] && !order_[a][c]) throw ValidationError("poset order is not transitive");
      }
    }
  }
}

std::optional<std::size_t> PosetShape::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (ids_[i] == id) return i;
  }
  return std::nullopt;
}

const std::vector<std::size_t>& PosetShape::refinement(std::size_t lo, std::size_t hi) const {
  if (!leq(lo, hi)) throw OrderError("context " + ids_.at(lo) + " is not below context " + ids_.at(hi));
  return refinement_[hi][lo];
}

std::vector<std::size_t> PosetShape::down_set(std::size_t v) const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < size(); ++w) {
    if (leq(w, v)) out.push_back(w);
  }
  return out;
}

std::vector<std::size_t> PosetShape::up_set(std::size_t v) const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < size(); ++w) {
    if (leq(v, w)) out.push_back(w);
  }
  return out;
}

std::vector<std::size_t> PosetShape::maximal() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < size(); ++v) {
    bool top = true;
    for (std::size_t w = 0; w < size() && top; ++w) {
      if (w != v && leq(v, w)) top = false;
    }
    if (top) out.push_back(v);
  }
  return out;
}

std::size_t PosetShape::morphism_count() const {
  std::size_t n = 0;
  for (std::size_t a = 0; a < size(); ++a) {
    for (std::size_t b = 0; b < size(); ++b) n += leq(a, b) ? 1 : 0;
  }
  return n;
}

SpectralFunctional restrict_functional(const PosetShape& shape, std::size_t hi, std::size_t atom, std::size_t lo) {
  const auto& map = shape.refinement(lo, hi);
  if (atom >= map.size()) throw ValidationError("functional index out of range");
  return {shape.id(lo), map[atom]};
}

namespace {

template <Backend B>
bool contains_context(const std::vector<Context<B>>& list, const Context<B>& v) {
  return std::any_of(list.begin(), list.end(), [&](const Context<B>& w) {
    if constexpr (B::is_exact) {
      return w.id() == v.id() && w == v;
    } else {
      return w.size() == v.size() && w.atoms() == v.atoms();
    }
  });
}

}  // namespace

template <Backend B>
std::optional<std::size_t> ContextPoset<B>::index_of(const Context<B>& v) const {
  for (std::size_t i = 0; i < contexts_.size(); ++i) {
    if (contexts_[i].size() == v.size() && contexts_[i].atoms() == v.atoms()) return i;
  }
  return std::nullopt;
}

template <Backend B>
std::size_t ContextPoset<B>::require(const Context<B>& v) const {
  if (auto i = index_of(v)) return *i;
  throw ValidationError("context " + v.id() + " is not in the poset");
}

template <Backend B>
ContextPoset<B> ContextPoset<B>::from_contexts(std::size_t dim, std::vector<Context<B>> contexts) {
  std::vector<Context<B>> unique;
  for (auto& v : contexts) {
    require_same_dim(v.dim(), dim, "build_poset");
    if (!contains_context(unique, v)) unique.push_back(std::move(v));
  }
  auto trivial = Context<B>::trivial(dim);
  if (!contains_context(unique, trivial)) unique.push_back(std::move(trivial));
  std::stable_sort(unique.begin(), unique.end(), [](const Context<B>& a, const Context<B>& b) {
    if (a.id() != b.id()) return a.id() < b.id();
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
      if (int c = compare_projectors(a.atom(i), b.atom(i)); c != 0) return c < 0;
    }
    return a.size() < b.size();
  });

  const std::size_t n = unique.size();
  std::vector<std::string> ids;
  std::vector<std::size_t> counts;
  std::size_t trivial_index = n;
  for (std::size_t i = 0; i < n; ++i) {
    ids.push_back(unique[i].id());
    counts.push_back(unique[i].size());
    if (unique[i].is_trivial()) trivial_index = i;
  }
  std::vector<std::vector<char>> order(n, std::vector<char>(n, 0));
  std::vector<std::vector<std::vector<std::size_t>>> refinement(n, std::vector<std::vector<std::size_t>>(n));
  for (std::size_t hi = 0; hi < n; ++hi) {
    for (std::size_t lo = 0; lo < n; ++lo) {
      if (lo != hi && !is_subalgebra(unique[lo], unique[hi])) continue;
      order[lo][hi] = 1;
      auto& map = refinement[hi][lo];
      for (const auto& a : unique[hi].atoms()) {
        std::size_t target = 0;
        while (unique[lo].atom(target).orthogonal_to(a)) ++target;
        map.push_back(target);
      }
    }
  }

  ContextPoset poset;
  poset.dim_ = dim;
  poset.contexts_ = std::move(unique);
  poset.shape_ = PosetShape(std::move(ids), std::move(counts), std::move(order), std::move(refinement), trivial_index);
  return poset;
}

template <Backend B>
ContextPoset<B> build_poset(std::size_t dim, std::vector<Context<B>> generators, bool close_under_meet) {
  if (dim == 0) throw ValidationError("poset dimension must be positive");
  std::vector<Context<B>> family;
  for (auto& v : generators) {
    require_same_dim(v.dim(), dim, "build_poset");
    if (!contains_context(family, v)) family.push_back(std::move(v));
  }
  if (close_under_meet) {
    for (std::size_t k = 1; k < family.size(); ++k) {
      for (std::size_t i = 0; i < k; ++i) {
        auto m = meet(family[i], family[k]);
        if (!contains_context(family, m)) family.push_back(std::move(m));
      }
    }
  }
  return ContextPoset<B>::from_contexts(dim, std::move(family));
}

template class ContextPoset<ExactBackend>;
template class ContextPoset<FloatBackend>;
template ContextPoset<ExactBackend> build_poset<ExactBackend>(std::size_t, std::vector<Context<ExactBackend>>, bool);
template ContextPoset<FloatBackend> build_poset<FloatBackend>(std::size_t, std::vector<Context<FloatBackend>>, bool);

}  // namespace qctx
