#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qctx/context.hpp"

namespace qctx {

/// The combinatorial skeleton of a context poset: the inclusion order and,
/// for every inclusion lo <= hi, the map sending each atom of hi to the atom
/// of lo that contains it. Everything downstream of the linear algebra
/// (coarse-graining, sieves, sections) runs on this alone.
class PosetShape {
 public:
  PosetShape() = default;
  /// refinement[hi][lo] must be filled exactly when order[lo][hi] holds.
  PosetShape(std::vector<std::string> ids, std::vector<std::size_t> atom_counts,
             std::vector<std::vector<char>> order, std::vector<std::vector<std::vector<std::size_t>>> refinement,
             std::size_t trivial);

  std::size_t size() const { return ids_.size(); }
  const std::string& id(std::size_t v) const { return ids_.at(v); }
  const std::vector<std::string>& ids() const { return ids_; }
  std::size_t atoms(std::size_t v) const { return atom_counts_.at(v); }
  std::size_t trivial() const { return trivial_; }
  std::optional<std::size_t> index_of(std::string_view id) const;

  /// lo is a subalgebra of hi.
  bool leq(std::size_t lo, std::size_t hi) const { return order_.at(lo).at(hi) != 0; }
  /// Atom of lo containing each atom of hi. Throws OrderError unless lo <= hi.
  const std::vector<std::size_t>& refinement(std::size_t lo, std::size_t hi) const;

  /// All contexts below v, v included, in index order.
  std::vector<std::size_t> down_set(std::size_t v) const;
  std::vector<std::size_t> up_set(std::size_t v) const;
  /// Contexts not strictly below any other.
  std::vector<std::size_t> maximal() const;
  /// Number of pairs lo <= hi, identities included.
  std::size_t morphism_count() const;

 private:
  std::vector<std::string> ids_;
  std::vector<std::size_t> atom_counts_;
  std::vector<std::vector<char>> order_;
  std::vector<std::vector<std::vector<std::size_t>>> refinement_;
  std::size_t trivial_ = 0;
};

/// A finite family of contexts of one Hilbert space, ordered by inclusion,
/// always containing the trivial context. Contexts are indexed in order of
/// their ids. Immutable once built.
template <Backend B>
class ContextPoset {
 public:
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return contexts_.size(); }
  const std::vector<Context<B>>& contexts() const { return contexts_; }
  const Context<B>& context(std::size_t i) const { return contexts_.at(i); }
  const PosetShape& shape() const { return shape_; }
  std::size_t trivial() const { return shape_.trivial(); }

  std::optional<std::size_t> index_of(const Context<B>& v) const;
  /// Throws ValidationError if v is not in the poset.
  std::size_t require(const Context<B>& v) const;

  /// Deduplicates, adds the trivial context and computes the order. No
  /// closure is performed.
  static ContextPoset from_contexts(std::size_t dim, std::vector<Context<B>> contexts);

 private:
  ContextPoset() = default;
  std::size_t dim_ = 0;
  std::vector<Context<B>> contexts_;
  PosetShape shape_;
};

/// Deduplicates the generators, adds the trivial context, optionally closes
/// the family under pairwise meets, and computes the inclusion order.
template <Backend B>
ContextPoset<B> build_poset(std::size_t dim, std::vector<Context<B>> generators, bool close_under_meet);

/// Restriction of spectral functionals along lo <= hi inside a poset.
SpectralFunctional restrict_functional(const PosetShape& shape, std::size_t hi, std::size_t atom, std::size_t lo);

}  // namespace qctx
