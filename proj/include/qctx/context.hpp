#pragma once

// Contexts: commutative subalgebras of the operators on a finite-dimensional
// Hilbert space, each represented by its partition of the identity into
// mutually orthogonal atoms. The algebra is the span of the atoms and its
// projector lattice is the set of sums of atom subsets.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qctx/linalg.hpp"
#include "qctx/types.hpp"

namespace qctx {

template <Backend B>
class Context {
 public:
  using Scalar = typename B::Scalar;

  /// Validates that the atoms are nonzero, pairwise orthogonal and sum to
  /// the identity, then stores them in canonical order.
  static Context from_atoms(std::vector<Projector<B>> atoms);
  /// The algebra of multiples of the identity.
  static Context trivial(std::size_t dim);

  std::size_t dim() const { return atoms_.front().dim(); }
  std::size_t size() const { return atoms_.size(); }
  bool is_trivial() const { return atoms_.size() == 1; }
  const std::vector<Projector<B>>& atoms() const { return atoms_; }
  const Projector<B>& atom(std::size_t i) const { return atoms_.at(i); }
  /// Hash of the canonical atom list; equal contexts have equal ids.
  const std::string& id() const { return id_; }

  /// Sum of the atoms selected by the mask.
  Projector<B> projector(AtomMask mask) const;
  /// The mask of p when p lies in this context's lattice.
  std::optional<AtomMask> mask_of(const Projector<B>& p) const;
  /// Coefficients a_i with m = sum_i a_i A_i, when m belongs to the algebra.
  std::optional<std::vector<Scalar>> coordinates(const Matrix<B>& m) const;
  bool contains(const Matrix<B>& m) const { return coordinates(m).has_value(); }
  /// sum_i i * A_i: an operator with one distinct eigenvalue per atom.
  HermitianOperator<B> canonical_probe() const;

  friend bool operator==(const Context& a, const Context& b) {
    return a.id_ == b.id_ && a.atoms_ == b.atoms_;
  }

 private:
  explicit Context(std::vector<Projector<B>> atoms);
  std::vector<Projector<B>> atoms_;
  std::string id_;
};

/// A point of the spectrum: the multiplicative functional that reads off
/// the coefficient of one atom.
struct SpectralFunctional {
  std::string context_id;
  std::size_t atom = 0;

  friend bool operator==(const SpectralFunctional&, const SpectralFunctional&) = default;
  friend auto operator<=>(const SpectralFunctional&, const SpectralFunctional&) = default;
};

template <Backend B>
std::vector<SpectralFunctional> spectrum(const Context<B>& v);

/// kappa(m) for m in the context; throws ValidationError otherwise.
template <Backend B>
typename B::Scalar evaluate(const SpectralFunctional& k, const Context<B>& v, const Matrix<B>& m);

/// Joint spectral decomposition of a commuting family. Throws
/// ValidationError naming the first non-commuting pair; the empty family
/// generates the trivial context.
template <Backend B>
Context<B> algebra_from_operators(std::size_t dim, std::span<const HermitianOperator<B>> ops);

/// The algebra generated by commuting projectors: atoms are the nonzero
/// products of P_i or 1 - P_i.
template <Backend B>
Context<B> algebra_from_projectors(std::size_t dim, std::span<const Projector<B>> ps);

/// v2 is a subalgebra of v1: every atom of v2 is a sum of atoms of v1.
template <Backend B>
bool is_subalgebra(const Context<B>& v2, const Context<B>& v1);

/// Largest context below both: atoms are the connected components of the
/// graph joining non-orthogonal atoms of v1 and v2.
template <Backend B>
Context<B> meet(const Context<B>& v1, const Context<B>& v2);

/// Every context obtained by merging atoms of v (one per set partition of
/// the atoms), v itself and the trivial context included. Limited to 8 atoms.
template <Backend B>
std::vector<Context<B>> all_coarsenings(const Context<B>& v);

/// Closed-form coarse-graining of a projector of v1 to v2 <= v1: the atoms
/// of v2 not orthogonal to it. Throws OrderError if v2 is not below v1.
template <Backend B>
AtomMask coarse_grain(const Context<B>& v1, AtomMask p, const Context<B>& v2);

/// Restriction of a functional of v1 to v2 <= v1: the functional whose atom
/// dominates the atom of k. Throws OrderError if v2 is not below v1.
template <Backend B>
SpectralFunctional restrict_functional(const SpectralFunctional& k, const Context<B>& v1, const Context<B>& v2);

}  // namespace qctx
