#pragma once

// Interval-valued valuations: subobjects of the spectral presheaf, global
// elements and subobjects of the coarse-graining presheaf, and the
// assignment induced by the annihilator of a vector.

#include <cstddef>
#include <span>
#include <vector>

#include "qctx/valuation.hpp"

namespace qctx {

/// A subset of the spectrum at every stage, as a mask of atoms.
using IntervalAssignment = std::vector<AtomMask>;
/// A set of lattice elements at every stage, as increasing masks.
using ProjectorFamily = std::vector<std::vector<AtomMask>>;

/// Infimum in the lattice of a k-atom context; the empty infimum is the top.
AtomMask lattice_infimum(std::span<const AtomMask> masks, std::size_t atoms);

/// Lattice elements valued at the principal sieve, in mask order.
std::vector<AtomMask> true_set(const ValuationTable& table, std::size_t stage);
ProjectorFamily true_set_family(const ValuationTable& table);

/// Sum of the atoms with positive weight: the least projector of
/// probability one.
template <Backend B>
AtomMask support(const StateOnContext<B>& s);
template <Backend B>
AtomMask support(const DensityMatrix<B>& rho, const Context<B>& v) {
  return support(restrict_state(rho, v));
}

template <Backend B>
IntervalAssignment true_subobject(const DensityMatrix<B>& rho, const ContextPoset<B>& poset);

/// Functionals taking the value 1 on the infimum of the true set; empty
/// when that infimum is the null projector.
IntervalAssignment interval_from_valuation(const ValuationTable& table);

/// Properties "weak" (restriction lands inside the lower set) and "strong"
/// (restriction is onto the lower set), per morphism.
std::vector<PropertyResult> check_subobject_of_sigma(const PosetShape& shape, const IntervalAssignment& intervals);

struct GlobalElementResult {
  /// Infimum of the true set at every stage.
  std::vector<AtomMask> infima;
  /// Witness fields: stage V1, lower V2, p = Q1, actual = Q2,
  /// expected = coarse-graining of Q1.
  PropertyResult matching{"matching"};
  bool ok() const { return matching.holds(); }
};

GlobalElementResult global_element_from_valuation(const ValuationTable& table);

/// {kappa | kappa(gamma(V)) = 1} at every stage. Throws ValidationError
/// if gamma violates the matching law.
IntervalAssignment interval_from_global_element(const PosetShape& shape, const std::vector<AtomMask>& gamma);

/// Lattice elements of probability at least r at every stage.
template <Backend B>
ProjectorFamily subobject_of_G(const PosetShape& shape, const StateFamily<B>& family, const typename B::Real& r);
template <Backend B>
ProjectorFamily subobject_of_G(const DensityMatrix<B>& rho, const typename B::Real& r, const ContextPoset<B>& poset) {
  return subobject_of_G<B>(poset.shape(), state_family(rho, poset), r);
}

/// Properties "containment" (coarse-graining maps T(V1) into T(V2)) and
/// "equality" (onto T(V2)).
std::vector<PropertyResult> check_subobject_of_G(const PosetShape& shape, const ProjectorFamily& family);

/// Properties "functional_composition", "null", "monotonicity" and
/// "exclusivity".
std::vector<PropertyResult> check_semantic_subobject(const PosetShape& shape, const ProjectorFamily& family,
                                                     bool require_exclusivity = true);

/// At every stage, the functionals dominated by 1 - Q where Q is the sum of
/// the atoms annihilating psi. Throws ValidationError for the zero vector.
template <Backend B>
IntervalAssignment ideal_valuation(std::span<const typename B::Scalar> psi, const ContextPoset<B>& poset);

/// {kappa(A) | kappa in I}, increasing, for A in the context.
template <Backend B>
std::vector<typename B::Real> spectral_values(const Context<B>& v, AtomMask interval, const Matrix<B>& a);

}  // namespace qctx
