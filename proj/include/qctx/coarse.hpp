#pragma once

// Projector lattices, the coarse-graining presheaf, augmented propositions
// and clopen subsets of the spectrum.

#include <compare>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qctx/poset.hpp"
#include "qctx/report.hpp"

namespace qctx {

inline constexpr std::size_t kDefaultLatticeBound = 20;

/// A projector of the lattice of one context: the sum of the masked atoms.
struct LatticeElement {
  std::size_t context = 0;
  AtomMask mask = 0;

  friend bool operator==(const LatticeElement&, const LatticeElement&) = default;
  friend auto operator<=>(const LatticeElement&, const LatticeElement&) = default;
};

/// Lattice order: P <= Q iff the mask of P is contained in that of Q.
inline bool lattice_leq(AtomMask p, AtomMask q) { return (p & ~q) == 0; }

/// All 2^k elements of the lattice at a stage, in mask order. Throws
/// ValidationError when the stage has more atoms than the bound.
std::vector<LatticeElement> lattice(const PosetShape& shape, std::size_t stage,
                                    std::size_t bound = kDefaultLatticeBound);

/// The least element of the lattice at lo dominating p: the lo atoms that
/// contain some atom of p. Throws OrderError unless lo <= hi.
AtomMask coarse_grain(const PosetShape& shape, std::size_t hi, AtomMask p, std::size_t lo);
LatticeElement coarse_grain(const PosetShape& shape, const LatticeElement& p, std::size_t lo);

/// Two-step coarse-graining against one-step over every chain
/// V3 <= V2 <= V1 and every lattice element of V1.
PropertyResult coarse_functoriality_check(const PosetShape& shape, std::size_t bound = kDefaultLatticeBound);

/// The functionals taking the value 1 on p: the atoms in its mask.
std::vector<SpectralFunctional> clopen_of(const PosetShape& shape, const LatticeElement& p);

template <Backend B>
struct PropositionWitness {
  std::size_t probe = 0;                  // index into the probe list
  std::vector<typename B::Real> values;   // the eigenvalue subset, increasing
};

/// All propositions "A in D" with A among the probes and E[A in D] = p.
template <Backend B>
struct AugmentedProposition {
  LatticeElement element;
  std::vector<HermitianOperator<B>> probes;
  std::vector<PropositionWitness<B>> witnesses;
};

/// The canonical probe of the stage is appended to the probe list when it
/// is not already there. Throws ValidationError if a probe is not in the
/// context.
template <Backend B>
AugmentedProposition<B> augment(const ContextPoset<B>& poset, const LatticeElement& p,
                                std::span<const HermitianOperator<B>> probes);

/// Action of the clopen presheaf on a morphism lo <= hi, applied to a
/// clopen subset of the spectrum at hi (given as a mask).
template <Backend B>
using CloAction = std::function<AtomMask(const ContextPoset<B>&, std::size_t hi, AtomMask clopen, std::size_t lo)>;

/// {chi in spec(lo) | chi(G(P)) = 1} where P is the projector of the clopen
/// set, evaluated on matrices.
template <Backend B>
AtomMask clo_displayed_action(const ContextPoset<B>& poset, std::size_t hi, AtomMask clopen, std::size_t lo);

/// Checks at every stage that P -> clopen_of(P) is a bijection onto the
/// subsets of the spectrum ("bijection"), and on every morphism that the
/// action commutes with coarse-graining ("naturality").
template <Backend B>
std::vector<PropertyResult> clo_iso_check(const ContextPoset<B>& poset, const CloAction<B>& action,
                                          std::size_t bound = kDefaultLatticeBound);

template <Backend B>
std::vector<PropertyResult> clo_iso_check(const ContextPoset<B>& poset, std::size_t bound = kDefaultLatticeBound) {
  return clo_iso_check<B>(poset, CloAction<B>(clo_displayed_action<B>), bound);
}

}  // namespace qctx
