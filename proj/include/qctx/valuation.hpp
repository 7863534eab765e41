#pragma once

// Sieves, sieve-valued valuations and the valuations induced by a state.

#include <cstddef>
#include <vector>

#include "qctx/coarse.hpp"
#include "qctx/state.hpp"

namespace qctx {

/// A lower set of contexts below a stage. Members are poset indices in
/// increasing order.
struct Sieve {
  std::size_t stage = 0;
  std::vector<std::size_t> members;

  bool contains(std::size_t v) const;
  friend bool operator==(const Sieve&, const Sieve&) = default;
};

/// Throws ValidationError unless every member lies below the stage and the
/// members form a lower set.
Sieve make_sieve(const PosetShape& shape, std::size_t stage, std::vector<std::size_t> members);
/// All contexts below the stage: the top truth value.
Sieve principal_sieve(const PosetShape& shape, std::size_t stage);
Sieve empty_sieve(const PosetShape& shape, std::size_t stage);
bool is_principal(const PosetShape& shape, const Sieve& s);
/// Members of s lying below lo. Throws OrderError unless lo <= s.stage.
Sieve pullback(const PosetShape& shape, const Sieve& s, std::size_t lo);

/// One sieve per lattice element (indexed by mask) at every stage.
struct ValuationTable {
  PosetShape shape;
  std::vector<std::vector<Sieve>> values;

  const Sieve& at(std::size_t stage, AtomMask p) const { return values.at(stage).at(static_cast<std::size_t>(p)); }
};

/// Throws ValidationError unless r lies in (0, 1].
template <Backend B>
void require_threshold(const typename B::Real& r);

/// Contexts V2 <= V1 where the coarse-graining of p has probability at
/// least r. With r = 1 this is the valuation of the state itself.
/// Probabilities are computed on matrices.
template <Backend B>
Sieve nu_rho_r(const DensityMatrix<B>& rho, const typename B::Real& r, const LatticeElement& p,
               const ContextPoset<B>& poset);

template <Backend B>
Sieve nu_rho(const DensityMatrix<B>& rho, const LatticeElement& p, const ContextPoset<B>& poset) {
  return nu_rho_r(rho, typename B::Real(1), p, poset);
}

/// The whole table from the per-stage atom weights of a state family.
template <Backend B>
ValuationTable valuation_table(const PosetShape& shape, const StateFamily<B>& family, const typename B::Real& r,
                               std::size_t bound = kDefaultLatticeBound);

template <Backend B>
ValuationTable valuation_table(const DensityMatrix<B>& rho, const ContextPoset<B>& poset, const typename B::Real& r,
                               std::size_t bound = kDefaultLatticeBound) {
  return valuation_table<B>(poset.shape(), state_family(rho, poset), r, bound);
}

struct ValuationOptions {
  bool require_exclusivity = true;
  bool require_unit = true;
};

/// Properties "functional_composition", "null", "monotonicity",
/// "exclusivity" and "unit", in that order.
std::vector<PropertyResult> check_valuation(const ValuationTable& table, const ValuationOptions& options = {});

/// Naturality of the table as a map from the coarse-graining presheaf to
/// the sieve presheaf, checked square by square without the library's
/// coarse-graining and pullback routines.
PropertyResult natural_transformation_check(const ValuationTable& table);

}  // namespace qctx
