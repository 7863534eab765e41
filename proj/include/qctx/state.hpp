#pragma once

// States restricted to contexts: the state presheaf.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qctx/poset.hpp"
#include "qctx/report.hpp"

namespace qctx {

/// A state on a context, given by its weight on each atom.
template <Backend B>
struct StateOnContext {
  using Real = typename B::Real;
  using Scalar = typename B::Scalar;

  std::string context_id;
  std::vector<Real> weights;

  /// Throws ValidationError unless the weights are non-negative and sum to one.
  static StateOnContext from_weights(std::string context_id, std::vector<Real> weights);

  /// rho(A) for A = sum_i a_i A_i.
  Scalar evaluate(std::span<const Scalar> coordinates) const;
  /// Weight of the sum of the atoms in the mask.
  Real probability(AtomMask mask) const;

  friend bool operator==(const StateOnContext& a, const StateOnContext& b) {
    if (a.context_id != b.context_id || a.weights.size() != b.weights.size()) return false;
    for (std::size_t i = 0; i < a.weights.size(); ++i) {
      if (!B::equal(a.weights[i], b.weights[i])) return false;
    }
    return true;
  }
};

/// Weights tr(rho A_i) over the atoms of v.
template <Backend B>
StateOnContext<B> restrict_state(const DensityMatrix<B>& rho, const Context<B>& v);

/// The weights of s pushed down along lo <= hi: each lo atom collects the
/// weights of the hi atoms it contains.
template <Backend B>
StateOnContext<B> restrict_state(const PosetShape& shape, const StateOnContext<B>& s, std::size_t hi, std::size_t lo);

/// One state per context of the poset, in poset order.
template <Backend B>
using StateFamily = std::vector<StateOnContext<B>>;

template <Backend B>
StateFamily<B> state_family(const DensityMatrix<B>& rho, const ContextPoset<B>& poset);

/// Matching of a family along every inclusion of the poset.
template <Backend B>
PropertyResult check_state_family(const PosetShape& shape, const StateFamily<B>& family);

/// Whether the family induced by rho is a global element of the state presheaf.
template <Backend B>
bool check_state_global_element(const DensityMatrix<B>& rho, const ContextPoset<B>& poset);

}  // namespace qctx
