#include "qctx/state.hpp"

namespace qctx {

template <Backend B>
StateOnContext<B> StateOnContext<B>::from_weights(std::string context_id, std::vector<Real> weights) {
  if (weights.empty()) throw ValidationError("a state needs at least one weight");
  Real total{};
  for (const auto& w : weights) {
    if (B::less(w, Real{})) throw ValidationError("state weights must be non-negative");
    total += w;
  }
  if (!B::equal(total, Real(1))) throw ValidationError("state weights must sum to one");
  return {std::move(context_id), std::move(weights)};
}

template <Backend B>
typename B::Scalar StateOnContext<B>::evaluate(std::span<const Scalar> coordinates) const {
  require_same_dim(coordinates.size(), weights.size(), "state evaluation");
  Scalar s{};
  for (std::size_t i = 0; i < weights.size(); ++i) s += B::from_real(weights[i]) * coordinates[i];
  return s;
}

template <Backend B>
typename B::Real StateOnContext<B>::probability(AtomMask mask) const {
  Real p{};
  for (std::size_t i : mask_indices(mask)) p += weights.at(i);
  return p;
}

template <Backend B>
StateOnContext<B> restrict_state(const DensityMatrix<B>& rho, const Context<B>& v) {
  require_same_dim(rho.dim(), v.dim(), "restrict_state");
  std::vector<typename B::Real> weights;
  for (const auto& a : v.atoms()) weights.push_back(born_probability(rho, a));
  return {v.id(), std::move(weights)};
}

template <Backend B>
StateOnContext<B> restrict_state(const PosetShape& shape, const StateOnContext<B>& s, std::size_t hi, std::size_t lo) {
  if (s.context_id != shape.id(hi)) throw ValidationError("state does not belong to context " + shape.id(hi));
  const auto& map = shape.refinement(lo, hi);
  require_same_dim(s.weights.size(), map.size(), "restrict_state");
  std::vector<typename B::Real> weights(shape.atoms(lo));
  for (std::size_t a = 0; a < map.size(); ++a) weights[map[a]] += s.weights[a];
  return {shape.id(lo), std::move(weights)};
}

template <Backend B>
StateFamily<B> state_family(const DensityMatrix<B>& rho, const ContextPoset<B>& poset) {
  StateFamily<B> out;
  for (const auto& v : poset.contexts()) out.push_back(restrict_state(rho, v));
  return out;
}

template <Backend B>
PropertyResult check_state_family(const PosetShape& shape, const StateFamily<B>& family) {
  require_same_dim(family.size(), shape.size(), "check_state_family");
  PropertyResult result("state_matching");
  for (std::size_t hi = 0; hi < shape.size(); ++hi) {
    for (std::size_t lo = 0; lo < shape.size(); ++lo) {
      if (!shape.leq(lo, hi)) continue;
      ++result.checked;
      if (!(restrict_state(shape, family[hi], hi, lo) == family[lo])) {
        Witness w;
        w.stage = hi;
        w.lower = lo;
        w.detail = "restricted weights differ from the weights at the lower context";
        result.record(std::move(w));
      }
    }
  }
  return result;
}

template <Backend B>
bool check_state_global_element(const DensityMatrix<B>& rho, const ContextPoset<B>& poset) {
  return check_state_family(poset.shape(), state_family(rho, poset)).holds();
}

#define QCTX_INSTANTIATE(B)                                                                                  \
  template struct StateOnContext<B>;                                                                         \
  template StateOnContext<B> restrict_state<B>(const DensityMatrix<B>&, const Context<B>&);                  \
  template StateOnContext<B> restrict_state<B>(const PosetShape&, const StateOnContext<B>&, std::size_t,     \
                                               std::size_t);                                                 \
  template StateFamily<B> state_family<B>(const DensityMatrix<B>&, const ContextPoset<B>&);                  \
  template PropertyResult check_state_family<B>(const PosetShape&, const StateFamily<B>&);                   \
  template bool check_state_global_element<B>(const DensityMatrix<B>&, const ContextPoset<B>&);

QCTX_INSTANTIATE(ExactBackend)
QCTX_INSTANTIATE(FloatBackend)

#undef QCTX_INSTANTIATE

}  // namespace qctx
