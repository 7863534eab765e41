#include "qctx/coarse.hpp"

#include <algorithm>

namespace qctx {

namespace {

void require_bound(const PosetShape& shape, std::size_t stage, std::size_t bound) {
  if (shape.atoms(stage) > bound || shape.atoms(stage) >= kMaxAtoms) {
    throw ValidationError("context " + shape.id(stage) + " has " + std::to_string(shape.atoms(stage)) +
                          " atoms, above the lattice bound " + std::to_string(bound));
  }
}

}  // namespace

std::vector<LatticeElement> lattice(const PosetShape& shape, std::size_t stage, std::size_t bound) {
  require_bound(shape, stage, bound);
  const AtomMask top = full_mask(shape.atoms(stage));
  std::vector<LatticeElement> out;
  out.reserve(static_cast<std::size_t>(top) + 1);
  for (AtomMask m = 0;; ++m) {
    out.push_back({stage, m});
    if (m == top) break;
  }
  return out;
}

AtomMask coarse_grain(const PosetShape& shape, std::size_t hi, AtomMask p, std::size_t lo) {
  const auto& map = shape.refinement(lo, hi);
  if ((p & ~full_mask(map.size())) != 0) throw ValidationError("mask selects atoms outside the context");
  AtomMask out = 0;
  for (std::size_t a : mask_indices(p)) out |= AtomMask{1} << map[a];
  return out;
}

LatticeElement coarse_grain(const PosetShape& shape, const LatticeElement& p, std::size_t lo) {
  return {lo, coarse_grain(shape, p.context, p.mask, lo)};
}

PropertyResult coarse_functoriality_check(const PosetShape& shape, std::size_t bound) {
  PropertyResult result("coarse_functoriality");
  for (std::size_t v1 = 0; v1 < shape.size(); ++v1) {
    const auto below = shape.down_set(v1);
    const auto elements = lattice(shape, v1, bound);
    for (std::size_t v2 : below) {
      for (std::size_t v3 : shape.down_set(v2)) {
        for (const auto& p : elements) {
          ++result.checked;
          const AtomMask direct = coarse_grain(shape, v1, p.mask, v3);
          const AtomMask stepped = coarse_grain(shape, v2, coarse_grain(shape, v1, p.mask, v2), v3);
          if (direct != stepped) {
            Witness w;
            w.stage = v1;
            w.lower = v2;
            w.bottom = v3;
            w.p = p.mask;
            w.expected = direct;
            w.actual = stepped;
            result.record(std::move(w));
          }
        }
      }
    }
  }
  return result;
}

std::vector<SpectralFunctional> clopen_of(const PosetShape& shape, const LatticeElement& p) {
  std::vector<SpectralFunctional> out;
  for (std::size_t i : mask_indices(p.mask)) {
    if (i >= shape.atoms(p.context)) throw ValidationError("mask selects atoms outside the context");
    out.push_back({shape.id(p.context), i});
  }
  return out;
}

template <Backend B>
AugmentedProposition<B> augment(const ContextPoset<B>& poset, const LatticeElement& p,
                                std::span<const HermitianOperator<B>> probes) {
  const auto& v = poset.context(p.context);
  const Projector<B> target = v.projector(p.mask);
  AugmentedProposition<B> out{p, {probes.begin(), probes.end()}, {}};
  const auto canonical = v.canonical_probe();
  if (std::find(out.probes.begin(), out.probes.end(), canonical) == out.probes.end()) {
    out.probes.push_back(canonical);
  }
  for (std::size_t k = 0; k < out.probes.size(); ++k) {
    const auto& a = out.probes[k];
    require_same_dim(a.dim(), v.dim(), "augment");
    if (!v.contains(a.matrix())) {
      throw ValidationError("probe operator " + std::to_string(k) + " is not in context " + v.id());
    }
    PropositionWitness<B> w{k, {}};
    Projector<B> sum = Projector<B>::zero(v.dim());
    for (auto& space : spectral_decompose(a)) {
      if (!space.projector.leq(target)) continue;
      sum = sum.plus(space.projector);
      w.values.push_back(std::move(space.eigenvalue));
    }
    if (sum == target) out.witnesses.push_back(std::move(w));
  }
  return out;
}

template <Backend B>
AtomMask clo_displayed_action(const ContextPoset<B>& poset, std::size_t hi, AtomMask clopen, std::size_t lo) {
  const auto& v1 = poset.context(hi);
  const auto& v2 = poset.context(lo);
  if (!is_subalgebra(v2, v1)) throw OrderError("clopen action: target context is not a subalgebra");
  const Projector<B> p = v1.projector(clopen);
  // Least Q in the lattice of v2 with P <= Q, by search over the lattice.
  std::optional<Projector<B>> least;
  for (AtomMask q = 0; q <= full_mask(v2.size()); ++q) {
    Projector<B> cand = v2.projector(q);
    if (!p.leq(cand)) continue;
    if (!least || cand.leq(*least)) least = std::move(cand);
  }
  AtomMask out = 0;
  for (const auto& chi : spectrum(v2)) {
    if (B::equal(evaluate(chi, v2, least->matrix()), typename B::Scalar(1))) out |= AtomMask{1} << chi.atom;
  }
  return out;
}

template <Backend B>
std::vector<PropertyResult> clo_iso_check(const ContextPoset<B>& poset, const CloAction<B>& action,
                                          std::size_t bound) {
  const auto& shape = poset.shape();
  PropertyResult bijection("bijection");
  PropertyResult naturality("naturality");
  for (std::size_t v = 0; v < shape.size(); ++v) {
    const auto& ctx = poset.context(v);
    std::vector<AtomMask> images;
    for (const auto& p : lattice(shape, v, bound)) {
      ++bijection.checked;
      const Matrix<B> m = ctx.projector(p.mask).matrix();
      AtomMask image = 0;
      bool two_valued = true;
      for (const auto& k : spectrum(ctx)) {
        const auto value = evaluate(k, ctx, m);
        if (B::equal(value, typename B::Scalar(1))) {
          image |= AtomMask{1} << k.atom;
        } else if (!B::is_zero(value)) {
          two_valued = false;
        }
      }
      AtomMask listed = 0;
      for (const auto& k : clopen_of(shape, p)) listed |= AtomMask{1} << k.atom;
      if (!two_valued || image != listed) {
        Witness w;
        w.stage = v;
        w.p = p.mask;
        w.expected = image;
        w.actual = listed;
        w.detail = two_valued ? "clopen set differs from the evaluation readout" : "functional not two-valued";
        bijection.record(std::move(w));
      }
      images.push_back(listed);
    }
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end()) {
      Witness w;
      w.stage = v;
      w.detail = "two projectors share a clopen set";
      bijection.record(std::move(w));
    }
  }
  for (std::size_t hi = 0; hi < shape.size(); ++hi) {
    for (std::size_t lo : shape.down_set(hi)) {
      for (const auto& p : lattice(shape, hi, bound)) {
        ++naturality.checked;
        const AtomMask expected = coarse_grain(shape, hi, p.mask, lo);
        const AtomMask actual = action(poset, hi, p.mask, lo);
        if (expected != actual) {
          Witness w;
          w.stage = hi;
          w.lower = lo;
          w.p = p.mask;
          w.expected = expected;
          w.actual = actual;
          naturality.record(std::move(w));
        }
      }
    }
  }
  return {bijection, naturality};
}

#define QCTX_INSTANTIATE(B)                                                                                  \
  template AugmentedProposition<B> augment<B>(const ContextPoset<B>&, const LatticeElement&,                 \
                                              std::span<const HermitianOperator<B>>);                        \
  template AtomMask clo_displayed_action<B>(const ContextPoset<B>&, std::size_t, AtomMask, std::size_t);     \
  template std::vector<PropertyResult> clo_iso_check<B>(const ContextPoset<B>&, const CloAction<B>&,         \
                                                        std::size_t);

QCTX_INSTANTIATE(ExactBackend)
QCTX_INSTANTIATE(FloatBackend)

#undef QCTX_INSTANTIATE

}  // namespace qctx
