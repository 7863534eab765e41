#include "qctx/intervals.hpp"

#include <algorithm>

namespace qctx {

AtomMask lattice_infimum(std::span<const AtomMask> masks, std::size_t atoms) {
  AtomMask out = full_mask(atoms);
  for (AtomMask m : masks) out &= m;
  return out;
}

std::vector<AtomMask> true_set(const ValuationTable& table, std::size_t stage) {
  std::vector<AtomMask> out;
  const auto& row = table.values.at(stage);
  for (std::size_t p = 0; p < row.size(); ++p) {
    if (is_principal(table.shape, row[p])) out.push_back(static_cast<AtomMask>(p));
  }
  return out;
}

ProjectorFamily true_set_family(const ValuationTable& table) {
  ProjectorFamily out;
  for (std::size_t v = 0; v < table.shape.size(); ++v) out.push_back(true_set(table, v));
  return out;
}

template <Backend B>
AtomMask support(const StateOnContext<B>& s) {
  AtomMask out = 0;
  for (std::size_t i = 0; i < s.weights.size(); ++i) {
    if (B::positive(s.weights[i])) out |= AtomMask{1} << i;
  }
  return out;
}

template <Backend B>
IntervalAssignment true_subobject(const DensityMatrix<B>& rho, const ContextPoset<B>& poset) {
  IntervalAssignment out;
  for (const auto& v : poset.contexts()) out.push_back(support(rho, v));
  return out;
}

IntervalAssignment interval_from_valuation(const ValuationTable& table) {
  IntervalAssignment out;
  for (std::size_t v = 0; v < table.shape.size(); ++v) {
    const auto t = true_set(table, v);
    out.push_back(lattice_infimum(t, table.shape.atoms(v)));
  }
  return out;
}

std::vector<PropertyResult> check_subobject_of_sigma(const PosetShape& shape, const IntervalAssignment& intervals) {
  require_same_dim(intervals.size(), shape.size(), "check_subobject_of_sigma");
  PropertyResult weak("weak");
  PropertyResult strong("strong");
  for (std::size_t hi = 0; hi < shape.size(); ++hi) {
    for (std::size_t lo : shape.down_set(hi)) {
      const auto& map = shape.refinement(lo, hi);
      AtomMask image = 0;
      for (std::size_t k : mask_indices(intervals[hi])) image |= AtomMask{1} << map.at(k);
      Witness w;
      w.stage = hi;
      w.lower = lo;
      w.expected = intervals[lo];
      w.actual = image;
      ++weak.checked;
      ++strong.checked;
      if (!lattice_leq(image, intervals[lo])) {
        for (std::size_t k : mask_indices(intervals[hi])) {
          if (!mask_has(intervals[lo], map[k])) {
            w.detail = "functional " + std::to_string(k) + " restricts outside the lower set";
            break;
          }
        }
        weak.record(w);
      }
      if (image != intervals[lo]) strong.record(w);
    }
  }
  return {weak, strong};
}

GlobalElementResult global_element_from_valuation(const ValuationTable& table) {
  const auto& shape = table.shape;
  GlobalElementResult out;
  out.infima = interval_from_valuation(table);
  for (std::size_t hi = 0; hi < shape.size(); ++hi) {
    for (std::size_t lo : shape.down_set(hi)) {
      ++out.matching.checked;
      const AtomMask coarse = coarse_grain(shape, hi, out.infima[hi], lo);
      if (coarse != out.infima[lo]) {
        Witness w;
        w.stage = hi;
        w.lower = lo;
        w.p = out.infima[hi];
        w.actual = out.infima[lo];
        w.expected = coarse;
        out.matching.record(std::move(w));
      }
    }
  }
  return out;
}

IntervalAssignment interval_from_global_element(const PosetShape& shape, const std::vector<AtomMask>& gamma) {
  require_same_dim(gamma.size(), shape.size(), "interval_from_global_element");
  for (std::size_t hi = 0; hi < shape.size(); ++hi) {
    for (std::size_t lo : shape.down_set(hi)) {
      if (coarse_grain(shape, hi, gamma[hi], lo) != gamma[lo]) {
        throw ValidationError("global element does not match between " + shape.id(hi) + " and " + shape.id(lo));
      }
    }
  }
  return gamma;
}

template <Backend B>
ProjectorFamily subobject_of_G(const PosetShape& shape, const StateFamily<B>& family, const typename B::Real& r) {
  require_threshold<B>(r);
  require_same_dim(family.size(), shape.size(), "subobject_of_G");
  ProjectorFamily out;
  for (std::size_t v = 0; v < shape.size(); ++v) {
    std::vector<AtomMask> members;
    for (const auto& p : lattice(shape, v)) {
      if (B::at_least(family[v].probability(p.mask), r)) members.push_back(p.mask);
    }
    out.push_back(std::move(members));
  }
  return out;
}

namespace {

bool has(const std::vector<AtomMask>& set, AtomMask m) { return std::binary_search(set.begin(), set.end(), m); }

std::vector<std::size_t> as_indices(const std::vector<AtomMask>& masks) {
  return {masks.begin(), masks.end()};
}

std::vector<AtomMask> sorted(std::vector<AtomMask> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

PropertyResult containment_property(const PosetShape& shape, const ProjectorFamily& family, std::string name) {
  PropertyResult result(std::move(name));
  for (std::size_t hi = 0; hi < shape.size(); ++hi) {
    for (std::size_t lo : shape.down_set(hi)) {
      for (AtomMask p : family[hi]) {
        ++result.checked;
        const AtomMask coarse = coarse_grain(shape, hi, p, lo);
        if (!has(family[lo], coarse)) {
          Witness w;
          w.stage = hi;
          w.lower = lo;
          w.p = p;
          w.actual = coarse;
          result.record(std::move(w));
        }
      }
    }
  }
  return result;
}

void require_family(const PosetShape& shape, const ProjectorFamily& family, const char* what) {
  require_same_dim(family.size(), shape.size(), what);
  for (std::size_t v = 0; v < shape.size(); ++v) {
    for (AtomMask m : family[v]) {
      if (!lattice_leq(m, full_mask(shape.atoms(v)))) throw ValidationError("projector family selects unknown atoms");
    }
    if (!std::is_sorted(family[v].begin(), family[v].end())) {
      throw ValidationError("projector family entries must be increasing");
    }
  }
}

}  // namespace

std::vector<PropertyResult> check_subobject_of_G(const PosetShape& shape, const ProjectorFamily& family) {
  require_family(shape, family, "check_subobject_of_G");
  PropertyResult containment = containment_property(shape, family, "containment");
  PropertyResult equality("equality");
  for (std::size_t hi = 0; hi < shape.size(); ++hi) {
    for (std::size_t lo : shape.down_set(hi)) {
      ++equality.checked;
      std::vector<AtomMask> image;
      for (AtomMask p : family[hi]) image.push_back(coarse_grain(shape, hi, p, lo));
      image = sorted(std::move(image));
      if (image != family[lo]) {
        Witness w;
        w.stage = hi;
        w.lower = lo;
        w.expected_set = as_indices(family[lo]);
        w.actual_set = as_indices(image);
        equality.record(std::move(w));
      }
    }
  }
  return {containment, equality};
}

std::vector<PropertyResult> check_semantic_subobject(const PosetShape& shape, const ProjectorFamily& family,
                                                     bool require_exclusivity) {
  require_family(shape, family, "check_semantic_subobject");
  PropertyResult fc = containment_property(shape, family, "functional_composition");
  PropertyResult null("null");
  PropertyResult mono("monotonicity");
  PropertyResult excl("exclusivity", require_exclusivity);
  for (std::size_t v = 0; v < shape.size(); ++v) {
    const auto& t = family[v];
    ++null.checked;
    if (has(t, 0)) {
      Witness w;
      w.stage = v;
      w.p = 0;
      null.record(std::move(w));
    }
    for (AtomMask p : t) {
      for (std::size_t i = 0; i < shape.atoms(v); ++i) {
        if (mask_has(p, i)) continue;
        ++mono.checked;
        const AtomMask q = p | (AtomMask{1} << i);
        if (!has(t, q)) {
          Witness w;
          w.stage = v;
          w.p = p;
          w.q = q;
          mono.record(std::move(w));
        }
      }
    }
    for (std::size_t i = 0; i < t.size(); ++i) {
      for (std::size_t j = i; j < t.size(); ++j) {
        ++excl.checked;
        if ((t[i] & t[j]) == 0) {
          Witness w;
          w.stage = v;
          w.p = t[i];
          w.q = t[j];
          excl.record(std::move(w));
        }
      }
    }
  }
  return {fc, null, mono, excl};
}

template <Backend B>
IntervalAssignment ideal_valuation(std::span<const typename B::Scalar> psi, const ContextPoset<B>& poset) {
  require_same_dim(psi.size(), poset.dim(), "ideal_valuation");
  if (std::all_of(psi.begin(), psi.end(), [](const auto& x) { return B::is_zero(x); })) {
    throw ValidationError("ideal_valuation needs a nonzero vector");
  }
  const std::vector<typename B::Scalar> v(psi.begin(), psi.end());
  IntervalAssignment out;
  for (const auto& ctx : poset.contexts()) {
    AtomMask annihilating = 0;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      const auto image = ctx.atom(i).matrix().apply(v);
      if (std::all_of(image.begin(), image.end(), [](const auto& x) { return B::is_zero(x); })) {
        annihilating |= AtomMask{1} << i;
      }
    }
    out.push_back(full_mask(ctx.size()) & ~annihilating);
  }
  return out;
}

template <Backend B>
std::vector<typename B::Real> spectral_values(const Context<B>& v, AtomMask interval, const Matrix<B>& a) {
  auto coords = v.coordinates(a);
  if (!coords) throw ValidationError("operator is not an element of context " + v.id());
  std::vector<typename B::Real> out;
  for (std::size_t i : mask_indices(interval)) {
    if (i >= v.size()) throw ValidationError("interval selects atoms outside the context");
    out.push_back(B::real((*coords)[i]));
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return B::compare(x, y) < 0; });
  out.erase(std::unique(out.begin(), out.end(), [](const auto& x, const auto& y) { return B::equal(x, y); }),
            out.end());
  return out;
}

#define QCTX_INSTANTIATE(B)                                                                                  \
  template AtomMask support<B>(const StateOnContext<B>&);                                                    \
  template IntervalAssignment true_subobject<B>(const DensityMatrix<B>&, const ContextPoset<B>&);            \
  template ProjectorFamily subobject_of_G<B>(const PosetShape&, const StateFamily<B>&, const B::Real&);      \
  template IntervalAssignment ideal_valuation<B>(std::span<const B::Scalar>, const ContextPoset<B>&);        \
  template std::vector<B::Real> spectral_values<B>(const Context<B>&, AtomMask, const Matrix<B>&);

QCTX_INSTANTIATE(ExactBackend)
QCTX_INSTANTIATE(FloatBackend)

#undef QCTX_INSTANTIATE

}  // namespace qctx
