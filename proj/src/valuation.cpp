#include "qctx/valuation.hpp"

#include <algorithm>

namespace qctx {

bool Sieve::contains(std::size_t v) const { return std::binary_search(members.begin(), members.end(), v); }

Sieve make_sieve(const PosetShape& shape, std::size_t stage, std::vector<std::size_t> members) {
  if (stage >= shape.size()) throw ValidationError("unknown stage " + std::to_string(stage));
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  Sieve s{stage, std::move(members)};
  for (std::size_t w : s.members) {
    if (w >= shape.size() || !shape.leq(w, stage)) {
      throw ValidationError("sieve member is not below stage " + shape.id(stage));
    }
    for (std::size_t u : shape.down_set(w)) {
      if (!s.contains(u)) throw ValidationError("sieve on " + shape.id(stage) + " is not a lower set");
    }
  }
  return s;
}

Sieve principal_sieve(const PosetShape& shape, std::size_t stage) {
  if (stage >= shape.size()) throw ValidationError("unknown stage " + std::to_string(stage));
  return {stage, shape.down_set(stage)};
}

Sieve empty_sieve(const PosetShape& shape, std::size_t stage) {
  if (stage >= shape.size()) throw ValidationError("unknown stage " + std::to_string(stage));
  return {stage, {}};
}

bool is_principal(const PosetShape& shape, const Sieve& s) { return s.members == shape.down_set(s.stage); }

Sieve pullback(const PosetShape& shape, const Sieve& s, std::size_t lo) {
  if (!shape.leq(lo, s.stage)) {
    throw OrderError("context " + shape.id(lo) + " is not below stage " + shape.id(s.stage));
  }
  Sieve out{lo, {}};
  for (std::size_t w : s.members) {
    if (shape.leq(w, lo)) out.members.push_back(w);
  }
  return out;
}

template <Backend B>
void require_threshold(const typename B::Real& r) {
  using Real = typename B::Real;
  if constexpr (B::is_exact) {
    if (!(r > Real(0) && r <= Real(1))) throw ValidationError("r must lie in (0, 1], got " + r.to_string());
  } else {
    if (!(r > 0.0 && r <= 1.0)) throw ValidationError("r must lie in (0, 1], got " + B::to_string(r));
  }
}

template <Backend B>
Sieve nu_rho_r(const DensityMatrix<B>& rho, const typename B::Real& r, const LatticeElement& p,
               const ContextPoset<B>& poset) {
  require_threshold<B>(r);
  const auto& shape = poset.shape();
  if (p.context >= shape.size()) throw ValidationError("unknown stage " + std::to_string(p.context));
  const auto& v1 = poset.context(p.context);
  require_same_dim(rho.dim(), v1.dim(), "nu_rho");
  std::vector<std::size_t> members;
  for (std::size_t lo : shape.down_set(p.context)) {
    const auto& v2 = poset.context(lo);
    const auto prob = born_probability(rho, v2.projector(coarse_grain(v1, p.mask, v2)));
    if (B::at_least(prob, r)) members.push_back(lo);
  }
  return make_sieve(shape, p.context, std::move(members));
}

template <Backend B>
ValuationTable valuation_table(const PosetShape& shape, const StateFamily<B>& family, const typename B::Real& r,
                               std::size_t bound) {
  require_threshold<B>(r);
  require_same_dim(family.size(), shape.size(), "valuation_table");
  ValuationTable table{shape, {}};
  table.values.resize(shape.size());
  for (std::size_t v = 0; v < shape.size(); ++v) {
    const auto below = shape.down_set(v);
    for (const auto& p : lattice(shape, v, bound)) {
      std::vector<std::size_t> members;
      for (std::size_t lo : below) {
        if (B::at_least(family[lo].probability(coarse_grain(shape, v, p.mask, lo)), r)) members.push_back(lo);
      }
      table.values[v].push_back(make_sieve(shape, v, std::move(members)));
    }
  }
  return table;
}

namespace {

Witness pair_witness(std::size_t stage, AtomMask p, AtomMask q) {
  Witness w;
  w.stage = stage;
  w.p = p;
  w.q = q;
  return w;
}

}  // namespace

std::vector<PropertyResult> check_valuation(const ValuationTable& table, const ValuationOptions& options) {
  const auto& shape = table.shape;
  PropertyResult fc("functional_composition");
  PropertyResult null("null");
  PropertyResult mono("monotonicity");
  PropertyResult excl("exclusivity", options.require_exclusivity);
  PropertyResult unit("unit", options.require_unit);

  for (std::size_t v = 0; v < shape.size(); ++v) {
    const auto& row = table.values.at(v);
    const AtomMask top = full_mask(shape.atoms(v));
    if (row.size() != static_cast<std::size_t>(top) + 1) throw ValidationError("valuation table is not total");

    for (std::size_t lo : shape.down_set(v)) {
      for (AtomMask p = 0; p <= top; ++p) {
        ++fc.checked;
        const Sieve expected = pullback(shape, table.at(v, p), lo);
        const Sieve& actual = table.at(lo, coarse_grain(shape, v, p, lo));
        if (!(expected.members == actual.members)) {
          Witness w;
          w.stage = v;
          w.lower = lo;
          w.p = p;
          w.expected_set = expected.members;
          w.actual_set = actual.members;
          fc.record(std::move(w));
        }
      }
    }

    ++null.checked;
    if (!table.at(v, 0).members.empty()) {
      Witness w;
      w.stage = v;
      w.p = 0;
      w.actual_set = table.at(v, 0).members;
      null.record(std::move(w));
    }

    for (AtomMask p = 0; p <= top; ++p) {
      for (std::size_t i = 0; i < shape.atoms(v); ++i) {
        if (mask_has(p, i)) continue;
        const AtomMask q = p | (AtomMask{1} << i);
        ++mono.checked;
        const auto& sp = table.at(v, p).members;
        const auto& sq = table.at(v, q).members;
        if (!std::includes(sq.begin(), sq.end(), sp.begin(), sp.end())) {
          Witness w = pair_witness(v, p, q);
          w.expected_set = sp;
          w.actual_set = sq;
          mono.record(std::move(w));
        }
      }
    }

    std::vector<AtomMask> totally_true;
    for (AtomMask p = 0; p <= top; ++p) {
      if (is_principal(shape, table.at(v, p))) totally_true.push_back(p);
    }
    for (std::size_t i = 0; i < totally_true.size(); ++i) {
      for (std::size_t j = i; j < totally_true.size(); ++j) {
        ++excl.checked;
        if ((totally_true[i] & totally_true[j]) == 0) excl.record(pair_witness(v, totally_true[i], totally_true[j]));
      }
    }

    ++unit.checked;
    if (!is_principal(shape, table.at(v, top))) {
      Witness w;
      w.stage = v;
      w.p = top;
      w.expected_set = shape.down_set(v);
      w.actual_set = table.at(v, top).members;
      unit.record(std::move(w));
    }
  }
  return {fc, null, mono, excl, unit};
}

PropertyResult natural_transformation_check(const ValuationTable& table) {
  const auto& shape = table.shape;
  PropertyResult result("naturality");
  for (std::size_t hi = 0; hi < shape.size(); ++hi) {
    const std::size_t k1 = shape.atoms(hi);
    for (std::size_t lo = 0; lo < shape.size(); ++lo) {
      if (!shape.leq(lo, hi)) continue;
      const auto& map = shape.refinement(lo, hi);
      const std::size_t k2 = shape.atoms(lo);
      for (AtomMask p = 0; p < (AtomMask{1} << k1); ++p) {
        // Infimum over all Q at lo whose inclusion dominates p.
        AtomMask least = (AtomMask{1} << k2) - 1;
        for (AtomMask q = 0; q < (AtomMask{1} << k2); ++q) {
          bool dominates = true;
          for (std::size_t a = 0; a < k1 && dominates; ++a) {
            if (((p >> a) & 1U) && !((q >> map[a]) & 1U)) dominates = false;
          }
          if (dominates) least &= q;
        }
        std::vector<std::size_t> pulled;
        for (std::size_t w : table.values[hi][p].members) {
          if (shape.leq(w, lo) && shape.leq(w, hi)) pulled.push_back(w);
        }
        ++result.checked;
        const auto& direct = table.values[lo][least].members;
        if (pulled != direct) {
          Witness w;
          w.stage = hi;
          w.lower = lo;
          w.p = p;
          w.q = least;
          w.expected_set = pulled;
          w.actual_set = direct;
          result.record(std::move(w));
        }
      }
    }
  }
  return result;
}

#define QCTX_INSTANTIATE(B)                                                                                  \
  template void require_threshold<B>(const B::Real&);                                                        \
  template Sieve nu_rho_r<B>(const DensityMatrix<B>&, const B::Real&, const LatticeElement&,                 \
                             const ContextPoset<B>&);                                                        \
  template ValuationTable valuation_table<B>(const PosetShape&, const StateFamily<B>&, const B::Real&,       \
                                             std::size_t);

QCTX_INSTANTIATE(ExactBackend)
QCTX_INSTANTIATE(FloatBackend)

#undef QCTX_INSTANTIATE

}  // namespace qctx
