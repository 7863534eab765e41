#include <doctest.h>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace qctx;
using fx::blocks;
using fx::E;
using fx::F;

TEST_CASE("lattice infima") {
  const std::vector<AtomMask> none;
  CHECK(lattice_infimum(none, 3) == 7);
  const std::vector<AtomMask> two{0b011, 0b110};
  CHECK(lattice_infimum(two, 3) == 0b010);
  const std::vector<AtomMask> disjoint{0b001, 0b110};
  CHECK(lattice_infimum(disjoint, 3) == 0);
}

TEST_CASE_TEMPLATE("true sets and supports", B, E, F) {
  const auto poset = fx::diag3_poset<B>();
  const auto& s = poset.shape();
  const auto top = poset.require(blocks<B>(3, {{0}, {1}, {2}}));
  const auto table = valuation_table(DensityMatrix<B>::basis_state(3, 0), poset, typename B::Real(1));
  CHECK(true_set(table, top) == std::vector<AtomMask>{0b001, 0b011, 0b101, 0b111});
  for (std::size_t v = 0; v < s.size(); ++v) {
    const auto t = true_set(table, v);
    CHECK(std::find(t.begin(), t.end(), full_mask(s.atoms(v))) != t.end());
    CHECK(std::find(t.begin(), t.end(), AtomMask{0}) == t.end());
  }

  const auto& ctx = poset.context(top);
  CHECK(support(DensityMatrix<B>::basis_state(3, 0), ctx) == 0b001);
  CHECK(support(fx::diag_state<B>({"0.5", "0.5", "0"}), ctx) == 0b011);
  CHECK(support(DensityMatrix<B>::maximally_mixed(3), ctx) == 0b111);
}

TEST_CASE_TEMPLATE("the support is the least projector of probability one", B, E, F) {
  Rng rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    const auto poset = random_poset<B>(2 + trial % 3, rng);
    const auto rho = random_density<B>(poset.dim(), rng);
    for (const auto& ctx : poset.contexts()) {
      const AtomMask q = support(rho, ctx);
      CHECK(B::equal(oracle::trace_product<B>(rho.matrix(), ctx.projector(q).matrix()), typename B::Real(1)));
      for (AtomMask p = 0; p <= full_mask(ctx.size()); ++p) {
        if (B::equal(oracle::trace_product<B>(rho.matrix(), ctx.projector(p).matrix()), typename B::Real(1))) {
          CHECK(lattice_leq(q, p));
        }
      }
    }
  }
}

TEST_CASE_TEMPLATE("true subobjects", B, E, F) {
  const auto poset = fx::diag3_poset<B>();
  const auto& s = poset.shape();
  const auto top = poset.require(blocks<B>(3, {{0}, {1}, {2}}));
  const auto split = blocks<B>(3, {{0, 1}, {2}});
  const auto mid = poset.require(split);

  const auto mixed = true_subobject(DensityMatrix<B>::maximally_mixed(3), poset);
  for (std::size_t v = 0; v < s.size(); ++v) CHECK(mixed[v] == full_mask(s.atoms(v)));

  const auto rho = fx::diag_state<B>({"0.5", "0.5", "0"});
  const auto i = true_subobject(rho, poset);
  CHECK(i[top] == 0b011);
  CHECK(i[mid] == fx::mask_of(split, {{0, 1}}));
  const auto rs = check_subobject_of_sigma(s, i);
  CHECK(find_property(rs, "weak").holds());

  const auto table = valuation_table(rho, poset, typename B::Real(1));
  CHECK(interval_from_valuation(table) == i);
}

TEST_CASE_TEMPLATE("intervals from thresholded valuations", B, E, F) {
  const auto poset = fx::diag3_poset<B>();
  const auto& s = poset.shape();
  const auto top = poset.require(blocks<B>(3, {{0}, {1}, {2}}));
  const auto table = valuation_table(fx::diag_state<B>({"0.5", "0.5", "0"}), poset, B::parse_real("0.5"));
  const auto i = interval_from_valuation(table);
  CHECK(i[top] == 0);
  CHECK(i[s.trivial()] == 1);
  CHECK(find_property(check_subobject_of_sigma(s, i), "weak").holds());

  Rng rng(53);
  for (int trial = 0; trial < 8; ++trial) {
    const auto p = random_poset<B>(3, rng);
    const auto t = valuation_table(random_density<B>(3, rng), p, B::parse_real("0.4"));
    CHECK(find_property(check_subobject_of_sigma(p.shape(), interval_from_valuation(t)), "weak").holds());
  }
}

TEST_CASE("an assignment breaking the infimum matching fails the weak law") {
  const auto poset = fx::diag3_poset<E>();
  const auto& s = poset.shape();
  const auto top = poset.require(blocks<E>(3, {{0}, {1}, {2}}));
  const auto split = blocks<E>(3, {{0}, {1, 2}});
  const auto mid = poset.require(split);
  IntervalAssignment i(s.size());
  for (std::size_t v = 0; v < s.size(); ++v) i[v] = full_mask(s.atoms(v));
  i[top] = 0b010;
  i[mid] = fx::mask_of(split, {{0}});
  const auto rs = check_subobject_of_sigma(s, i);
  const auto& weak = find_property(rs, "weak");
  CHECK_FALSE(weak.holds());
  REQUIRE(weak.first.has_value());
  CHECK(weak.first->stage == std::optional<std::size_t>(top));
  CHECK(weak.first->lower == std::optional<std::size_t>(mid));
  CHECK(weak.first->actual == std::optional<AtomMask>(fx::mask_of(split, {{1, 2}})));
  CHECK_FALSE(find_property(rs, "strong").holds());
}

TEST_CASE_TEMPLATE("global elements from state valuations", B, E, F) {
  Rng rng(59);
  for (int trial = 0; trial < 10; ++trial) {
    const auto poset = random_poset<B>(2 + trial % 3, rng);
    const auto rho = random_density<B>(poset.dim(), rng);
    const auto g = global_element_from_valuation(valuation_table(rho, poset, typename B::Real(1)));
    REQUIRE(g.ok());
    for (std::size_t v = 0; v < poset.size(); ++v) CHECK(g.infima[v] == support(rho, poset.context(v)));
    const auto i = interval_from_global_element(poset.shape(), g.infima);
    CHECK(all_hold(check_subobject_of_sigma(poset.shape(), i)));
    CHECK(i == true_subobject(rho, poset));
  }
  const auto only = build_poset<B>(3, {}, false);
  CHECK(global_element_from_valuation(valuation_table(fx::diag_state<B>({"0.5", "0.3", "0.2"}), only,
                                                      B::parse_real("0.6")))
            .ok());
}

TEST_CASE_TEMPLATE("a thresholded valuation need not give a global element", B, E, F) {
  const auto poset = fx::diag3_poset<B>();
  const auto top = poset.require(blocks<B>(3, {{0}, {1}, {2}}));
  const auto split = blocks<B>(3, {{0}, {1, 2}});
  const auto mid = poset.require(split);
  const auto table = valuation_table(fx::diag_state<B>({"0.5", "0.3", "0.2"}), poset, B::parse_real("0.6"));
  CHECK(true_set(table, top) == std::vector<AtomMask>{0b011, 0b101, 0b111});
  const auto g = global_element_from_valuation(table);
  CHECK_FALSE(g.ok());
  CHECK(g.matching.violations == 1);
  REQUIRE(g.matching.first.has_value());
  const auto& w = *g.matching.first;
  CHECK(w.stage == std::optional<std::size_t>(top));
  CHECK(w.lower == std::optional<std::size_t>(mid));
  CHECK(w.p == std::optional<AtomMask>(0b001));
  CHECK(w.actual == std::optional<AtomMask>(0b11));
  CHECK(w.expected == std::optional<AtomMask>(fx::mask_of(split, {{0}})));

  std::vector<AtomMask> gamma = g.infima;
  CHECK_THROWS_AS(interval_from_global_element(poset.shape(), gamma), ValidationError);
}

TEST_CASE_TEMPLATE("subobjects of the coarse-graining presheaf", B, E, F) {
  const auto poset = fx::diag3_poset<B>();
  const auto& s = poset.shape();
  const auto top = poset.require(blocks<B>(3, {{0}, {1}, {2}}));

  const auto pure = subobject_of_G(DensityMatrix<B>::basis_state(3, 0), typename B::Real(1), poset);
  CHECK(pure[top] == std::vector<AtomMask>{0b001, 0b011, 0b101, 0b111});

  const auto rho = fx::diag_state<B>({"0.5", "0.3", "0.2"});
  const auto t = subobject_of_G(rho, B::parse_real("0.6"), poset);
  CHECK(t[top] == std::vector<AtomMask>{0b011, 0b101, 0b111});
  const auto small = subobject_of_G(fx::diag_state<B>({"0.5", "0.5", "0"}), B::parse_real("0.1"), poset);
  CHECK(small[top] == std::vector<AtomMask>{0b001, 0b010, 0b011, 0b101, 0b110, 0b111});
  CHECK_THROWS_AS(subobject_of_G(rho, B::parse_real("0"), poset), ValidationError);

  const auto rs = check_subobject_of_G(s, t);
  CHECK(find_property(rs, "containment").holds());

  auto removed = subobject_of_G(rho, typename B::Real(1), poset);
  removed[s.trivial()].clear();
  CHECK_FALSE(find_property(check_subobject_of_G(s, removed), "containment").holds());
}

// Every Q in T(V2) lies in the lattice of V1 with the same probability and
// coarse-grains to itself, so the image is all of T(V2) for any threshold.
TEST_CASE_TEMPLATE("thresholded subobjects of G are images of their restrictions", B, E, F) {
  Rng rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const auto poset = random_poset<B>(2 + trial % 3, rng);
    const auto rho = random_density<B>(poset.dim(), rng);
    for (const char* r : {"1", "0.8", "0.6", "0.3"}) {
      const auto rs = check_subobject_of_G(poset.shape(), subobject_of_G(rho, B::parse_real(r), poset));
      CHECK(find_property(rs, "containment").holds());
      CHECK(find_property(rs, "equality").holds());
    }
  }
}

TEST_CASE_TEMPLATE("semantic subobjects", B, E, F) {
  const auto poset = fx::diag3_poset<B>();
  const auto& s = poset.shape();
  Rng rng(67);
  for (int trial = 0; trial < 5; ++trial) {
    const auto t = subobject_of_G(random_density<B>(3, rng), typename B::Real(1), poset);
    CHECK(all_hold(check_semantic_subobject(s, t)));
  }

  const auto low = build_poset<B>(3, {blocks<B>(3, {{0}, {1}, {2}})}, false);
  const auto top = low.require(blocks<B>(3, {{0}, {1}, {2}}));
  const auto t = subobject_of_G(fx::diag_state<B>({"0.4", "0.4", "0.2"}), B::parse_real("0.3"), low);
  const auto rs = check_semantic_subobject(low.shape(), t);
  for (const char* name : {"functional_composition", "null", "monotonicity"}) CHECK(find_property(rs, name).holds());
  const auto& ex = find_property(rs, "exclusivity");
  CHECK_FALSE(ex.holds());
  REQUIRE(ex.first.has_value());
  CHECK(ex.first->stage == std::optional<std::size_t>(top));
  CHECK(ex.first->p == std::optional<AtomMask>(0b001));
  CHECK(ex.first->q == std::optional<AtomMask>(0b010));
  CHECK(all_hold(check_semantic_subobject(low.shape(), t, false)));

  auto with_null = subobject_of_G(DensityMatrix<B>::maximally_mixed(3), typename B::Real(1), poset);
  with_null[s.trivial()].insert(with_null[s.trivial()].begin(), AtomMask{0});
  CHECK_FALSE(find_property(check_semantic_subobject(s, with_null), "null").holds());

  auto gap = subobject_of_G(DensityMatrix<B>::basis_state(3, 0), typename B::Real(1), poset);
  const auto v = poset.require(blocks<B>(3, {{0}, {1}, {2}}));
  gap[v].erase(std::find(gap[v].begin(), gap[v].end(), AtomMask{0b011}));
  CHECK_FALSE(find_property(check_semantic_subobject(s, gap), "monotonicity").holds());
}

TEST_CASE_TEMPLATE("ideal valuations", B, E, F) {
  using S = typename B::Scalar;
  const auto poset = fx::diag3_poset<B>();
  const auto top = poset.require(blocks<B>(3, {{0}, {1}, {2}}));
  const std::vector<S> e0{S(1), S(0), S(0)};
  CHECK(ideal_valuation<B>(e0, poset)[top] == 0b001);
  const std::vector<S> spread{S(1), S(2), S(-1)};
  const auto all = ideal_valuation<B>(spread, poset);
  for (std::size_t v = 0; v < poset.size(); ++v) CHECK(all[v] == full_mask(poset.context(v).size()));
  const std::vector<S> zero(3);
  CHECK_THROWS_AS(ideal_valuation<B>(zero, poset), ValidationError);
}

TEST_CASE_TEMPLATE("ideal valuations are the true subobjects of pure states", B, E, F) {
  Rng rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t dim = 2 + static_cast<std::size_t>(trial % 4);
    const auto poset = random_poset<B>(dim, rng);
    const auto psi = random_vector<B>(dim, rng);
    const auto rho = DensityMatrix<B>::pure(psi);
    const auto ideal = ideal_valuation<B>(psi, poset);
    CHECK(ideal == true_subobject(rho, poset));
    for (std::size_t v = 0; v < poset.size(); ++v) {
      const auto& ctx = poset.context(v);
      for (AtomMask q = 0; q <= full_mask(ctx.size()); ++q) {
        const bool certain =
            B::equal(oracle::trace_product<B>(rho.matrix(), ctx.projector(q).matrix()), typename B::Real(1));
        CHECK(certain == lattice_leq(ideal[v], q));
      }
    }
  }
}

TEST_CASE_TEMPLATE("spectral values follow functions of the operator", B, E, F) {
  using Real = typename B::Real;
  const auto v = blocks<B>(3, {{0}, {1}, {2}});
  const auto a = fx::diag<B>({3, -1, 3});
  CHECK(spectral_values(v, 0b111, a.matrix()) == std::vector<Real>{Real(-1), Real(3)});
  CHECK(spectral_values(v, 0b101, a.matrix()) == std::vector<Real>{Real(3)});
  CHECK(spectral_values(v, 0, a.matrix()).empty());

  EigenvalueFunction<B> f;
  f.set(Real(-1), Real(4));
  f.set(Real(3), Real(0));
  const auto b = apply_function(a, f);
  for (AtomMask i = 0; i <= 7; ++i) {
    std::vector<Real> mapped;
    for (const auto& x : spectral_values(v, i, a.matrix())) mapped.push_back(*f(x));
    std::sort(mapped.begin(), mapped.end(), [](const Real& x, const Real& y) { return B::less(x, y); });
    CHECK(spectral_values(v, i, b.matrix()) == mapped);
  }
}
