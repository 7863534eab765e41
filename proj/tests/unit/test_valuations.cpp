#include <doctest.h>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace qctx;
using fx::blocks;
using fx::E;
using fx::F;

namespace {

// Contexts V2 <= V1 at which the least dominating projector of p has
// probability at least r, from matrices alone.
template <class B>
std::vector<std::size_t> reference_sieve(const ContextPoset<B>& poset, const DensityMatrix<B>& rho,
                                         const typename B::Real& r, std::size_t v1, AtomMask p) {
  std::vector<std::size_t> out;
  for (std::size_t v2 : oracle::below(poset, v1)) {
    const AtomMask q = oracle::infimum(poset.context(v1), p, poset.context(v2));
    const auto prob = oracle::trace_product<B>(rho.matrix(), poset.context(v2).projector(q).matrix());
    if (B::at_least(prob, r)) out.push_back(v2);
  }
  return out;
}

}  // namespace

TEST_CASE("sieves") {
  const auto poset = fx::diag3_poset<E>();
  const auto& s = poset.shape();
  const auto top = poset.require(blocks<E>(3, {{0}, {1}, {2}}));
  const auto mid = poset.require(blocks<E>(3, {{0}, {1, 2}}));
  const auto t = s.trivial();

  CHECK(principal_sieve(s, top).members.size() == 5);
  CHECK(is_principal(s, principal_sieve(s, top)));
  CHECK(empty_sieve(s, top).members.empty());
  CHECK_FALSE(is_principal(s, empty_sieve(s, top)));
  CHECK(is_principal(s, principal_sieve(s, t)));

  const auto low = make_sieve(s, top, {mid, t});
  CHECK(low.contains(mid));
  CHECK_FALSE(low.contains(top));
  CHECK(make_sieve(s, top, {t, mid}).members == low.members);
  CHECK_THROWS_AS(make_sieve(s, top, {mid}), ValidationError);
  CHECK_THROWS_AS(make_sieve(s, mid, {top, mid, t}), ValidationError);

  CHECK(pullback(s, low, mid) == principal_sieve(s, mid));
  const auto other = poset.require(blocks<E>(3, {{1}, {0, 2}}));
  CHECK(pullback(s, low, other).members == std::vector<std::size_t>{t});
  CHECK(pullback(s, principal_sieve(s, top), other) == principal_sieve(s, other));
  CHECK_THROWS_AS(pullback(s, principal_sieve(s, mid), top), OrderError);
}

TEST_CASE_TEMPLATE("thresholds", B, E, F) {
  using Real = typename B::Real;
  CHECK_NOTHROW(require_threshold<B>(Real(1)));
  CHECK_NOTHROW(require_threshold<B>(B::parse_real("0.3")));
  CHECK_THROWS_AS(require_threshold<B>(Real(0)), ValidationError);
  CHECK_THROWS_AS(require_threshold<B>(B::parse_real("1.5")), ValidationError);
  CHECK_THROWS_AS(require_threshold<B>(B::parse_real("-0.5")), ValidationError);
}

TEST_CASE_TEMPLATE("state valuations on the diagonal poset", B, E, F) {
  const auto poset = fx::diag3_poset<B>();
  const auto& s = poset.shape();
  const auto top = poset.require(blocks<B>(3, {{0}, {1}, {2}}));
  const auto rho = fx::diag_state<B>({"0.5", "0.3", "0.2"});

  CHECK(nu_rho(rho, {top, 1}, poset).members == std::vector<std::size_t>{s.trivial()});
  CHECK(nu_rho(rho, {top, 0}, poset).members.empty());
  CHECK(is_principal(s, nu_rho(rho, {top, 7}, poset)));

  const auto pure = DensityMatrix<B>::basis_state(3, 0);
  CHECK(is_principal(s, nu_rho(pure, {top, 1}, poset)));
  const auto mid = poset.require(blocks<B>(3, {{1}, {0, 2}}));
  std::vector<std::size_t> expected{mid, s.trivial()};
  std::sort(expected.begin(), expected.end());
  CHECK(nu_rho(pure, {top, 4}, poset).members == expected);

  const auto half = B::parse_real("0.5");
  const auto r = nu_rho_r(rho, half, {top, 1}, poset);
  CHECK(r.members == reference_sieve(poset, rho, half, top, 1));
  CHECK(is_principal(s, r));
}

TEST_CASE_TEMPLATE("state valuations agree with the matrix reference", B, E, F) {
  using Real = typename B::Real;
  Rng rng(31);
  const std::vector<Real> thresholds{Real(1), B::parse_real("0.8"), B::parse_real("0.6"), B::parse_real("0.3")};
  for (int trial = 0; trial < 8; ++trial) {
    const auto poset = random_poset<B>(2 + trial % 3, rng);
    const auto rho = random_density<B>(poset.dim(), rng);
    for (const auto& r : thresholds) {
      const auto table = valuation_table(rho, poset, r);
      for (std::size_t v = 0; v < poset.size(); ++v) {
        for (const auto& p : lattice(poset.shape(), v)) {
          const auto expected = reference_sieve(poset, rho, r, v, p.mask);
          CHECK(table.at(v, p.mask).members == expected);
          CHECK(nu_rho_r(rho, r, p, poset).members == expected);
        }
      }
    }
  }
}

TEST_CASE_TEMPLATE("state valuations satisfy the axioms above one half", B, E, F) {
  using Real = typename B::Real;
  Rng rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    const auto poset = random_poset<B>(2 + trial % 3, rng);
    const auto rho = random_density<B>(poset.dim(), rng);
    for (const auto& r : {Real(1), B::parse_real("0.8"), B::parse_real("0.6")}) {
      const auto table = valuation_table(rho, poset, r);
      const auto rs = check_valuation(table);
      REQUIRE(rs.size() == 5);
      for (const auto& p : rs) CHECK_MESSAGE(p.holds(), p.name);
      CHECK(natural_transformation_check(table).holds());
    }
  }
}

TEST_CASE_TEMPLATE("a low threshold breaks exclusivity", B, E, F) {
  const auto poset = build_poset<B>(3, {blocks<B>(3, {{0}, {1}, {2}})}, false);
  const auto top = poset.require(blocks<B>(3, {{0}, {1}, {2}}));
  const auto rho = fx::diag_state<B>({"0.4", "0.4", "0.2"});
  const auto table = valuation_table(rho, poset, B::parse_real("0.3"));
  const auto rs = check_valuation(table);
  const auto& ex = find_property(rs, "exclusivity");
  CHECK_FALSE(ex.holds());
  REQUIRE(ex.first.has_value());
  CHECK(ex.first->stage == std::optional<std::size_t>(top));
  CHECK(ex.first->p == std::optional<AtomMask>(1));
  CHECK(ex.first->q == std::optional<AtomMask>(2));
  for (const char* name : {"functional_composition", "null", "monotonicity", "unit"}) {
    CHECK(find_property(rs, name).holds());
  }
  CHECK(all_hold(check_valuation(table, {.require_exclusivity = false})));
  CHECK(natural_transformation_check(table).holds());
}

TEST_CASE("mutated tables are rejected") {
  const auto poset = fx::diag3_poset<E>();
  const auto& s = poset.shape();
  const auto top = poset.require(blocks<E>(3, {{0}, {1}, {2}}));
  const auto rho = fx::diag_state<E>({"0.5", "0.3", "0.2"});
  const auto good = valuation_table(rho, poset, QuadraticNumber(1));

  auto null = good;
  null.values[top][0] = principal_sieve(s, top);
  CHECK_FALSE(find_property(check_valuation(null), "null").holds());

  auto unit = good;
  unit.values[top][7] = empty_sieve(s, top);
  CHECK_FALSE(find_property(check_valuation(unit), "unit").holds());
  CHECK_FALSE(find_property(check_valuation(unit), "monotonicity").holds());
  CHECK(find_property(check_valuation(unit, {.require_exclusivity = true, .require_unit = false}), "unit").holds());

  auto shifted = good;
  shifted.values[top][1] = make_sieve(s, top, {s.trivial(), poset.require(blocks<E>(3, {{0}, {1, 2}}))});
  CHECK_FALSE(find_property(check_valuation(shifted), "functional_composition").holds());
  CHECK_FALSE(natural_transformation_check(shifted).holds());
}

TEST_CASE("naturality agrees with functional composition under random corruption") {
  Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const auto poset = random_poset<E>(2 + trial % 3, rng);
    const auto& s = poset.shape();
    auto table = valuation_table(random_density<E>(poset.dim(), rng), poset, QuadraticNumber(1));
    std::uniform_int_distribution<std::size_t> stage(0, s.size() - 1);
    const std::size_t v = stage(rng);
    std::uniform_int_distribution<AtomMask> mask(0, full_mask(s.atoms(v)));
    const AtomMask p = mask(rng);
    const auto& cur = table.at(v, p);
    table.values[v][p] = is_principal(s, cur) ? empty_sieve(s, v) : principal_sieve(s, v);
    CHECK(natural_transformation_check(table).holds() ==
          find_property(check_valuation(table), "functional_composition").holds());
  }
}

TEST_CASE_TEMPLATE("valuations shrink as the threshold rises", B, E, F) {
  Rng rng(43);
  const std::vector<const char*> rs{"0.2", "0.4", "0.6", "0.8", "1"};
  for (int trial = 0; trial < 6; ++trial) {
    const auto poset = random_poset<B>(3, rng);
    const auto rho = random_density<B>(3, rng);
    for (std::size_t k = 0; k + 1 < rs.size(); ++k) {
      const auto lo = valuation_table(rho, poset, B::parse_real(rs[k]));
      const auto hi = valuation_table(rho, poset, B::parse_real(rs[k + 1]));
      for (std::size_t v = 0; v < poset.size(); ++v) {
        for (const auto& p : lattice(poset.shape(), v)) {
          const auto& a = hi.at(v, p.mask).members;
          const auto& b = lo.at(v, p.mask).members;
          CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
        }
      }
    }
  }
}
