#include <doctest.h>

#include "support/fixtures.hpp"

using namespace qctx;
using fx::E;
using fx::F;

TEST_CASE("rationals and quadratic numbers parse exactly") {
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-2/7") == Rational(-2, 7));
  CHECK(parse_rational("1.5e-3") == Rational(3, 2000));
  CHECK(parse_quadratic("1/2-3*sqrt2").to_string() == "1/2-3*sqrt2");
  CHECK(parse_quadratic("sqrt(2)") == QuadraticNumber::sqrt2());
  CHECK(QuadraticNumber::sqrt2() * QuadraticNumber::sqrt2() == QuadraticNumber(2));
  CHECK((QuadraticNumber(1) - QuadraticNumber::sqrt2()).sign() < 0);
  CHECK(QuadraticNumber(Rational(3), Rational(-2)).inverse() * QuadraticNumber(Rational(3), Rational(-2)) ==
        QuadraticNumber(1));
  CHECK_THROWS_AS(parse_rational("abc"), InputError);
}

TEST_CASE("tolerance is configurable and validated") {
  CHECK(tolerance() == kDefaultTolerance);
  {
    ScopedTolerance guard(1e-3);
    CHECK(FloatBackend::equal(1.0, 1.0005));
  }
  CHECK_FALSE(FloatBackend::equal(1.0, 1.0005));
  CHECK_THROWS_AS(set_tolerance(0.0), ValidationError);
}

TEST_CASE_TEMPLATE("spectral decomposition of simple operators", B, E, F) {
  auto id = spectral_decompose(HermitianOperator<B>::from_matrix(Matrix<B>::identity(3)));
  REQUIRE(id.size() == 1);
  CHECK(id[0].projector == Projector<B>::identity(3));

  auto d = spectral_decompose(fx::diag<B>({2, 1, 1}));
  REQUIRE(d.size() == 2);
  CHECK(B::equal(d[0].eigenvalue, typename B::Real(1)));
  CHECK(d[0].projector == fx::coord<B>(3, {1, 2}));
  CHECK(d[1].projector == fx::coord<B>(3, {0}));
}

TEST_CASE_TEMPLATE("spectral decomposition reconstructs the operator", B, E, F) {
  Matrix<B> x(2, 2);
  x(0, 1) = typename B::Scalar(1);
  x(1, 0) = typename B::Scalar(1);
  const auto a = HermitianOperator<B>::from_matrix(x);
  const auto parts = spectral_decompose(a);
  REQUIRE(parts.size() == 2);
  CHECK(B::equal(parts[0].eigenvalue, typename B::Real(-1)));
  CHECK(B::equal(parts[1].eigenvalue, typename B::Real(1)));
  Matrix<B> sum(2, 2);
  for (const auto& p : parts) sum += p.projector.matrix() * B::from_real(p.eigenvalue);
  CHECK(sum == x);
  CHECK(parts[0].projector.orthogonal_to(parts[1].projector));
  const std::vector<typename B::Scalar> plus{typename B::Scalar(1), typename B::Scalar(1)};
  CHECK(parts[1].projector == Projector<B>::from_vector(plus));
}

TEST_CASE("spectral decomposition rejects non-Hermitian input") {
  Matrix<E> m(2, 2);
  m(0, 1) = ExactComplex(1);
  CHECK_THROWS_AS(HermitianOperator<E>::from_matrix(m), ValidationError);
}

TEST_CASE("exact decomposition finds eigenvalues in Q(sqrt 2)") {
  Matrix<E> m(2, 2);
  m(0, 0) = ExactComplex(1);
  m(0, 1) = ExactComplex(1);
  m(1, 0) = ExactComplex(1);
  m(1, 1) = ExactComplex(-1);
  const auto parts = spectral_decompose(HermitianOperator<E>::from_matrix(m));
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].eigenvalue == -QuadraticNumber::sqrt2());
  CHECK(parts[1].eigenvalue == QuadraticNumber::sqrt2());
}

TEST_CASE("float decomposition merges eigenvalues closer than the tolerance") {
  const std::vector<double> v{1.0, 1.0 + 1e-12, 2.0};
  const auto parts = spectral_decompose(HermitianOperator<F>::diagonal(v));
  CHECK(parts.size() == 2);
  CHECK(parts[0].projector.rank() == 2);
}

TEST_CASE_TEMPLATE("functional calculus", B, E, F) {
  using Real = typename B::Real;
  const auto a = fx::diag<B>({0, 1, 2});
  EigenvalueFunction<B> f;
  f.set(Real(0), Real(0));
  f.set(Real(1), Real(1));
  f.set(Real(2), Real(1));
  CHECK(apply_function(a, f) == fx::diag<B>({0, 1, 1}));

  EigenvalueFunction<B> id;
  for (long x : {0, 1, 2}) id.set(Real(x), Real(x));
  CHECK(apply_function(a, id) == a);

  Matrix<B> x(2, 2);
  x(0, 1) = typename B::Scalar(1);
  x(1, 0) = typename B::Scalar(1);
  EigenvalueFunction<B> collapse;
  collapse.set(Real(-1), Real(1));
  collapse.set(Real(1), Real(1));
  CHECK(apply_function(HermitianOperator<B>::from_matrix(x), collapse).matrix() == Matrix<B>::identity(2));

  EigenvalueFunction<B> partial;
  partial.set(Real(0), Real(0));
  CHECK_THROWS_AS(apply_function(a, partial), ValidationError);
}

TEST_CASE("functional calculus composes") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto u = random_unitary<E>(3, rng);
    const auto a = HermitianOperator<E>::from_matrix(u * fx::diag<E>({trial % 3, 1, 2}).matrix() * u.adjoint());
    EigenvalueFunction<E> f;
    EigenvalueFunction<E> g;
    EigenvalueFunction<E> gf;
    std::uniform_int_distribution<long> val(-2, 2);
    for (const auto& s : spectral_decompose(a)) {
      const QuadraticNumber fx_value(val(rng));
      f.set(s.eigenvalue, fx_value);
      if (!g(fx_value)) g.set(fx_value, QuadraticNumber(val(rng)));
      gf.set(s.eigenvalue, *g(fx_value));
    }
    CHECK(apply_function(apply_function(a, f), g) == apply_function(a, gf));
  }
}

TEST_CASE_TEMPLATE("Born probabilities", B, E, F) {
  const auto rho = fx::diag_state<B>({"0.5", "0.3", "0.2"});
  CHECK(B::equal(born_probability(rho, Projector<B>::zero(3)), typename B::Real(0)));
  CHECK(B::equal(born_probability(rho, Projector<B>::identity(3)), typename B::Real(1)));
  CHECK(B::equal(born_probability(rho, fx::coord<B>(3, {0, 1})), B::parse_real("0.8")));
  CHECK_THROWS_AS(born_probability(rho, Projector<B>::identity(2)), DimensionError);
}

TEST_CASE("Born probability is monotone in the projector and affine in the state") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto r1 = random_density<E>(3, rng);
    const auto r2 = random_density<E>(3, rng);
    const auto u = random_unitary<E>(3, rng);
    const auto col = u.column(0);
    std::vector<std::vector<ExactComplex>> pair{u.column(0), u.column(1)};
    const auto p = Projector<E>::from_vector(col);
    const auto q = Projector<E>::onto_span(pair, 3);
    REQUIRE(p.leq(q));
    CHECK(born_probability(r1, p) <= born_probability(r1, q));
    const QuadraticNumber t(Rational(1, 3));
    const auto mix = DensityMatrix<E>::from_matrix(r1.matrix() * ExactComplex(t) +
                                                   r2.matrix() * ExactComplex(QuadraticNumber(1) - t));
    CHECK(born_probability(mix, q) ==
          t * born_probability(r1, q) + (QuadraticNumber(1) - t) * born_probability(r2, q));
  }
}

TEST_CASE("density matrices are validated") {
  CHECK_THROWS_AS(fx::diag_state<E>({"0.5", "0.6", "-0.1"}), ValidationError);
  CHECK_THROWS_AS(fx::diag_state<E>({"0.5", "0.3"}), ValidationError);
  Matrix<E> m = Matrix<E>::identity(2) * ExactComplex(QuadraticNumber(Rational(1, 2)));
  m(0, 1) = ExactComplex(1);
  m(1, 0) = ExactComplex(1);
  CHECK_THROWS_AS(DensityMatrix<E>::from_matrix(m), ValidationError);
}

TEST_CASE("projectors from rays are canonical") {
  const std::vector<ExactComplex> v{ExactComplex(1), ExactComplex(1)};
  const std::vector<ExactComplex> w{ExactComplex(-3), ExactComplex(-3)};
  CHECK(Projector<E>::from_vector(v).key() == Projector<E>::from_vector(w).key());
  CHECK(Projector<E>::from_vector(v).rank() == 1);
  CHECK(Projector<E>::identity(2).complement().is_zero());
}
