#include "doctest.h"

#include "generators.hpp"
#include "riccitype/errors.hpp"
#include "riccitype/poly.hpp"

using namespace riccitype;
using namespace riccitype::testing;

TEST_CASE("rational canonical form and parsing") {
  CHECK(make_rational(10, -4) == make_rational(-5, 2));
  CHECK(make_rational(10, -4).get_den() == 2);
  CHECK(to_string(make_rational(6, 3)) == "2");
  CHECK(to_string(make_rational(-3, 9)) == "-1/3");
  CHECK(parse_rational("-14/21") == make_rational(-2, 3));
  CHECK(parse_rational("7") == 7);
  CHECK_THROWS_AS(make_rational(1, 0), ParameterError);
  CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
  CHECK_THROWS_AS(parse_rational("abc"), ValidationError);
}

TEST_CASE("arithmetic examples") {
  const std::size_t n = 2;
  CHECK((x(n, 0) - x(n, 0)).is_zero());
  CHECK((x(n, 0) + x(n, 0) * Rational(-1)).is_zero());
  CHECK((x(n, 0) + c(n, 1)) * (x(n, 0) - c(n, 1)) == x(n, 0) * x(n, 0) - c(n, 1));
  CHECK((x(n, 0) * x(n, 1) * Rational(2)) * make_rational(3, 2) == x(n, 0) * x(n, 1) * Rational(3));
  CHECK(Poly(n).degree() == -1);
  CHECK((x(n, 0) * x(n, 0) * x(n, 1)).degree() == 3);
}

TEST_CASE("non-canonical inputs are normalised") {
  // gmpxx leaves mpq_class(5, 5) unreduced; the constructors must not.
  CHECK(Poly(1, Rational(5, 5)) == Poly(1, Rational(1)));
  CHECK(Poly::monomial(2, {1, 0}, Rational(4, 2)) == x(2, 0) * Rational(2));
  const auto p = Poly::from_terms(2, {{{1, 0}, Rational(1)}, {{0, 1}, Rational(0)}, {{1, 0}, Rational(-1)}});
  CHECK(p.is_zero());
  const auto q = Poly::from_terms(2, {{{0, 1}, Rational(1)}, {{1, 0}, Rational(2)}, {{0, 1}, Rational(2)}});
  CHECK(q == x(2, 0) * Rational(2) + x(2, 1) * Rational(3));
}

TEST_CASE("differentiation examples") {
  const std::size_t n = 2;
  CHECK((x(n, 0) * x(n, 0) * x(n, 1)).diff(0) == x(n, 0) * x(n, 1) * Rational(2));
  CHECK(c(n, 7).diff(1).is_zero());
  CHECK((x(n, 0) + x(n, 1) * x(n, 1) * x(n, 1)).diff(1) == x(n, 1) * x(n, 1) * Rational(3));
  CHECK_THROWS_AS(x(n, 0).diff(2), IndexError);
}

TEST_CASE("evaluation examples") {
  const std::vector<Rational> two{Rational(2)};
  CHECK((x(1, 0) * x(1, 0) - c(1, 1)).eval(two) == 3);
  CHECK(Poly(3).eval(std::vector<Rational>(3, Rational(9))) == 0);
  const std::vector<Rational> pt{make_rational(1, 2), Rational(4)};
  CHECK((x(2, 0) * x(2, 1)).eval(pt) == 2);
  CHECK_THROWS_AS(x(2, 0).eval(two), DimensionError);
}

TEST_CASE("variable-count mismatch is rejected") {
  CHECK_THROWS_AS(x(2, 0) + x(3, 0), DimensionError);
  CHECK_THROWS_AS(x(2, 0) * x(3, 0), DimensionError);
  CHECK_THROWS_AS(Poly::monomial(2, {1, 0, 0}, Rational(1)), DimensionError);
}

TEST_CASE("ring axioms, Leibniz rule and evaluation homomorphism on random polynomials") {
  std::mt19937_64 rng(20261014);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const Poly p = small_poly(rng, n), q = small_poly(rng, n), r = small_poly(rng, n);
    CAPTURE(p.to_string());
    CAPTURE(q.to_string());
    CHECK(p + q == q + p);
    CHECK((p + q) + r == p + (q + r));
    CHECK(p * q == q * p);
    CHECK((p * q) * r == p * (q * r));
    CHECK(p * (q + r) == p * q + p * r);
    CHECK((p - p).is_zero());
    Poly acc = p;
    acc.add_scaled(q, make_rational(-3, 2));
    CHECK(acc == p - q * make_rational(3, 2));

    for (std::size_t k = 0; k < n; ++k) {
      CHECK((p * q).diff(k) == p.diff(k) * q + p * q.diff(k));
      for (std::size_t l = 0; l < n; ++l) CHECK(p.diff(k).diff(l) == p.diff(l).diff(k));
    }
    const auto pt = small_point(rng, n);
    CHECK((p * q).eval(pt) == p.eval(pt) * q.eval(pt));
    CHECK((p + q).eval(pt) == p.eval(pt) + q.eval(pt));
  }
}

TEST_CASE("terms stay sorted and free of zeros") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const Poly p = small_poly(rng, 3) * small_poly(rng, 3) - small_poly(rng, 3);
    const auto& t = p.terms();
    for (std::size_t i = 0; i < t.size(); ++i) {
      CHECK(t[i].coeff != 0);
      CHECK(t[i].coeff.get_den() > 0);
      if (i > 0) CHECK(t[i - 1].exponents < t[i].exponents);
    }
  }
}
