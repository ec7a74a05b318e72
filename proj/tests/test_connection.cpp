#include "doctest.h"

#include "generators.hpp"
#include "riccitype/errors.hpp"
#include "riccitype/connection.hpp"

using namespace riccitype;
using namespace riccitype::testing;

namespace {

// Loop oracle for the five derivative kinds, written straight from the
// defining sums: upper slots use L^i_{αk} (kinds 1, 3) or L^i_{kα} (2, 4);
// lower slots use L^α_{jk} (1, 4) or L^α_{kj} (2, 3); kind 0 uses the
// symmetric part with either order.
TensorField naive_derivative(const TensorField& L, const TensorField& a, int kind) {
  const std::size_t n = a.dim();
  const std::size_t p = a.valence().upper;
  const std::size_t q = a.valence().lower;
  auto coeff = [&](std::size_t i, std::size_t j, std::size_t k) {
    if (kind == 0) return (L(i, j, k) + L(i, k, j)) * make_rational(1, 2);
    return L(i, j, k);
  };
  const bool upper_alpha_first = kind == 0 || kind == 1 || kind == 3;
  const bool lower_slot_first = kind == 0 || kind == 1 || kind == 4;
  return TensorField::generate(n, {p, q + 1}, [&](const MultiIndex& full) {
    const std::size_t k = full.back();
    const MultiIndex idx(full.begin(), full.end() - 1);
    Poly out = a.at(idx).diff(k);
    for (std::size_t u = 0; u < p; ++u)
      for (std::size_t al = 0; al < n; ++al) {
        MultiIndex m = idx;
        m[u] = al;
        out += (upper_alpha_first ? coeff(idx[u], al, k) : coeff(idx[u], k, al)) * a.at(m);
      }
    for (std::size_t v = 0; v < q; ++v)
      for (std::size_t al = 0; al < n; ++al) {
        MultiIndex m = idx;
        m[p + v] = al;
        out -= (lower_slot_first ? coeff(al, idx[p + v], k) : coeff(al, k, idx[p + v])) * a.at(m);
      }
    return out;
  });
}

TensorField naive_curvature(const Connection& c) {
  const auto& S = c.symmetric();
  const std::size_t n = c.dim();
  return TensorField::generate(n, {1, 3}, [&](const MultiIndex& i) {
    Poly r = S(i[0], i[1], i[2]).diff(i[3]) - S(i[0], i[1], i[3]).diff(i[2]);
    for (std::size_t al = 0; al < n; ++al)
      r += S(al, i[1], i[2]) * S(i[0], al, i[3]) - S(al, i[1], i[3]) * S(i[0], al, i[2]);
    return r;
  });
}

Connection single_entry_connection() {
  // N=2, constant, only L^1_{12} = 1.
  TensorField L(2, {1, 2});
  const MultiIndex i{0, 0, 1};
  L.at(i) = c(2, 1);
  return Connection(L);
}

}  // namespace

TEST_CASE("symmetric part and torsion") {
  TensorField L(2, {1, 2});
  const MultiIndex i{0, 0, 1};
  L.at(i) = x(2, 0);
  const Connection conn(L);
  CHECK(conn.symmetric()(0, 0, 1) == x(2, 0) * make_rational(1, 2));
  CHECK(conn.symmetric()(0, 1, 0) == x(2, 0) * make_rational(1, 2));
  CHECK(conn.torsion()(0, 0, 1) == x(2, 0) * make_rational(1, 2));
  CHECK(conn.torsion()(0, 1, 0) == x(2, 0) * make_rational(-1, 2));

  std::mt19937_64 rng(11);
  for (int t = 0; t < 10; ++t) {
    const auto c3 = small_connection(rng, 3);
    CHECK(c3.symmetric() + c3.torsion() == c3.coefficients());
    CHECK(symmetric_part(c3.symmetric()) == c3.symmetric());
    CHECK(torsion(c3.symmetric()).is_zero());
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b)
        for (std::size_t k = 0; k < 3; ++k) {
          CHECK(c3.symmetric()(a, b, k) == c3.symmetric()(a, k, b));
          CHECK(c3.torsion()(a, b, k) == -c3.torsion()(a, k, b));
        }
  }
  const auto sym = Connection(conn.symmetric());
  CHECK(sym.symmetric() == conn.symmetric());
  CHECK(sym.is_torsion_free());
  CHECK_THROWS_AS(Connection(TensorField(2, {1, 1})), ShapeError);
}

TEST_CASE("kind coefficient table") {
  const int c[5] = {0, 1, -1, 1, -1};
  const int d[5] = {0, -1, 1, 1, -1};
  for (int z = 0; z < 5; ++z) {
    CHECK(KindCoefficients::c(Kind(z)) == c[z]);
    CHECK(KindCoefficients::d(Kind(z)) == d[z]);
  }
  CHECK_THROWS_AS(Kind(5), ParameterError);
  CHECK_THROWS_AS(Kind(-1), ParameterError);
}

TEST_CASE("derivative kinds on a hand-expanded example") {
  // Constant field u = (0, 1): u^1 for kind 1 is Σ L^1_{α k} u^α = L^1_{2k} = 0;
  // for kind 2 it is L^1_{k2}, which is 1 at k=1; kind 0 gives the
  // symmetric part 1/2 there.
  const auto conn = single_entry_connection();
  const TensorField u(2, {1, 0}, {Poly(2), c(2, 1)});
  CHECK(cov_deriv(conn, u, Kind(1))(0, 0).is_zero());
  CHECK(cov_deriv(conn, u, Kind(2))(0, 0) == c(2, 1));
  CHECK(cov_deriv(conn, u, Kind(0))(0, 0) == c(2, 1, 2));
  CHECK(cov_deriv(conn, u, Kind(3))(0, 0).is_zero());
  CHECK(cov_deriv(conn, u, Kind(4))(0, 0) == c(2, 1));
}

TEST_CASE("derivative kinds match the loop oracle; direct equals unified") {
  std::mt19937_64 rng(12);
  for (Valence v : {Valence{0, 0}, Valence{1, 0}, Valence{0, 1}, Valence{1, 1}, Valence{2, 1}, Valence{0, 2}}) {
    for (std::size_t n : {2u, 3u}) {
      const auto conn = small_connection(rng, n);
      const auto a = small_field(rng, n, v);
      for (int z = 0; z < 5; ++z) {
        CAPTURE(z);
        const auto direct = cov_deriv(conn, a, Kind(z), DerivativeMode::Direct);
        CHECK(direct == naive_derivative(conn.coefficients(), a, z));
        CHECK(direct == cov_deriv(conn, a, Kind(z), DerivativeMode::Unified));
      }
    }
  }
}

TEST_CASE("double derivatives compose the single ones") {
  std::mt19937_64 rng(13);
  const auto conn = small_connection(rng, 2);
  const auto a = small_field(rng, 2, {1, 1});
  for (int v = 0; v < 5; ++v)
    for (int w = 0; w < 5; ++w) {
      const auto expected = naive_derivative(conn.coefficients(), naive_derivative(conn.coefficients(), a, v), w);
      CHECK(double_cov_deriv(conn, a, Kind(v), Kind(w)) == expected);
      CHECK(double_cov_deriv(conn, a, Kind(v), Kind(w), DerivativeMode::Unified) == expected);
    }
}

TEST_CASE("valence-forced kind coincidences") {
  std::mt19937_64 rng(14);
  const auto conn = small_connection(rng, 3);
  const auto u = small_field(rng, 3, {1, 0});
  CHECK(cov_deriv(conn, u, Kind(1)) == cov_deriv(conn, u, Kind(3)));
  CHECK(cov_deriv(conn, u, Kind(2)) == cov_deriv(conn, u, Kind(4)));
  CHECK(cov_deriv(conn, u, Kind(1)) != cov_deriv(conn, u, Kind(2)));
  const auto w = small_field(rng, 3, {0, 1});
  CHECK(cov_deriv(conn, w, Kind(1)) == cov_deriv(conn, w, Kind(4)));
  CHECK(cov_deriv(conn, w, Kind(2)) == cov_deriv(conn, w, Kind(3)));

  const Connection sym(conn.symmetric());
  const auto a = small_field(rng, 3, {1, 1});
  for (int z = 1; z < 5; ++z) CHECK(cov_deriv(sym, a, Kind(z)) == cov_deriv(sym, a, Kind(0)));
}

TEST_CASE("curvature tensor") {
  // Constant L^1_{12} = 1: the symmetric part is 1/2 at (1;1,2) and (1;2,1),
  // so R^1_{212} = L̲^1_{21} L̲^1_{12} = 1/4 and R^1_{221} = -1/4; all other
  // components vanish.
  const auto R = curvature_R(single_entry_connection());
  for (std::size_t off = 0; off < R.size(); ++off) {
    const auto idx = R.index_of(off);
    const MultiIndex a{0, 1, 0, 1}, b{0, 1, 1, 0};
    if (idx == a)
      CHECK(R.component(off) == c(2, 1, 4));
    else if (idx == b)
      CHECK(R.component(off) == c(2, -1, 4));
    else
      CHECK(R.component(off).is_zero());
  }

  std::mt19937_64 rng(15);
  for (std::size_t n : {2u, 3u}) {
    const auto conn = small_connection(rng, n);
    const auto r = curvature_R(conn);
    CHECK(r == naive_curvature(conn));
    CHECK(swap_last_two(r) == r * Rational(-1));
    CHECK(curvature_R(Connection(TensorField(n, {1, 2}))).is_zero());
  }
}

TEST_CASE("torsion derivative and pseudotensors") {
  std::mt19937_64 rng(16);
  const auto conn = small_connection(rng, 3);
  const TensorField T = conn.torsion();
  CHECK(torsion_derivative(conn) == naive_derivative(Connection(conn.symmetric()).coefficients(), T, 0));
  const auto A = pseudotensors_A(conn);
  CHECK(A.first.valence() == Valence{1, 3});
  CHECK(A.second.valence() == Valence{1, 3});
  CHECK(A.first != A.second);

  // Without torsion the first pseudotensor is the curvature tensor.
  const Connection sym(conn.symmetric());
  CHECK(pseudotensors_A(sym).first == curvature_R(sym));
}

TEST_CASE("dimension mismatch between field and connection") {
  std::mt19937_64 rng(17);
  const auto conn = small_connection(rng, 2);
  CHECK_THROWS_AS(cov_deriv(conn, small_field(rng, 3, {1, 0}), Kind(0)), ShapeError);
}
