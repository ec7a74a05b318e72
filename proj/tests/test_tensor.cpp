#include "doctest.h"

#include "generators.hpp"
#include "riccitype/errors.hpp"
#include "riccitype/tensor.hpp"

using namespace riccitype;
using namespace riccitype::testing;

namespace {

// Direct loop form of the single correction sum, written independently of
// the library's index bookkeeping.
TensorField naive_correction(const TensorField& L, const TensorField& a, Slot slot, std::size_t k,
                             IndexOrder order) {
  const std::size_t n = a.dim();
  const std::size_t p = a.valence().upper;
  return TensorField::generate(n, a.valence(), [&](const MultiIndex& idx) {
    Poly sum(n);
    const std::size_t pos = slot.kind == SlotKind::Upper ? slot.position : p + slot.position;
    for (std::size_t alpha = 0; alpha < n; ++alpha) {
      MultiIndex moved = idx;
      moved[pos] = alpha;
      const Poly& coeff = slot.kind == SlotKind::Upper
                              ? (order == IndexOrder::SlotFirst ? L(idx[pos], alpha, k) : L(idx[pos], k, alpha))
                              : (order == IndexOrder::SlotFirst ? L(alpha, idx[pos], k) : L(alpha, k, idx[pos]));
      sum += coeff * a.at(moved);
    }
    return sum;
  });
}

}  // namespace

TEST_CASE("layout is row-major with upper indices first") {
  const TensorField t = TensorField::generate(3, {1, 2}, [](const MultiIndex& i) {
    return Poly(3, Rational(static_cast<long>(100 * i[0] + 10 * i[1] + i[2])));
  });
  CHECK(t.size() == 27);
  CHECK(t.component(0) == Poly(3, Rational(0)));
  CHECK(t.component(5) == Poly(3, Rational(12)));
  CHECK(t.component(26) == Poly(3, Rational(222)));
  const MultiIndex idx{2, 0, 1};
  CHECK(t.offset(idx) == 19);
  CHECK(t.index_of(19) == idx);
  CHECK_THROWS_AS(t(0, 0), IndexError);
  CHECK_THROWS_AS(t(3, 0, 0), IndexError);
}

TEST_CASE("componentwise arithmetic") {
  std::mt19937_64 rng(1);
  const auto a = small_field(rng, 2, {1, 1});
  const auto b = small_field(rng, 2, {1, 1});
  CHECK((a - a).is_zero());
  CHECK(a * Rational(1) == a);
  CHECK(TensorField(2, {1, 1}) + b == b);
  CHECK(a + b == b + a);
  CHECK_THROWS_AS(a + small_field(rng, 2, {2, 0}), ShapeError);
  CHECK_THROWS_AS(a + small_field(rng, 3, {1, 1}), ShapeError);
  CHECK_THROWS_AS(TensorField(2, {1, 1}, std::vector<Poly>(3, Poly(2))), ShapeError);
}

TEST_CASE("comma derivative") {
  CHECK(comma_derivative(TensorField(3, {1, 1}, std::vector<Poly>(9, c(3, 4)))).is_zero());

  const TensorField scalar(3, {0, 0}, {x(3, 0)});
  const auto d = comma_derivative(scalar);
  CHECK(d.valence() == Valence{0, 1});
  CHECK(d(0) == c(3, 1));
  CHECK(d(1).is_zero());
  CHECK(d(2).is_zero());

  std::mt19937_64 rng(2);
  const auto a = small_field(rng, 3, {1, 0}, 3);
  const auto dd = comma_derivative(comma_derivative(a));
  CHECK(swap_last_two(dd) == dd);

  const auto b = small_field(rng, 3, {1, 0}, 3);
  CHECK(comma_derivative(a + b * Rational(3)) == comma_derivative(a) + comma_derivative(b) * Rational(3));
}

TEST_CASE("single correction term, hand-expanded example") {
  // N=2, a^1 = 1, a^2 = 0, only L^1_{11} = x1. For u=1 and k=1 the sum over
  // α is L^1_{11} a^1 + L^1_{21} a^2 = x1; the i=2 component is 0.
  const std::size_t n = 2;
  TensorField L(n, {1, 2});
  const MultiIndex l111{0, 0, 0};
  L.at(l111) = x(n, 0);
  const TensorField a(n, {1, 0}, {c(n, 1), Poly(n)});
  const auto t = contract_with_connection(L, a, {SlotKind::Upper, 0}, 0, IndexOrder::SlotFirst);
  CHECK(t(0) == x(n, 0));
  CHECK(t(1).is_zero());

  CHECK(contract_with_connection(TensorField(n, {1, 2}), a, {SlotKind::Upper, 0}, 0, IndexOrder::SlotFirst).is_zero());
  CHECK_THROWS_AS(contract_with_connection(L, a, {SlotKind::Lower, 0}, 0, IndexOrder::SlotFirst), IndexError);
  CHECK_THROWS_AS(contract_with_connection(L, a, {SlotKind::Upper, 0}, 2, IndexOrder::SlotFirst), IndexError);
}

TEST_CASE("correction terms match a loop oracle for every slot and order") {
  std::mt19937_64 rng(3);
  for (Valence v : {Valence{1, 0}, Valence{0, 1}, Valence{2, 1}, Valence{1, 2}}) {
    const std::size_t n = 2 + rng() % 2;
    const auto L = small_field(rng, n, {1, 2});
    const auto a = small_field(rng, n, v);
    for (std::size_t s = 0; s < v.upper + v.lower; ++s) {
      const Slot slot = s < v.upper ? Slot{SlotKind::Upper, s} : Slot{SlotKind::Lower, s - v.upper};
      for (IndexOrder order : {IndexOrder::SlotFirst, IndexOrder::DerivFirst}) {
        const auto all = connection_correction(L, a, slot, order);
        for (std::size_t k = 0; k < n; ++k) {
          const auto single = contract_with_connection(L, a, slot, k, order);
          CHECK(single == naive_correction(L, a, slot, k, order));
          for (std::size_t off = 0; off < single.size(); ++off) {
            MultiIndex idx = single.index_of(off);
            idx.push_back(k);
            CHECK(all.at(idx) == single.component(off));
          }
        }
      }
    }
  }
}

TEST_CASE("index orders agree for symmetric coefficients; bilinearity") {
  std::mt19937_64 rng(4);
  const std::size_t n = 3;
  auto L = small_field(rng, n, {1, 2});
  const auto Ls = TensorField::generate(n, {1, 2}, [&](const MultiIndex& i) { return L(i[0], i[1], i[2]) + L(i[0], i[2], i[1]); });
  const auto a = small_field(rng, n, {1, 1});
  const auto b = small_field(rng, n, {1, 1});
  const auto M = small_field(rng, n, {1, 2});
  for (Slot slot : {Slot{SlotKind::Upper, 0}, Slot{SlotKind::Lower, 0}}) {
    CHECK(connection_correction(Ls, a, slot, IndexOrder::SlotFirst) ==
          connection_correction(Ls, a, slot, IndexOrder::DerivFirst));
    const Rational s = make_rational(-2, 3);
    CHECK(connection_correction(L, a + b * s, slot, IndexOrder::SlotFirst) ==
          connection_correction(L, a, slot, IndexOrder::SlotFirst) +
              connection_correction(L, b, slot, IndexOrder::SlotFirst) * s);
    CHECK(connection_correction(L + M * s, a, slot, IndexOrder::DerivFirst) ==
          connection_correction(L, a, slot, IndexOrder::DerivFirst) +
              connection_correction(M, a, slot, IndexOrder::DerivFirst) * s);
  }
}

TEST_CASE("swap_last_two") {
  std::mt19937_64 rng(5);
  const auto t = small_field(rng, 2, {1, 3});
  CHECK(swap_last_two(swap_last_two(t)) == t);
  const MultiIndex i{1, 0, 0, 1}, j{1, 0, 1, 0};
  CHECK(swap_last_two(t).at(i) == t.at(j));
  CHECK_THROWS_AS(swap_last_two(small_field(rng, 2, {2, 1})), ShapeError);
}
