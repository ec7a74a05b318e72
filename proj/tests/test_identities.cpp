#include "doctest.h"

#include <memory>

#include "generators.hpp"
#include "riccitype/audit.hpp"
#include "riccitype/errors.hpp"
#include "riccitype/identities.hpp"
#include "riccitype/instance.hpp"
#include "riccitype/suite.hpp"

using namespace riccitype;
using namespace riccitype::testing;

namespace {

constexpr int kC[5] = {0, 1, -1, 1, -1};
constexpr int kD[5] = {0, -1, 1, 1, -1};

std::unique_ptr<Workspace> workspace(std::size_t dim, Valence v, std::uint64_t seed) {
  auto inst = generate_instance({dim, 2, v, seed, 5});
  return std::make_unique<Workspace>(inst.connection, inst.field);
}

std::unique_ptr<Workspace> torsion_free_workspace(std::size_t dim, Valence v, std::uint64_t seed) {
  auto inst = generate_instance({dim, 2, v, seed, 5});
  return std::make_unique<Workspace>(Connection(inst.connection.symmetric()), inst.field);
}

struct K {
  int c1, d1, w1c, w1d, c2, d2, w2c, w2d;
  explicit K(const KindTuple& k)
      : c1(kC[k.v1.value()]), d1(kD[k.v1.value()]), w1c(kC[k.w1.value()]), w1d(kD[k.w1.value()]),
        c2(kC[k.v2.value()]), d2(kD[k.v2.value()]), w2c(kC[k.w2.value()]), w2d(kD[k.w2.value()]) {}
};

// Coefficients of the first family that the exact expansion of the double
// derivatives gives; they replace the four printed quadratic-torsion
// coefficients that carry c_v(c_w+d_w) or d_v(c_w+d_w).
std::vector<Rational> exact_first_family(const KindTuple& kinds) {
  const K k(kinds);
  auto out = first_family_coefficients(kinds);
  out[8] = k.c1 * k.w1c;
  out[9] = -k.c2 * k.w2c;
  out[14] = k.d2 * k.w2d;
  out[15] = -k.d1 * k.w1d;
  return out;
}

std::vector<Rational> exact_second_family(const KindTuple& kinds, const RhoWeights& w) {
  const K k(kinds);
  auto s1 = [&](int z) { return SignPattern::alternating_sum(w.row(z)); };
  auto s2 = [&](int z) { return SignPattern::paired_sum(w.row(z)); };
  auto out = second_family_coefficients(kinds, w);
  out[8] = Rational(k.c1 * k.w1c) - Rational(k.w1c - k.c2) * s1(2);
  out[9] = Rational(-k.c2 * k.w2c) - Rational(k.c1 - k.w2c) * s1(1);
  out[14] = Rational(k.d2 * k.w2d) - Rational(k.d1 - k.w2d) * s2(3);
  out[15] = Rational(-k.d1 * k.w1d) - Rational(k.w1d - k.d2) * s2(4);
  out[16] = Rational(k.d1 * k.w1d + k.d2 * k.w2d) + Rational(k.w1d + k.w2d) * s2(5);
  return out;
}

bool touches_spurious_terms(const KindTuple& k) {
  auto big = [](Kind w) { return w.value() == 3 || w.value() == 4; };
  return (k.v1.value() != 0 && big(k.w1)) || (k.v2.value() != 0 && big(k.w2));
}

}  // namespace

TEST_CASE("kind tuples enumerate lexicographically") {
  const auto all = all_kind_tuples();
  REQUIRE(all.size() == 625);
  CHECK(all.front().to_string() == "0,0,0,0");
  CHECK(all[1].to_string() == "0,0,0,1");
  CHECK(all.back().to_string() == "4,4,4,4");
}

TEST_CASE("identity names round-trip") {
  for (IdentityId id : all_identity_ids()) CHECK(parse_identity_id(to_string(id)) == id);
  CHECK_THROWS_AS(parse_identity_id("no_such_identity"), ValidationError);
}

TEST_CASE("classical identity holds for every valence") {
  for (Valence v : {Valence{0, 0}, Valence{1, 0}, Valence{0, 1}, Valence{1, 1}, Valence{2, 1}, Valence{1, 2}}) {
    for (std::size_t n : {2u, 3u}) {
      auto inst = generate_instance({n, 2, v, 7, 5});
      const auto lhs = commutation_lhs(inst.connection, inst.field, {Kind(0), Kind(0), Kind(0), Kind(0)});
      CHECK(residual(lhs, ricci_kind0_rhs(inst.connection, inst.field)).is_zero);
    }
  }
}

TEST_CASE("simplified 1|m 2|n identity holds and matches the first family") {
  const KindTuple k12{Kind(1), Kind(2), Kind(1), Kind(2)};
  for (std::uint64_t seed : {1u, 2u}) {
    auto inst = generate_instance({2, 2, {1, 1}, seed, 5});
    const auto lhs = commutation_lhs(inst.connection, inst.field, k12);
    const auto rhs = ricci_12_rhs(inst.connection, inst.field);
    CHECK(residual(lhs, rhs).is_zero);
    CHECK(rhs == first_theorem_rhs(inst.connection, inst.field, k12));
  }
}

TEST_CASE("printed 1|m 1|n identity fails; the audit recovers the kind-1 formula") {
  auto ws = workspace(2, {1, 1}, 3);
  IdentityRequest req{IdentityId::RicciFirstFirst};
  const auto p = build_problem(*ws, req);
  CHECK_FALSE(residual(p.lhs, combine(p.terms, p.printed)).is_zero);

  const auto fit = make_audit_instances({1, 1}, SuiteOptions{});
  const std::vector<const Workspace*> verify{ws.get()};
  const auto audit = audit_coefficients(req, fit.pointers(), verify);
  REQUIRE(audit.status == AuditStatus::Unique);
  CHECK_FALSE(audit.printed_verified);
  REQUIRE(audit.coefficients.size() == 23);
  const int expected[23] = {1, 1, -1, 1, -1, 0, 0, 1, 1, -1, 1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -2};
  for (std::size_t t = 0; t < 23; ++t) {
    CAPTURE(audit.coefficients[t].term_id);
    if (!audit.coefficients[t].vanishes) CHECK(*audit.coefficients[t].fitted == expected[t]);
  }

  std::vector<Rational> fitted(expected, expected + 23);
  CHECK(residual(p.lhs, combine(p.terms, fitted)).is_zero);
}

TEST_CASE("torsion-free collapse of the 1|m 2|n identity") {
  auto inst = generate_instance({2, 2, {1, 1}, 4, 5});
  const Connection sym(inst.connection.symmetric());
  CHECK(ricci_12_rhs(sym, inst.field) == ricci_kind0_rhs(sym, inst.field));
  // The printed second pseudotensor keeps a squared symmetric-part term,
  // so the 1|m 1|n form does not reduce to the classical one.
  CHECK(ricci_11_rhs(sym, inst.field) != ricci_kind0_rhs(sym, inst.field));
}

TEST_CASE("first family: printed form fails exactly on the spurious-term tuples") {
  auto ws = workspace(2, {1, 1}, 5);
  const auto basis = first_family_basis(*ws);
  std::size_t failing = 0;
  for (const auto& k : all_kind_tuples()) {
    CAPTURE(k.to_string());
    const auto lhs = commutation_lhs(*ws, k);
    const bool printed_ok = (lhs - combine(basis, first_family_coefficients(k))).is_zero();
    CHECK(printed_ok == !touches_spurious_terms(k));
    failing += !printed_ok;
    CHECK((lhs - combine(basis, exact_first_family(k))).is_zero());
  }
  CHECK(failing == 336);
}

TEST_CASE("first family antisymmetry under exchanging the two derivatives") {
  // Swapping (v1,w1) with (v2,w2) negates the LHS read at (n,m).
  auto ws = workspace(2, {1, 1}, 6);
  std::mt19937_64 rng(21);
  const auto all = all_kind_tuples();
  for (int t = 0; t < 25; ++t) {
    const auto k = all[rng() % all.size()];
    const KindTuple r{k.v2, k.w2, k.v1, k.w1};
    CHECK(commutation_lhs(*ws, r) == swap_last_two(commutation_lhs(*ws, k)) * Rational(-1));
  }
}

TEST_CASE("first family collapses with zero torsion") {
  auto ws = torsion_free_workspace(2, {1, 1}, 8);
  const auto classical = ricci_kind0_rhs(ws->connection(), ws->field());
  for (const auto& k : {KindTuple{Kind(1), Kind(3), Kind(2), Kind(4)}, KindTuple{Kind(4), Kind(4), Kind(0), Kind(3)}}) {
    CHECK(first_theorem_rhs(ws->connection(), ws->field(), k) == classical);
    CHECK(commutation_lhs(*ws, k) == classical);
  }
}

TEST_CASE("second family with the exact coefficients verifies on random weights") {
  auto ws = workspace(2, {1, 1}, 9);
  std::mt19937_64 rng(22);
  const auto all = all_kind_tuples();
  std::size_t printed_ok = 0, total = 0;
  for (std::uint64_t draw = 0; draw < 4; ++draw) {
    const auto w = draw_weights(1000 + draw);
    const auto basis = second_family_basis(*ws, w);
    for (int t = 0; t < 6; ++t) {
      const auto k = all[rng() % all.size()];
      CAPTURE(k.to_string());
      const auto lhs = commutation_lhs(*ws, k);
      CHECK((lhs - combine(basis, exact_second_family(k, w))).is_zero());
      printed_ok += (lhs - combine(basis, second_family_coefficients(k, w))).is_zero();
      ++total;
    }
  }
  CHECK(printed_ok < total);
}

TEST_CASE("second family with kind-0 weights reduces to the first family") {
  auto ws = workspace(2, {1, 1}, 10);
  const RhoWeights w;  // every row on kind 0: all sign sums vanish
  const KindTuple k{Kind(2), Kind(1), Kind(0), Kind(2)};
  CHECK(combine(second_family_basis(*ws, w), second_family_coefficients(k, w)) ==
        combine(first_family_basis(*ws), first_family_coefficients(k)));
}

TEST_CASE("proof expansions: X, Y, Z, U verify; V needs a plus sign on its last term") {
  auto ws = workspace(2, {1, 1}, 11);
  for (std::uint64_t draw = 0; draw < 3; ++draw) {
    const auto w = draw_weights(2000 + draw);
    for (IdentityId id : {IdentityId::ProofX, IdentityId::ProofY, IdentityId::ProofZ, IdentityId::ProofU}) {
      CAPTURE(to_string(id));
      CHECK((proof_lhs(*ws, id, w) - combine(proof_basis(*ws, id), proof_coefficients(id, w))).is_zero());
    }
    const auto lhs = proof_lhs(*ws, IdentityId::ProofV, w);
    const auto basis = proof_basis(*ws, IdentityId::ProofV);
    auto coeffs = proof_coefficients(IdentityId::ProofV, w);
    REQUIRE(coeffs.size() == 3);
    const bool printed_ok = (lhs - combine(basis, coeffs)).is_zero();
    coeffs[2] = SignPattern::paired_sum(w.row(5));
    CHECK((lhs - combine(basis, coeffs)).is_zero());
    if (coeffs[2] != 0) CHECK_FALSE(printed_ok);
  }
}

TEST_CASE("weights validation") {
  RhoWeights::Row good{Rational(1), Rational(0), Rational(0), Rational(0), Rational(0)};
  RhoWeights::Row bad{make_rational(1, 2), Rational(0), Rational(0), Rational(0), Rational(0)};
  CHECK_NOTHROW(RhoWeights({good, good, good, good, good}));
  CHECK_THROWS_AS(RhoWeights({good, good, bad, good, good}), ValidationError);
  CHECK(RhoWeights::concentrated(Kind(3)).at(2, 3) == 1);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto w = draw_weights(s);
    for (int z = 1; z <= 5; ++z) {
      Rational sum(0);
      for (int k = 0; k < 5; ++k) sum += w.at(z, k);
      CHECK(sum == 1);
    }
  }
}

TEST_CASE("sign patterns") {
  const int alternating[4] = {1, -1, 1, -1};
  const int paired[4] = {1, -1, -1, 1};
  for (int k = 1; k <= 4; ++k) {
    CHECK(SignPattern::alternating(k) == alternating[k - 1]);
    CHECK(SignPattern::paired(k) == paired[k - 1]);
  }
  const RhoWeights::Row row{make_rational(1, 5), make_rational(2, 5), Rational(0), make_rational(-1, 5),
                            make_rational(3, 5)};
  CHECK(SignPattern::alternating_sum(row) == make_rational(2 - 1 - 3, 5));
  CHECK(SignPattern::paired_sum(row) == make_rational(2 + 1 + 3, 5));
}

TEST_CASE("restricted supports") {
  CHECK(admissible_supports(RestrictedMode::ThreeKinds).size() == 4);
  CHECK(admissible_supports(RestrictedMode::TwoKinds).size() == 4);
  CHECK_THROWS_AS(validate(RestrictedSupport{RestrictedMode::TwoKinds, {0, 1, 2}}), ValidationError);
  CHECK_THROWS_AS(validate(RestrictedSupport{RestrictedMode::ThreeKinds, {0, 1, 2}}), ValidationError);
  CHECK_THROWS_AS(validate(RestrictedSupport{RestrictedMode::ThreeKinds, {1, 2}}), ValidationError);
  CHECK_NOTHROW(validate(RestrictedSupport{RestrictedMode::TwoKinds, {0, 2, 4}}));

  const RestrictedSupport s{RestrictedMode::ThreeKinds, {1, 2, 4}};
  std::array<std::vector<Rational>, 5> vals;
  vals.fill({make_rational(1, 2), make_rational(1, 4), make_rational(1, 4)});
  const auto w = restricted_weights(s, vals);
  CHECK(w.at(1, 0) == 0);
  CHECK(w.at(1, 3) == 0);
  CHECK(w.at(1, 4) == make_rational(1, 4));
  vals[2] = {Rational(1), Rational(1), Rational(0)};
  CHECK_THROWS_AS(restricted_weights(s, vals), ValidationError);
}

TEST_CASE("restricted coefficients agree with the second family on their support") {
  // The explicit sign rules reproduce the general sign sums; the two-kind
  // form differs only by the printed sign of d_{v2}(c_{w2}+d_{w2}) in q2.
  const auto all = all_kind_tuples();
  std::mt19937_64 rng(23);
  for (RestrictedMode mode : {RestrictedMode::ThreeKinds, RestrictedMode::TwoKinds}) {
    for (const auto& s : admissible_supports(mode)) {
      const auto w = draw_restricted_weights(77, s);
      for (int t = 0; t < 5; ++t) {
        const auto k = all[rng() % all.size()];
        const K kv(k);
        auto expect = second_family_coefficients(k, w);
        if (mode == RestrictedMode::TwoKinds) expect[15] -= Rational(2 * kv.d2 * (kv.w2c + kv.w2d));
        CHECK(restricted_coefficients(k, w, s) == expect);
      }
    }
  }
  const RestrictedSupport s{RestrictedMode::ThreeKinds, {1, 2, 3}};
  CHECK_THROWS_AS(restricted_coefficients(all[0], draw_weights(1), s), ValidationError);
}

TEST_CASE("general identity: (1,1) basis matches the first family term for term") {
  auto ws = workspace(2, {1, 1}, 12);
  const auto general = general_family_basis(*ws);
  const auto first = first_family_basis(*ws);
  REQUIRE(general.size() >= first.size());
  for (std::size_t t = 0; t < first.size(); ++t) CHECK(general[t].value == first[t].value);
  for (std::size_t t = first.size(); t < general.size(); ++t) CHECK(general[t].value.is_zero());
  const KindTuple k{Kind(3), Kind(1), Kind(4), Kind(2)};
  CHECK(general_theorem_rhs(ws->connection(), ws->field(), k) == first_theorem_rhs(ws->connection(), ws->field(), k));
}

TEST_CASE("general identity: difference reading verifies off the spurious tuples") {
  for (Valence v : {Valence{2, 1}, Valence{1, 2}}) {
    auto ws = workspace(2, v, 13);
    const auto basis = general_family_basis(*ws);
    std::mt19937_64 rng(24);
    const auto all = all_kind_tuples();
    for (int t = 0; t < 30; ++t) {
      const auto k = all[rng() % all.size()];
      CAPTURE(k.to_string());
      const auto lhs = commutation_lhs(*ws, k);
      const bool ok = (lhs - combine(basis, general_family_coefficients(k))).is_zero();
      if (!touches_spurious_terms(k)) CHECK(ok);
    }
    const KindTuple k{Kind(1), Kind(1), Kind(1), Kind(1)};
    const auto lhs = commutation_lhs(*ws, k);
    CHECK((lhs - combine(basis, general_family_coefficients(k, ZReading::Difference))).is_zero());
    CHECK_FALSE((lhs - combine(basis, general_family_coefficients(k, ZReading::FirstOnly))).is_zero());
  }
}

TEST_CASE("general identity on scalars holds for every tuple") {
  auto ws = workspace(2, {0, 0}, 14);
  const auto basis = general_family_basis(*ws);
  for (const auto& k : all_kind_tuples()) CHECK((commutation_lhs(*ws, k) - combine(basis, general_family_coefficients(k))).is_zero());
}

TEST_CASE("shape errors") {
  auto ws = workspace(2, {2, 1}, 15);
  CHECK_THROWS_AS(build_problem(*ws, IdentityRequest{IdentityId::FirstFamily}), ShapeError);
  CHECK_THROWS_AS(residual(TensorField(2, {1, 3}), TensorField(2, {1, 2})), ShapeError);
  std::vector<Term> terms;
  terms.push_back({"t", "t", TensorField(2, {1, 1})});
  const std::vector<Rational> two{Rational(1), Rational(1)};
  CHECK_THROWS(combine(terms, two));
}

TEST_CASE("restricted request needs a matching support") {
  auto ws = workspace(2, {1, 1}, 16);
  IdentityRequest r{IdentityId::RestrictedThree};
  CHECK_THROWS_AS(printed_coefficients(r), ValidationError);
  r.support = RestrictedSupport{RestrictedMode::TwoKinds, {0, 1, 3}};
  CHECK_THROWS_AS(printed_coefficients(r), ValidationError);
}

TEST_CASE("typo readings are listed") {
  CHECK(typo_readings().size() == 5);
  for (const auto& t : typo_readings()) {
    CHECK_FALSE(t.location.empty());
    CHECK(t.printed != t.reading);
  }
}
