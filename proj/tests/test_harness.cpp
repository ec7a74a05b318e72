#include "doctest.h"

#include <cstdlib>
#include <filesystem>

#include "generators.hpp"
#include "riccitype/errors.hpp"
#include "riccitype/instance.hpp"
#include "riccitype/serialize.hpp"
#include "riccitype/suite.hpp"

using namespace riccitype;
using namespace riccitype::testing;

TEST_CASE("instances are deterministic in their spec") {
  const InstanceSpec spec{3, 2, {1, 1}, 17, 5};
  const auto a = generate_instance(spec);
  const auto b = generate_instance(spec);
  CHECK(a.connection.coefficients() == b.connection.coefficients());
  CHECK(a.field == b.field);

  auto other = spec;
  other.seed = 18;
  CHECK(generate_instance(other).connection.coefficients() != a.connection.coefficients());

  // The connection ignores the field valence.
  auto vec = spec;
  vec.valence = {1, 0};
  CHECK(generate_instance(vec).connection.coefficients() == a.connection.coefficients());
  CHECK(generate_field(vec).valence() == Valence{1, 0});
}

TEST_CASE("instance coefficients respect degree and bound") {
  const auto inst = generate_instance({2, 2, {1, 1}, 5, 3});
  for (std::size_t off = 0; off < inst.connection.coefficients().size(); ++off) {
    const Poly& p = inst.connection.coefficients().component(off);
    CHECK(p.degree() <= 2);
    for (const auto& t : p.terms()) {
      CHECK(abs(t.coeff.get_num()) <= 3);
      CHECK(t.coeff.get_den() <= 3);
    }
  }
  const auto flat = generate_instance({2, 0, {1, 1}, 5, 3});
  for (std::size_t off = 0; off < flat.connection.coefficients().size(); ++off)
    CHECK(flat.connection.coefficients().component(off).degree() <= 0);
}

TEST_CASE("instance spec validation") {
  CHECK_THROWS_AS(generate_instance({1, 2, {1, 1}, 1, 5}), ValidationError);
  CHECK_THROWS_AS(generate_instance({2, 2, {1, 1}, 1, 0}), ValidationError);
  CHECK_NOTHROW(validate(InstanceSpec{}));
}

TEST_CASE("auxiliary streams are independent of each other") {
  auto a = auxiliary_rng(42, 1);
  auto b = auxiliary_rng(42, 2);
  auto a2 = auxiliary_rng(42, 1);
  CHECK(a() != b());
  a2();
  CHECK(a() == a2());
}

TEST_CASE("integers and rationals round-trip through JSON") {
  const Integer small(-12345);
  CHECK(integer_to_json(small).is_number_integer());
  CHECK(integer_from_json(integer_to_json(small)) == small);
  const Integer big("-123456789012345678901234567890");
  CHECK(integer_to_json(big).is_string());
  CHECK(integer_from_json(integer_to_json(big)) == big);
  CHECK_THROWS_AS(integer_from_json(Json("12x")), ValidationError);
  CHECK_THROWS_AS(integer_from_json(Json(1.5)), ValidationError);

  for (const Rational& r : {make_rational(-3, 7), Rational(4), Rational(Rational(big) / Rational(Integer(97)))}) {
    CHECK(rational_from_json(rational_to_json(r)) == r);
  }
  CHECK(rational_to_json(make_rational(6, -4)) == "-3/2");
  CHECK(rational_from_json(Json(5)) == 5);
  CHECK(rational_from_json(Json{{"num", 2}, {"den", 6}}) == make_rational(1, 3));
  CHECK_THROWS_AS(rational_from_json(Json("1/0")), ValidationError);
  CHECK_THROWS_AS(rational_from_json(Json::array()), ValidationError);
}

TEST_CASE("polynomials, tensors and connections round-trip") {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 20; ++t) {
    const Poly p = small_poly(rng, 3);
    CHECK(poly_from_json(poly_to_json(p), 3) == p);
  }
  const Poly big = x(2, 0) * Rational(Rational(Integer("99999999999999999999999")) / Rational(7));
  CHECK(poly_from_json(poly_to_json(big), 2) == big);

  const auto inst = generate_instance({3, 2, {2, 1}, 52, 5});
  CHECK(tensor_from_json(tensor_to_json(inst.field)) == inst.field);
  CHECK(connection_from_json(connection_to_json(inst.connection)).coefficients() == inst.connection.coefficients());
  CHECK(spec_from_json(spec_to_json(inst.spec)) == inst.spec);
  const auto back = instance_from_json(instance_to_json(inst));
  CHECK(back.spec == inst.spec);
  CHECK(back.field == inst.field);

  const auto w = draw_weights(53);
  CHECK(weights_from_json(weights_to_json(w)) == w);
  CHECK(kinds_from_json(kinds_to_json({Kind(1), Kind(0), Kind(4), Kind(2)})) == KindTuple{Kind(1), Kind(0), Kind(4), Kind(2)});
}

TEST_CASE("malformed JSON is rejected") {
  Json bad_exponents = Json::array({Json{{"coeff_num", 1}, {"coeff_den", 1}, {"exponents", {1, 0, 0}}}});
  CHECK_THROWS_AS(poly_from_json(bad_exponents, 2), ValidationError);
  CHECK_THROWS_AS(poly_from_json(Json{{"coeff_num", 1}}, 2), ValidationError);
  CHECK_THROWS_AS(tensor_from_json(Json{{"dim", 2}, {"p", 1}, {"q", 0}, {"components", Json::array()}}), ValidationError);
  CHECK_THROWS_AS(connection_from_json(Json{{"dim", 1}, {"L", Json::array({Json::array()})}}), ValidationError);

  auto rows = weights_to_json(RhoWeights());
  rows[0][0] = "1/2";
  CHECK_THROWS_AS(weights_from_json(rows), ValidationError);
  CHECK_THROWS_AS(kinds_from_json(Json("1,2,3")), ValidationError);
  CHECK_THROWS_AS(kinds_from_json(Json("1,2,3,9")), ValidationError);
  CHECK_THROWS_AS(read_json_file("/nonexistent/riccitype.json"), ValidationError);
}

TEST_CASE("JSON files round-trip") {
  const auto path = std::filesystem::temp_directory_path() / "riccitype_test_instance.json";
  const auto inst = generate_instance({2, 1, {1, 0}, 54, 5});
  write_json_file(path, instance_to_json(inst));
  CHECK(instance_from_json(read_json_file(path)).field == inst.field);
  std::filesystem::remove(path);
}

TEST_CASE("suite names") {
  for (SuiteName s : all_suite_names()) CHECK(parse_suite_name(to_string(s)) == s);
  CHECK_THROWS_AS(parse_suite_name("everything"), ValidationError);
}

TEST_CASE("kinds suite passes and its report is byte-identical across runs") {
  SuiteOptions opts;
  opts.workers = 1;
  const auto a = run_suite(SuiteName::Kinds, opts);
  CHECK(a.ok());
  CHECK(a.count(Verdict::Failed) == 0);
  CHECK_FALSE(a.checks.empty());
  const auto ja = report_to_json(a);
  CHECK(ja["schema_version"] == kReportSchemaVersion);
  CHECK(ja["suite"] == "kinds");
  CHECK_FALSE(ja.contains("wall_time_seconds"));
  CHECK(ja["typo_readings"].size() == typo_readings().size());

  const auto b = run_suite(SuiteName::Kinds, opts);
  CHECK(report_to_json(b).dump(2) == ja.dump(2));

  opts.workers = 2;
  CHECK(report_to_json(run_suite(SuiteName::Kinds, opts)).dump(2) == ja.dump(2));

  opts.timing = true;
  CHECK(report_to_json(run_suite(SuiteName::Kinds, opts)).contains("wall_time_seconds"));
}

TEST_CASE("rank claims appear in the independence report") {
  SuiteOptions opts;
  opts.rank_seeds = 1;
  const auto r = run_suite(SuiteName::Independence, opts);
  CHECK(r.ok());
  CHECK(r.ranks.size() >= all_rank_claims().size());
  const auto j = rank_result_to_json(r.ranks.front());
  CHECK(j["claim"] == "matrix_m");
}

TEST_CASE("suite option validation") {
  SuiteOptions opts;
  opts.dim = 1;
  CHECK_THROWS_AS(run_suite(SuiteName::Kinds, opts), ValidationError);

  SuiteOptions mismatch;
  mismatch.connection = generate_connection({3, 2, {1, 1}, 1, 5});
  CHECK_THROWS_AS(run_suite(SuiteName::Kinds, mismatch), ValidationError);
}

TEST_CASE("a user connection replaces the generated one") {
  SuiteOptions opts;
  opts.connection = generate_connection({2, 1, {1, 1}, 99, 5});
  const auto r = run_suite(SuiteName::Kinds, opts);
  CHECK(r.ok());
  CHECK(report_to_json(r)["options"]["user_connection"] == true);
}

TEST_CASE("worker count from the environment") {
  ::unsetenv("RICCITYPE_WORKERS");
  CHECK(workers_from_env() == 1);
  ::setenv("RICCITYPE_WORKERS", "3", 1);
  CHECK(workers_from_env() == 3);
  ::setenv("RICCITYPE_WORKERS", "zero", 1);
  CHECK(workers_from_env() == 1);
  ::setenv("RICCITYPE_WORKERS", "-2", 1);
  CHECK(workers_from_env() == 1);
  ::unsetenv("RICCITYPE_WORKERS");
}

TEST_CASE("catalogue lists every identity") {
  CatalogueOptions opts;
  opts.audit = false;
  const auto cat = identity_catalogue(opts);
  CHECK(cat.dump() == identity_catalogue(opts).dump());
  const Json& ids = cat.contains("identities") ? cat["identities"] : cat;
  CHECK(ids.size() == all_identity_ids().size());
  for (IdentityId id : all_identity_ids()) CHECK_FALSE(identity_label(id).empty());
}
