// Python module riccitype._core. Structured results cross the boundary as
// JSON text and are decoded by the pure-Python wrapper; exact rationals go
// in and out as "p/q" strings and become fractions.Fraction on the Python side.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "riccitype/audit.hpp"
#include "riccitype/errors.hpp"
#include "riccitype/identities.hpp"
#include "riccitype/independence.hpp"
#include "riccitype/instance.hpp"
#include "riccitype/serialize.hpp"
#include "riccitype/suite.hpp"

namespace py = pybind11;
using namespace riccitype;

namespace {

KindTuple parse_kinds(const std::string& s) { return kinds_from_json(Json(s)); }

InstanceSpec make_spec(std::size_t dim, std::size_t degree, std::pair<std::size_t, std::size_t> valence,
                       std::uint64_t seed, unsigned coeff_bound) {
  InstanceSpec spec{dim, degree, {valence.first, valence.second}, seed, coeff_bound};
  validate(spec);
  return spec;
}

std::string instance_json(std::size_t dim, std::size_t degree, std::pair<std::size_t, std::size_t> valence,
                          std::uint64_t seed, unsigned coeff_bound) {
  return instance_to_json(generate_instance(make_spec(dim, degree, valence, seed, coeff_bound))).dump();
}

RhoWeights weights_arg(const std::optional<std::string>& weights) {
  return weights ? weights_from_json(Json::parse(*weights)) : RhoWeights();
}

IdentityRequest request(const std::string& identity, const std::string& kinds, const std::optional<std::string>& weights,
                        const std::optional<std::vector<int>>& support) {
  IdentityRequest r;
  r.id = parse_identity_id(identity);
  r.kinds = parse_kinds(kinds);
  r.weights = weights_arg(weights);
  if (support) {
    const RestrictedMode mode = r.id == IdentityId::RestrictedTwo ? RestrictedMode::TwoKinds : RestrictedMode::ThreeKinds;
    r.support = RestrictedSupport{mode, *support};
    validate(*r.support);
  }
  return r;
}

bool printed_identity_holds(const std::string& identity, const std::string& kinds,
                            const std::optional<std::string>& weights, const std::optional<std::vector<int>>& support,
                            std::size_t dim, std::size_t degree, std::pair<std::size_t, std::size_t> valence,
                            std::uint64_t seed, unsigned coeff_bound) {
  const auto req = request(identity, kinds, weights, support);
  const auto inst = generate_instance(make_spec(dim, degree, valence, seed, coeff_bound));
  const Workspace ws(inst.connection, inst.field);
  const auto p = build_problem(ws, req);
  return residual(p.lhs, combine(p.terms, p.printed)).is_zero;
}

std::string audit_json(const std::string& identity, const std::string& kinds, const std::optional<std::string>& weights,
                       const std::optional<std::vector<int>>& support, std::pair<std::size_t, std::size_t> valence,
                       std::uint64_t seed) {
  const auto req = request(identity, kinds, weights, support);
  SuiteOptions o;
  o.seed = seed;
  const Valence v{valence.first, valence.second};
  const auto fit = make_audit_instances(v, o);
  const auto inst = generate_instance(make_spec(2, 2, valence, seed, 5));
  const Workspace check(inst.connection, inst.field);
  const std::vector<const Workspace*> verify{&check};
  return audit_to_json(audit_coefficients(req, fit.pointers(), verify)).dump();
}

std::string run_suite_json(const std::string& suite, std::size_t dim, std::size_t degree, std::uint64_t seed,
                           unsigned coeff_bound, std::optional<std::pair<std::size_t, std::size_t>> valence,
                           std::size_t seeds, std::size_t weight_draws, std::size_t tuple_draws,
                           std::size_t restricted_draws, std::size_t rank_seeds, std::size_t workers) {
  SuiteOptions o;
  o.dim = dim;
  o.degree = degree;
  o.seed = seed;
  o.coeff_bound = coeff_bound;
  if (valence) o.valence = Valence{valence->first, valence->second};
  o.seeds = seeds;
  o.weight_draws = weight_draws;
  o.tuple_draws = tuple_draws;
  o.restricted_draws = restricted_draws;
  o.rank_seeds = rank_seeds;
  o.workers = workers;
  py::gil_scoped_release release;
  return report_to_json(run_suite(parse_suite_name(suite), o)).dump();
}

std::string rank_claim_json(const std::string& claim, std::size_t dim, std::size_t degree, std::uint64_t seed,
                            std::size_t seeds) {
  RankOptions o;
  o.dim = dim;
  o.degree = degree;
  o.seed = seed;
  o.seeds = seeds;
  return rank_result_to_json(check_rank_claim(parse_rank_claim(claim), o)).dump();
}

std::size_t rank_of(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<Rational>> m;
  for (const auto& row : rows) {
    auto& out = m.emplace_back();
    for (const auto& x : row) out.push_back(parse_rational(x));
  }
  return exact_rank(RationalMatrix::from_rows(m));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact verification of Ricci-type commutation identities for non-symmetric affine connections";
  m.attr("__version__") = kArtifactVersion;
  m.attr("generator") = kGeneratorName;

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ShapeError>(m, "ShapeError", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<IndexError>(m, "IndexError", PyExc_IndexError);
  py::register_exception<InsufficientSamplesError>(m, "InsufficientSamplesError", PyExc_RuntimeError);

  m.def("kind_coefficients", [] {
    std::vector<std::pair<int, int>> out;
    for (Kind k : all_kinds()) out.emplace_back(KindCoefficients::c(k), KindCoefficients::d(k));
    return out;
  });
  m.def("identity_ids", [] {
    std::vector<std::string> out;
    for (IdentityId id : all_identity_ids()) out.emplace_back(to_string(id));
    return out;
  });
  m.def("suite_names", [] {
    std::vector<std::string> out;
    for (SuiteName s : all_suite_names()) out.emplace_back(to_string(s));
    return out;
  });
  m.def("rank_claims", [] {
    std::vector<std::string> out;
    for (RankClaim c : all_rank_claims()) out.emplace_back(to_string(c));
    return out;
  });

  m.def("instance_json", &instance_json, py::arg("dim") = 2, py::arg("degree") = 2,
        py::arg("valence") = std::pair<std::size_t, std::size_t>{1, 1}, py::arg("seed") = 42,
        py::arg("coeff_bound") = 5);
  m.def("printed_identity_holds", &printed_identity_holds, py::arg("identity"), py::arg("kinds") = "1,2,3,4",
        py::arg("weights") = py::none(), py::arg("support") = py::none(), py::arg("dim") = 2, py::arg("degree") = 2,
        py::arg("valence") = std::pair<std::size_t, std::size_t>{1, 1}, py::arg("seed") = 42,
        py::arg("coeff_bound") = 5);
  m.def("audit_json", &audit_json, py::arg("identity"), py::arg("kinds") = "1,2,3,4", py::arg("weights") = py::none(),
        py::arg("support") = py::none(), py::arg("valence") = std::pair<std::size_t, std::size_t>{1, 1},
        py::arg("seed") = 42);
  m.def("run_suite_json", &run_suite_json, py::arg("suite"), py::arg("dim") = 2, py::arg("degree") = 2,
        py::arg("seed") = 42, py::arg("coeff_bound") = 5, py::arg("valence") = py::none(), py::arg("seeds") = 3,
        py::arg("weight_draws") = 20, py::arg("tuple_draws") = 10, py::arg("restricted_draws") = 2,
        py::arg("rank_seeds") = 5, py::arg("workers") = 1);
  m.def("rank_claim_json", &rank_claim_json, py::arg("claim"), py::arg("dim") = 2, py::arg("degree") = 2,
        py::arg("seed") = 42, py::arg("seeds") = 5);
  m.def("exact_rank", &rank_of, py::arg("rows"));
  m.def("weights_json", [](std::uint64_t seed) { return weights_to_json(draw_weights(seed)).dump(); },
        py::arg("seed"));
}
