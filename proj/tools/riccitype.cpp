// Command-line entry point: verify suites, audit identities, check rank
// claims and export the identity catalogue. Every command writes JSON.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "riccitype/errors.hpp"
#include "riccitype/suite.hpp"

namespace {

using namespace riccitype;

struct InstanceFlags {
  std::size_t dim = 2;
  std::size_t degree = 2;
  std::uint64_t seed = 42;
  unsigned coeff_bound = 5;
  std::string valence;
  std::string connection;

  void add(CLI::App* app, bool with_valence = true) {
    app->add_option("--dim", dim, "manifold dimension N (>= 2)")->capture_default_str();
    app->add_option("--degree", degree, "maximum polynomial degree")->capture_default_str();
    app->add_option("--seed", seed, "instance seed")->capture_default_str();
    app->add_option("--coeff-bound", coeff_bound, "bound on coefficient numerators and denominators")
        ->capture_default_str();
    if (with_valence) app->add_option("--valence", valence, "field valence as p,q");
    app->add_option("--connection", connection, "JSON file with a connection {dim, L} used instead of a generated one");
  }
};

Valence parse_valence(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ValidationError("valence must be written p,q");
  try {
    return {std::stoul(text.substr(0, comma)), std::stoul(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw ValidationError("valence must be written p,q");
  }
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string part = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      out.push_back(std::stoi(part));
    } catch (const std::exception&) {
      throw ValidationError("bad integer list '" + text + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

void emit(const Json& j, const std::string& out) {
  if (out.empty())
    std::cout << j.dump(2) << '\n';
  else
    write_json_file(out, j);
}

int run_verify(const InstanceFlags& f, const std::string& suite, const std::string& out, SuiteOptions o) {
  o.dim = f.dim;
  o.degree = f.degree;
  o.seed = f.seed;
  o.coeff_bound = f.coeff_bound;
  if (!f.valence.empty()) o.valence = parse_valence(f.valence);
  if (!f.connection.empty()) o.connection = connection_from_json(read_json_file(f.connection));
  const auto report = run_suite(parse_suite_name(suite), o);
  emit(report_to_json(report), out);
  std::cerr << "suite " << report.suite << ": " << report.count(Verdict::ZeroResidual) << " zero-residual, "
            << report.count(Verdict::AuditedWithCorrection) << " audited-with-correction, "
            << report.count(Verdict::Failed) << " failed, " << report.rank_failures() << " rank failures\n";
  return report.ok() ? 0 : 1;
}

struct AuditFlags {
  std::string identity;
  std::string kinds = "1,1,1,1";
  std::string weights;
  std::string support;
  std::string reading = "difference";
};

int run_audit(const InstanceFlags& f, const AuditFlags& a, const std::string& out) {
  IdentityRequest req;
  req.id = parse_identity_id(a.identity);
  req.kinds = kinds_from_json(Json(a.kinds));
  if (a.reading == "difference")
    req.reading = ZReading::Difference;
  else if (a.reading == "first")
    req.reading = ZReading::FirstOnly;
  else
    throw ValidationError("--reading must be difference or first");

  if (req.id == IdentityId::RestrictedThree || req.id == IdentityId::RestrictedTwo) {
    const auto mode = req.id == IdentityId::RestrictedThree ? RestrictedMode::ThreeKinds : RestrictedMode::TwoKinds;
    req.support = a.support.empty() ? admissible_supports(mode).front()
                                     : RestrictedSupport{mode, parse_int_list(a.support)};
    validate(*req.support);
  }
  if (!a.weights.empty()) {
    req.weights = weights_from_json(read_json_file(a.weights));
  } else if (req.support) {
    req.weights = draw_restricted_weights(f.seed, *req.support);
  } else if (req.id == IdentityId::SecondFamily || req.id >= IdentityId::ProofX) {
    req.weights = draw_weights(f.seed);
  }

  InstanceSpec spec;
  spec.dim = f.dim;
  spec.degree = f.degree;
  spec.seed = f.seed;
  spec.coeff_bound = f.coeff_bound;
  spec.valence = f.valence.empty() ? Valence{1, 1} : parse_valence(f.valence);
  Instance inst = generate_instance(spec);
  if (!f.connection.empty()) {
    inst.connection = connection_from_json(read_json_file(f.connection));
    if (inst.connection.dim() != spec.dim) throw ValidationError("--connection dimension differs from --dim");
  }
  const Workspace verify(inst.connection, inst.field);
  SuiteOptions so;
  so.degree = f.degree;
  so.seed = f.seed;
  so.coeff_bound = f.coeff_bound;
  const auto fit = make_audit_instances(spec.valence, so);
  const std::vector<const Workspace*> verify_set{&verify};
  const auto result = audit_coefficients(req, fit.pointers(), verify_set);

  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["generator"] = kGeneratorName;
  j["audit"] = audit_to_json(result);
  if (req.support || req.id == IdentityId::SecondFamily || req.id >= IdentityId::ProofX)
    j["weights"] = weights_to_json(req.weights);
  Json fits = Json::array();
  for (const auto& r : fit.records) fits.push_back(r.id);
  j["fit_instances"] = std::move(fits);
  j["verify_instance"] = instance_to_json(inst);
  emit(j, out);
  std::cerr << "audit " << a.identity << " " << req.kinds.to_string() << ": " << to_string(result.status)
            << (result.printed_verified ? ", printed coefficients verify" : ", printed coefficients do not verify")
            << ", " << result.discrepancies().size() << " discrepancies\n";
  return result.status == AuditStatus::Unique && result.printed_verified ? 0 : 1;
}

int run_rank(const InstanceFlags& f, const std::string& claim, std::size_t seeds, const std::string& out) {
  RankOptions ro;
  ro.dim = f.dim;
  ro.degree = f.degree;
  ro.seed = f.seed;
  ro.coeff_bound = f.coeff_bound;
  ro.seeds = seeds;
  std::vector<RankClaim> claims;
  if (claim == "all")
    claims = all_rank_claims();
  else
    claims = {parse_rank_claim(claim)};
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["generator"] = kGeneratorName;
  Json results = Json::array();
  bool ok = true;
  for (RankClaim c : claims) {
    const auto r = check_rank_claim(c, ro);
    ok = ok && r.passed;
    results.push_back(rank_result_to_json(r));
    std::cerr << "rank " << to_string(c) << ": expected " << r.expected << ", maximum " << r.maximum << "\n";
  }
  j["ranks"] = std::move(results);
  emit(j, out);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of Ricci-type identities for non-symmetric affine connections"};
  app.require_subcommand(1);
  std::string out;

  auto* verify = app.add_subcommand("verify", "run a verification suite and write a report");
  InstanceFlags vflags;
  vflags.add(verify);
  std::string suite = "all";
  SuiteOptions so;
  verify->add_option("--suite", suite, "kinds|first|ricci11|second|restricted|general|independence|all")
      ->capture_default_str();
  verify->add_option("--seeds", so.seeds, "instances per identity check")->capture_default_str();
  verify->add_option("--weight-draws", so.weight_draws, "weight matrices in the second suite")->capture_default_str();
  verify->add_option("--tuple-draws", so.tuple_draws, "kind tuples per weight matrix")->capture_default_str();
  verify->add_option("--restricted-draws", so.restricted_draws, "weight matrices per admissible support")
      ->capture_default_str();
  verify->add_option("--rank-seeds", so.rank_seeds, "seeds per rank claim")->capture_default_str();
  verify->add_flag("--timing", so.timing, "record wall time (makes the report run-dependent)");
  verify->add_option("--out", out, "report path (default: stdout)");

  auto* audit = app.add_subcommand("audit", "fit the coefficients of one identity and compare with the printed ones");
  InstanceFlags aflags;
  aflags.add(audit);
  AuditFlags af;
  audit->add_option("--identity", af.identity, "identity id (see the catalogue)")->required();
  audit->add_option("--kinds", af.kinds, "v1,w1,v2,w2")->capture_default_str();
  audit->add_option("--weights", af.weights, "JSON file with a 5x5 weight matrix");
  audit->add_option("--support", af.support, "restricted support, e.g. 1,2,3 or 0,1,3");
  audit->add_option("--reading", af.reading, "difference|first (general family)")->capture_default_str();
  audit->add_option("--out", out, "output path (default: stdout)");

  auto* rank = app.add_subcommand("rank", "check linear-independence claims");
  InstanceFlags rflags;
  rflags.add(rank, false);
  std::string claim = "all";
  std::size_t rank_seeds = 5;
  rank->add_option("--claim", claim, "claim id or all")->capture_default_str();
  rank->add_option("--seeds", rank_seeds, "seeds per claim")->capture_default_str();
  rank->add_option("--out", out, "output path (default: stdout)");

  auto* catalogue = app.add_subcommand("catalogue", "export every identity with its printed coefficients");
  CatalogueOptions co;
  std::string cat_kinds = "1,2,3,4";
  bool no_audit = false;
  catalogue->add_option("--seed", co.seed, "seed for instances and weights")->capture_default_str();
  catalogue->add_option("--kinds", cat_kinds, "representative kind tuple")->capture_default_str();
  catalogue->add_flag("--no-audit", no_audit, "skip the coefficient audit");
  catalogue->add_option("--out", out, "output path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) return run_verify(vflags, suite, out, so);
    if (*audit) return run_audit(aflags, af, out);
    if (*rank) {
      if (!rflags.connection.empty()) throw ValidationError("rank claims generate their own instances");
      return run_rank(rflags, claim, rank_seeds, out);
    }
    if (*catalogue) {
      co.kinds = kinds_from_json(Json(cat_kinds));
      co.audit = !no_audit;
      emit(identity_catalogue(co), out);
      return 0;
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
