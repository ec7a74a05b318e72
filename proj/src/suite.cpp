#include "riccitype/suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <thread>

#include "riccitype/errors.hpp"

namespace riccitype {

namespace {

constexpr std::uint64_t kWeightPurpose = 1;
constexpr std::uint64_t kTuplePurpose = 2;
constexpr std::uint64_t kAuditSeedOffset = 1000;
constexpr std::size_t kAuditDim = 3;
constexpr std::size_t kAuditInstances = 2;
constexpr unsigned kWeightBound = 5;

template <class F>
void parallel_for(std::size_t n, std::size_t workers, F&& f) {
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < std::min(workers, n); ++t) {
    threads.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

std::string instance_id(const InstanceSpec& s, std::string_view suffix) {
  std::string id = "n" + std::to_string(s.dim) + "-d" + std::to_string(s.degree) + "-b" +
                   std::to_string(s.coeff_bound) + "-s" + std::to_string(s.seed) + "-v" +
                   std::to_string(s.valence.upper) + std::to_string(s.valence.lower);
  if (!suffix.empty()) id += "-" + std::string(suffix);
  return id;
}

RhoWeights::Row random_row(std::mt19937_64& rng) {
  RhoWeights::Row row;
  Rational rest = 1;
  for (std::size_t k = 0; k + 1 < row.size(); ++k) {
    row[k] = random_rational(rng, kWeightBound);
    rest -= row[k];
  }
  row.back() = rest;
  return row;
}

RhoWeights random_weights(std::mt19937_64& rng) {
  std::array<RhoWeights::Row, 5> rows;
  for (auto& r : rows) r = random_row(rng);
  return RhoWeights(rows);
}

RhoWeights random_restricted_weights(std::mt19937_64& rng, const RestrictedSupport& support) {
  std::array<std::vector<Rational>, 5> values;
  for (auto& v : values) {
    Rational rest = 1;
    for (std::size_t k = 0; k + 1 < support.kinds.size(); ++k) {
      v.push_back(random_rational(rng, kWeightBound));
      rest -= v.back();
    }
    v.push_back(rest);
  }
  return restricted_weights(support, values);
}

std::vector<KindTuple> random_tuples(std::mt19937_64& rng, std::size_t count) {
  static const auto all = all_kind_tuples();
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  std::vector<KindTuple> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(all[pick(rng)]);
  return out;
}

std::vector<Correction> corrections_of(const AuditResult& a) {
  std::vector<Correction> out;
  for (const auto* c : a.discrepancies()) out.push_back({c->term_id, c->formula, c->printed, *c->fitted});
  return out;
}

class Context {
 public:
  Context(std::string suite, const SuiteOptions& options, std::size_t workers)
      : suite_(std::move(suite)), options_(options), workers_(workers) {}

  const SuiteOptions& options() const { return options_; }
  std::size_t workers() const { return workers_; }
  void set_suite(std::string suite) { suite_ = std::move(suite); }

  struct Set {
    std::vector<const Workspace*> workspaces;
    std::vector<std::string> ids;
  };

  /// The instances every printed identity is checked on.
  Set checked(Valence valence, bool torsion_free = false) {
    Set set;
    for (std::size_t i = 0; i < options_.seeds; ++i) {
      InstanceSpec spec;
      spec.dim = options_.dim;
      spec.degree = options_.degree;
      spec.valence = valence;
      spec.seed = options_.seed + i;
      spec.coeff_bound = options_.coeff_bound;
      add(set, spec, options_.connection.has_value(), torsion_free);
    }
    return set;
  }

  /// N=3 instances used to fit coefficients.
  Set audit(Valence valence) {
    Set set;
    for (std::size_t i = 0; i < kAuditInstances; ++i) {
      InstanceSpec spec;
      spec.dim = kAuditDim;
      spec.degree = options_.degree;
      spec.valence = valence;
      spec.seed = options_.seed + kAuditSeedOffset + i;
      spec.coeff_bound = options_.coeff_bound;
      add(set, spec, false, false);
    }
    return set;
  }

  CheckRecord record(std::string check, Valence valence) const {
    CheckRecord r;
    r.suite = suite_;
    r.check = std::move(check);
    r.valence = valence;
    return r;
  }

  void push(CheckRecord r) { checks_.push_back(std::move(r)); }
  void push(RankClaimResult r) { ranks_.push_back(std::move(r)); }

  SuiteReport finish(std::string name) && {
    SuiteReport report;
    report.suite = std::move(name);
    report.options = options_;
    report.options.workers = 0;
    report.instances = std::move(instances_);
    report.checks = std::move(checks_);
    report.ranks = std::move(ranks_);
    report.typos = typo_readings();
    return report;
  }

 private:
  void add(Set& set, const InstanceSpec& spec, bool user, bool torsion_free) {
    std::string suffix = user ? "user" : "";
    if (torsion_free) suffix += suffix.empty() ? "tf" : "-tf";
    const std::string id = instance_id(spec, suffix);
    auto it = workspaces_.find(id);
    if (it == workspaces_.end()) {
      Instance inst{spec, user ? *options_.connection : generate_connection(spec), generate_field(spec)};
      if (torsion_free) inst.connection = Connection(inst.connection.symmetric());
      std::string note;
      if (user) note = "connection supplied by the user";
      if (torsion_free) note += std::string(note.empty() ? "" : "; ") + "symmetric part of the connection";
      auto ws = std::make_unique<Workspace>(inst.connection, inst.field);
      instances_.push_back({id, std::move(inst), note});
      it = workspaces_.emplace(id, std::move(ws)).first;
    }
    set.workspaces.push_back(it->second.get());
    set.ids.push_back(id);
  }

  std::string suite_;
  const SuiteOptions& options_;
  std::size_t workers_;
  std::vector<InstanceRecord> instances_;
  std::map<std::string, std::unique_ptr<Workspace>> workspaces_;
  std::vector<CheckRecord> checks_;
  std::vector<RankClaimResult> ranks_;
};

/// Checks the printed identity for every tuple on the checked instances and
/// audits the tuples that fail. With per_tuple false, base.kinds is used once
/// and the record carries no kinds.
void sweep(Context& ctx, const IdentityRequest& base, std::vector<KindTuple> tuples, Valence valence,
           bool per_tuple) {
  if (!per_tuple) tuples = {base.kinds};
  const auto set = ctx.checked(valence);
  std::vector<std::vector<Term>> bases(set.workspaces.size());
  parallel_for(bases.size(), ctx.workers(), [&](std::size_t w) { bases[w] = build_basis(*set.workspaces[w], base); });

  std::vector<char> zero(tuples.size(), 1);
  parallel_for(tuples.size(), ctx.workers(), [&](std::size_t i) {
    IdentityRequest req = base;
    req.kinds = tuples[i];
    const auto coeffs = printed_coefficients(req);
    for (std::size_t w = 0; w < set.workspaces.size(); ++w) {
      const auto rhs = combine(bases[w], coeffs);
      if (!residual(build_lhs(*set.workspaces[w], req), rhs).is_zero) {
        zero[i] = 0;
        break;
      }
    }
  });

  std::vector<KindTuple> failing;
  for (std::size_t i = 0; i < tuples.size(); ++i)
    if (!zero[i]) failing.push_back(tuples[i]);
  std::vector<AuditResult> audits;
  Context::Set fit;
  if (!failing.empty()) {
    fit = ctx.audit(valence);
    audits = audit_sweep(base, failing, fit.workspaces, set.workspaces);
  }

  std::size_t next_audit = 0;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    CheckRecord r = ctx.record(std::string(to_string(base.id)), valence);
    if (per_tuple) r.kinds = tuples[i];
    if (base.id == IdentityId::SecondFamily || base.support || (base.id >= IdentityId::ProofX))
      r.weights = base.weights;
    r.support = base.support;
    if (base.id == IdentityId::GeneralFamily)
      r.note = base.reading == ZReading::Difference ? "Z read as difference" : "Z read as first rows only";
    r.instances = set.ids;
    if (zero[i]) {
      r.verdict = Verdict::ZeroResidual;
    } else {
      const auto& a = audits[next_audit++];
      r.audit_instances = fit.ids;
      r.audit_status = a.status;
      r.corrections = corrections_of(a);
      r.verdict = a.status == AuditStatus::Unique ? Verdict::AuditedWithCorrection : Verdict::Failed;
    }
    ctx.push(std::move(r));
  }
}

void property(Context& ctx, std::string name, Valence valence, const std::vector<std::string>& ids, bool holds,
              std::string note = {}) {
  CheckRecord r = ctx.record(std::move(name), valence);
  r.instances = ids;
  r.verdict = holds ? Verdict::ZeroResidual : Verdict::Failed;
  r.note = std::move(note);
  ctx.push(std::move(r));
}

std::vector<Valence> kind_valences(const SuiteOptions& o) {
  if (o.valence) return {*o.valence};
  return {{1, 0}, {0, 1}, {1, 1}, {2, 1}};
}

std::vector<Valence> general_valences(const SuiteOptions& o) {
  if (o.valence) return {*o.valence};
  return {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}};
}

// ---------------------------------------------------------------------------

void run_kinds(Context& ctx) {
  for (Valence v : kind_valences(ctx.options())) {
    const auto set = ctx.checked(v);
    bool unified = true;
    for (const auto* ws : set.workspaces)
      for (int z = 1; z <= 4; ++z)
        unified = unified && cov_deriv(ws->connection(), ws->field(), Kind(z), DerivativeMode::Direct) ==
                                 cov_deriv(ws->connection(), ws->field(), Kind(z), DerivativeMode::Unified);
    property(ctx, "kind_equivalence", v, set.ids, unified, "direct kinds 1..4 equal the unified form");

    // Valence-forced coincidences between kinds.
    std::vector<std::pair<int, int>> same;
    if (v == Valence{1, 0}) same = {{1, 3}, {2, 4}};
    if (v == Valence{0, 1}) same = {{1, 4}, {2, 3}};
    if (!same.empty()) {
      bool holds = true;
      for (const auto* ws : set.workspaces)
        for (auto [a, b] : same) holds = holds && ws->derivative(Kind(a)) == ws->derivative(Kind(b));
      property(ctx, "kind_degeneracy", v, set.ids, holds,
               v == Valence{1, 0} ? "kinds 1=3 and 2=4" : "kinds 1=4 and 2=3");
    }

    const auto tf = ctx.checked(v, true);
    bool collapse = true;
    for (const auto* ws : tf.workspaces)
      for (int z = 1; z <= 4; ++z) collapse = collapse && ws->derivative(Kind(z)) == ws->derivative(Kind(0));
    property(ctx, "torsion_free_kinds", v, tf.ids, collapse, "every kind equals kind 0");
  }
}

void torsion_free_collapse(Context& ctx, std::string name, Valence v,
                           const std::function<TensorField(const Workspace&)>& rhs) {
  const auto tf = ctx.checked(v, true);
  bool holds = true;
  for (const auto* ws : tf.workspaces)
    holds = holds && rhs(*ws) == ricci_kind0_rhs(ws->connection(), ws->field());
  property(ctx, std::move(name), v, tf.ids, holds, "equals the kind-0 identity on a torsion-free connection");
}

void run_ricci11(Context& ctx) {
  for (Valence v : kind_valences(ctx.options())) {
    IdentityRequest req;
    req.id = IdentityId::ClassicalRicci;
    sweep(ctx, req, {}, v, false);
  }
  for (IdentityId id : {IdentityId::RicciFirstFirst, IdentityId::RicciFirstSecond}) {
    IdentityRequest req;
    req.id = id;
    sweep(ctx, req, {}, {1, 1}, false);
  }
  torsion_free_collapse(ctx, "torsion_free_collapse.ricci_1_1", {1, 1},
                        [](const Workspace& ws) { return ricci_11_rhs(ws.connection(), ws.field()); });
  torsion_free_collapse(ctx, "torsion_free_collapse.ricci_1_2", {1, 1},
                        [](const Workspace& ws) { return ricci_12_rhs(ws.connection(), ws.field()); });

  const auto set = ctx.checked({1, 1});
  bool same = true;
  const KindTuple t{Kind(1), Kind(2), Kind(1), Kind(2)};
  for (const auto* ws : set.workspaces)
    same = same && ricci_12_rhs(ws->connection(), ws->field()) == first_theorem_rhs(ws->connection(), ws->field(), t);
  property(ctx, "ricci_1_2_matches_first_family", {1, 1}, set.ids, same, "builders agree at 1,2,1,2");
}

void run_first(Context& ctx) {
  IdentityRequest req;
  req.id = IdentityId::FirstFamily;
  sweep(ctx, req, all_kind_tuples(), {1, 1}, true);

  const auto set = ctx.checked({1, 1});
  bool antisym = true;
  for (const auto* ws : set.workspaces) {
    const auto basis = first_family_basis(*ws);
    for (Kind v : all_kinds())
      for (Kind w : all_kinds()) {
        const KindTuple k{v, w, v, w};
        const auto lhs = commutation_lhs(*ws, k);
        const auto rhs = combine(basis, first_family_coefficients(k));
        antisym = antisym && swap_last_two(lhs) == lhs * Rational(-1) && swap_last_two(rhs) == rhs * Rational(-1);
      }
  }
  property(ctx, "antisymmetry", {1, 1}, set.ids, antisym,
           "left and right sides with (v1,w1)=(v2,w2) change sign under m<->n");

  const auto tf = ctx.checked({1, 1}, true);
  bool collapse = true;
  for (const auto* ws : tf.workspaces) {
    const auto basis = first_family_basis(*ws);
    const auto kind0 = ricci_kind0_rhs(ws->connection(), ws->field());
    for (const auto& k : all_kind_tuples()) collapse = collapse && combine(basis, first_family_coefficients(k)) == kind0;
  }
  property(ctx, "torsion_free_collapse.first_family", {1, 1}, tf.ids, collapse,
           "every kind tuple equals the kind-0 identity");
}

void run_second(Context& ctx) {
  const auto& o = ctx.options();
  auto wrng = auxiliary_rng(o.seed, kWeightPurpose);
  auto trng = auxiliary_rng(o.seed, kTuplePurpose);
  std::vector<RhoWeights> draws;
  for (std::size_t d = 0; d < o.weight_draws; ++d) {
    IdentityRequest req;
    req.id = IdentityId::SecondFamily;
    req.weights = random_weights(wrng);
    draws.push_back(req.weights);
    sweep(ctx, req, random_tuples(trng, o.tuple_draws), {1, 1}, true);
  }
  for (const auto& w : draws) {
    for (IdentityId id : {IdentityId::ProofX, IdentityId::ProofY, IdentityId::ProofZ, IdentityId::ProofU,
                          IdentityId::ProofV}) {
      IdentityRequest req;
      req.id = id;
      req.weights = w;
      sweep(ctx, req, {}, {1, 1}, false);
    }
  }

  // Corner cases that must reduce to the first family.
  const auto set = ctx.checked({1, 1});
  const auto tuples = random_tuples(trng, o.tuple_draws);
  bool kind0 = true;
  for (const auto* ws : set.workspaces) {
    const RhoWeights w;
    const auto second = second_family_basis(*ws, w);
    const auto first = first_family_basis(*ws);
    for (const auto& k : tuples)
      kind0 = kind0 && combine(second, second_family_coefficients(k, w)) == combine(first, first_family_coefficients(k));
  }
  property(ctx, "second_family_kind0_weights", {1, 1}, set.ids, kind0,
           "weights concentrated on kind 0 give the first family");

  const auto tf = ctx.checked({1, 1}, true);
  bool collapse = true;
  for (const auto* ws : tf.workspaces) {
    const auto kind0_rhs = ricci_kind0_rhs(ws->connection(), ws->field());
    for (std::size_t d = 0; d < std::min<std::size_t>(draws.size(), 3); ++d) {
      const auto basis = second_family_basis(*ws, draws[d]);
      for (const auto& k : tuples)
        collapse = collapse && combine(basis, second_family_coefficients(k, draws[d])) == kind0_rhs;
    }
  }
  property(ctx, "torsion_free_collapse.second_family", {1, 1}, tf.ids, collapse,
           "random weights and tuples equal the kind-0 identity");
}

void run_restricted(Context& ctx) {
  const auto& o = ctx.options();
  auto wrng = auxiliary_rng(o.seed, kWeightPurpose + 10);
  auto trng = auxiliary_rng(o.seed, kTuplePurpose + 10);
  bool patterns = true;
  for (RestrictedMode mode : {RestrictedMode::ThreeKinds, RestrictedMode::TwoKinds}) {
    for (const auto& support : admissible_supports(mode)) {
      for (std::size_t d = 0; d < o.restricted_draws; ++d) {
        IdentityRequest req;
        req.id = mode == RestrictedMode::ThreeKinds ? IdentityId::RestrictedThree : IdentityId::RestrictedTwo;
        req.support = support;
        req.weights = random_restricted_weights(wrng, support);
        for (int z = 1; z <= 5; ++z) {
          const auto& r = req.weights.row(z);
          patterns = patterns && SignPattern::alternating_sum(r) == r[1] - r[2] + r[3] - r[4] &&
                     SignPattern::paired_sum(r) == r[1] - r[2] - r[3] + r[4];
        }
        sweep(ctx, req, random_tuples(trng, o.tuple_draws), {1, 1}, true);
      }
    }
  }
  property(ctx, "sign_pattern_identities", {1, 1}, {}, patterns,
           "floor and power sign sums equal the explicit alternating sums on every drawn row");
}

void run_general(Context& ctx) {
  const auto tuples = all_kind_tuples();
  for (Valence v : general_valences(ctx.options())) {
    IdentityRequest req;
    req.id = IdentityId::GeneralFamily;
    sweep(ctx, req, tuples, v, true);

    const auto tf = ctx.checked(v, true);
    bool collapse = true;
    for (const auto* ws : tf.workspaces) {
      const auto basis = general_family_basis(*ws);
      const auto kind0 = ricci_kind0_rhs(ws->connection(), ws->field());
      for (const auto& k : tuples)
        collapse = collapse && combine(basis, general_family_coefficients(k, ZReading::Difference)) == kind0;
    }
    property(ctx, "torsion_free_collapse.general_family", v, tf.ids, collapse,
             "every kind tuple equals the kind-0 identity");
  }

  // Term-for-term agreement with the first family on (1,1) fields.
  const auto set = ctx.checked({1, 1});
  bool same = true;
  for (const auto* ws : set.workspaces) {
    const auto general = general_family_basis(*ws);
    const auto first = first_family_basis(*ws);
    for (std::size_t t = 0; t < general.size(); ++t) {
      if (t < first.size())
        same = same && general[t].value == first[t].value;
      else
        same = same && general[t].value.is_zero();
    }
    for (const auto& k : tuples) {
      const auto g = general_family_coefficients(k, ZReading::Difference);
      const auto f = first_family_coefficients(k);
      same = same && std::equal(f.begin(), f.end(), g.begin());
    }
  }
  property(ctx, "general_matches_first_family", {1, 1}, set.ids, same,
           "first 19 terms and coefficients coincide; the remaining terms vanish");
}

void run_independence(Context& ctx) {
  const auto& o = ctx.options();
  RankOptions ro;
  ro.dim = o.dim;
  ro.degree = o.degree;
  ro.coeff_bound = o.coeff_bound;
  ro.seed = o.seed;
  ro.seeds = o.rank_seeds;
  for (RankClaim c : all_rank_claims()) ctx.push(check_rank_claim(c, ro));
}

void run_one(Context& ctx, SuiteName name) {
  ctx.set_suite(std::string(to_string(name)));
  switch (name) {
    case SuiteName::Kinds:
      return run_kinds(ctx);
    case SuiteName::Ricci11:
      return run_ricci11(ctx);
    case SuiteName::First:
      return run_first(ctx);
    case SuiteName::Second:
      return run_second(ctx);
    case SuiteName::Restricted:
      return run_restricted(ctx);
    case SuiteName::General:
      return run_general(ctx);
    case SuiteName::Independence:
      return run_independence(ctx);
    case SuiteName::All:
      for (SuiteName n : all_suite_names())
        if (n != SuiteName::All) run_one(ctx, n);
      return;
  }
}

constexpr std::array<std::pair<SuiteName, std::string_view>, 8> kSuiteNames{{
    {SuiteName::Kinds, "kinds"},
    {SuiteName::First, "first"},
    {SuiteName::Ricci11, "ricci11"},
    {SuiteName::Second, "second"},
    {SuiteName::Restricted, "restricted"},
    {SuiteName::General, "general"},
    {SuiteName::Independence, "independence"},
    {SuiteName::All, "all"},
}};

Json support_to_json(const RestrictedSupport& s) {
  Json j;
  j["mode"] = s.mode == RestrictedMode::ThreeKinds ? "three_kinds" : "two_kinds";
  j["kinds"] = s.kinds;
  return j;
}

Json check_to_json(const CheckRecord& r) {
  Json j;
  j["suite"] = r.suite;
  j["check"] = r.check;
  j["valence"] = {r.valence.upper, r.valence.lower};
  if (r.kinds) j["kinds"] = kinds_to_json(*r.kinds);
  if (r.weights) j["weights"] = weights_to_json(*r.weights);
  if (r.support) j["support"] = support_to_json(*r.support);
  j["instances"] = r.instances;
  j["verdict"] = to_string(r.verdict);
  if (r.audit_status) {
    j["audit_status"] = to_string(*r.audit_status);
    j["audit_instances"] = r.audit_instances;
  }
  if (!r.corrections.empty()) {
    Json cs = Json::array();
    for (const auto& c : r.corrections) {
      Json cj;
      cj["term"] = c.term_id;
      cj["formula"] = c.formula;
      cj["printed"] = rational_to_json(c.printed);
      cj["fitted"] = rational_to_json(c.fitted);
      cs.push_back(std::move(cj));
    }
    j["corrections"] = std::move(cs);
  }
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json options_to_json(const SuiteOptions& o) {
  Json j;
  j["dim"] = o.dim;
  j["degree"] = o.degree;
  j["seed"] = o.seed;
  j["coeff_bound"] = o.coeff_bound;
  if (o.valence) j["valence"] = {o.valence->upper, o.valence->lower};
  j["seeds"] = o.seeds;
  j["weight_draws"] = o.weight_draws;
  j["tuple_draws"] = o.tuple_draws;
  j["restricted_draws"] = o.restricted_draws;
  j["rank_seeds"] = o.rank_seeds;
  j["user_connection"] = o.connection.has_value();
  return j;
}

}  // namespace

std::string_view to_string(SuiteName name) {
  for (const auto& [n, s] : kSuiteNames)
    if (n == name) return s;
  throw ParameterError("unknown suite");
}

SuiteName parse_suite_name(std::string_view name) {
  for (const auto& [n, s] : kSuiteNames)
    if (s == name) return n;
  throw ValidationError("unknown suite '" + std::string(name) + "'");
}

const std::vector<SuiteName>& all_suite_names() {
  static const std::vector<SuiteName> names = [] {
    std::vector<SuiteName> out;
    for (const auto& [n, s] : kSuiteNames) out.push_back(n);
    return out;
  }();
  return names;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::ZeroResidual:
      return "zero-residual";
    case Verdict::AuditedWithCorrection:
      return "audited-with-correction";
    case Verdict::Failed:
      return "failed";
  }
  return "failed";
}

std::size_t SuiteReport::count(Verdict v) const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [v](const CheckRecord& r) { return r.verdict == v; }));
}

std::size_t SuiteReport::rank_failures() const {
  return static_cast<std::size_t>(
      std::count_if(ranks.begin(), ranks.end(), [](const RankClaimResult& r) { return !r.passed; }));
}

bool SuiteReport::ok() const { return count(Verdict::Failed) == 0 && rank_failures() == 0; }

std::size_t workers_from_env() {
  const char* v = std::getenv("RICCITYPE_WORKERS");
  if (!v) return 1;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (end == v || *end != '\0' || n < 1) return 1;
  return static_cast<std::size_t>(n);
}

SuiteReport run_suite(SuiteName name, const SuiteOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  InstanceSpec probe;
  probe.dim = options.dim;
  probe.coeff_bound = options.coeff_bound;
  validate(probe);
  if (options.seeds == 0) throw ValidationError("at least one seed is required");
  if (options.connection && options.connection->dim() != options.dim)
    throw ValidationError("connection dimension " + std::to_string(options.connection->dim()) +
                          " differs from --dim " + std::to_string(options.dim));

  Context ctx(std::string(to_string(name)), options, options.workers ? options.workers : workers_from_env());
  run_one(ctx, name);
  SuiteReport report = std::move(ctx).finish(std::string(to_string(name)));
  if (options.timing)
    report.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

Json kinds_to_json(const KindTuple& k) { return k.to_string(); }

KindTuple kinds_from_json(const Json& j) {
  std::vector<int> v;
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::size_t pos = 0;
    while (pos <= s.size()) {
      const std::size_t comma = s.find(',', pos);
      const std::string part = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
        throw ValidationError("bad kind tuple '" + s + "'");
      v.push_back(std::stoi(part));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  } else if (j.is_array()) {
    for (const auto& x : j) v.push_back(x.get<int>());
  }
  if (v.size() != 4) throw ValidationError("a kind tuple has four entries");
  try {
    return {Kind(v[0]), Kind(v[1]), Kind(v[2]), Kind(v[3])};
  } catch (const ParameterError& e) {
    throw ValidationError(e.what());
  }
}

Json rank_result_to_json(const RankClaimResult& r) {
  Json j;
  j["claim"] = to_string(r.claim);
  j["dim"] = r.dim;
  j["expected"] = r.expected;
  switch (r.comparison) {
    case ClaimComparison::Equal:
      j["comparison"] = "equal";
      break;
    case ClaimComparison::AtLeast:
      j["comparison"] = "at_least";
      break;
    case ClaimComparison::External:
      j["comparison"] = "external";
      break;
  }
  j["seeds"] = r.seeds;
  j["observed"] = r.observed;
  j["points"] = r.points;
  j["maximum"] = r.maximum;
  if (r.comparison == ClaimComparison::External)
    j["verdict"] = r.reproduced ? "reproduced" : "not-reproduced";
  else
    j["verdict"] = r.passed ? "pass" : "fail";
  return j;
}

Json audit_to_json(const AuditResult& a) {
  Json j;
  j["identity"] = to_string(a.identity);
  j["kinds"] = kinds_to_json(a.kinds);
  j["status"] = to_string(a.status);
  j["printed_verified"] = a.printed_verified;
  j["unknowns"] = a.unknowns;
  j["rank"] = a.rank;
  j["fit_instances"] = a.fit_instances;
  j["verify_instances"] = a.verify_instances;
  Json cs = Json::array();
  for (const auto& c : a.coefficients) {
    Json cj;
    cj["term"] = c.term_id;
    cj["formula"] = c.formula;
    cj["printed"] = rational_to_json(c.printed);
    if (c.fitted) cj["fitted"] = rational_to_json(*c.fitted);
    cj["vanishes"] = c.vanishes;
    cj["differs"] = c.differs();
    cs.push_back(std::move(cj));
  }
  j["coefficients"] = std::move(cs);
  return j;
}

Json report_to_json(const SuiteReport& report) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["artifact_version"] = kArtifactVersion;
  j["generator"] = kGeneratorName;
  j["suite"] = report.suite;
  j["options"] = options_to_json(report.options);

  Json summary;
  summary["checks"] = report.checks.size();
  summary["zero_residual"] = report.count(Verdict::ZeroResidual);
  summary["audited_with_correction"] = report.count(Verdict::AuditedWithCorrection);
  summary["failed"] = report.count(Verdict::Failed);
  summary["rank_claims"] = report.ranks.size();
  summary["rank_failures"] = report.rank_failures();
  summary["ok"] = report.ok();
  j["summary"] = std::move(summary);

  Json typos = Json::array();
  for (const auto& t : report.typos) {
    Json tj;
    tj["location"] = t.location;
    tj["printed"] = t.printed;
    tj["reading"] = t.reading;
    typos.push_back(std::move(tj));
  }
  j["typo_readings"] = std::move(typos);

  Json checks = Json::array();
  for (const auto& c : report.checks) checks.push_back(check_to_json(c));
  j["checks"] = std::move(checks);
  Json ranks = Json::array();
  for (const auto& r : report.ranks) ranks.push_back(rank_result_to_json(r));
  j["ranks"] = std::move(ranks);

  Json instances = Json::array();
  for (const auto& rec : report.instances) {
    Json ij;
    ij["id"] = rec.id;
    if (!rec.note.empty()) ij["note"] = rec.note;
    ij["instance"] = instance_to_json(rec.instance);
    instances.push_back(std::move(ij));
  }
  j["instances"] = std::move(instances);
  if (report.wall_time_seconds) j["wall_time_seconds"] = *report.wall_time_seconds;
  return j;
}

// ---------------------------------------------------------------------------

RhoWeights draw_weights(std::uint64_t seed) {
  auto rng = auxiliary_rng(seed, kWeightPurpose + 30);
  return random_weights(rng);
}

RhoWeights draw_restricted_weights(std::uint64_t seed, const RestrictedSupport& support) {
  auto rng = auxiliary_rng(seed, kWeightPurpose + 31);
  return random_restricted_weights(rng, support);
}

std::string_view identity_label(IdentityId id) {
  switch (id) {
    case IdentityId::ClassicalRicci:
      return "kind-0 Ricci identity via the curvature tensor";
    case IdentityId::RicciFirstFirst:
      return "kind 1 / kind 1 commutation with curvature pseudotensors and bracket terms";
    case IdentityId::RicciFirstSecond:
      return "kind 1 / kind 2 commutation, simplified form";
    case IdentityId::FirstFamily:
      return "first family of Ricci-type identities, (1,1) field";
    case IdentityId::SecondFamily:
      return "second family of Ricci-type identities, weighted derivative mixtures";
    case IdentityId::RestrictedThree:
      return "second family with weights on three kinds from 1..4";
    case IdentityId::RestrictedTwo:
      return "second family with weights on kind 0 and two further kinds";
    case IdentityId::GeneralFamily:
      return "first family for a (p,q) field";
    case IdentityId::ProofX:
      return "torsion contraction of the X mixture";
    case IdentityId::ProofY:
      return "torsion contraction of the Y mixture";
    case IdentityId::ProofZ:
      return "torsion contraction of the Z mixture";
    case IdentityId::ProofU:
      return "torsion contraction of the U mixture";
    case IdentityId::ProofV:
      return "torsion contraction of the V mixture";
  }
  return "";
}

std::vector<const Workspace*> AuditInstances::pointers() const {
  std::vector<const Workspace*> out;
  for (const auto& w : workspaces) out.push_back(w.get());
  return out;
}

AuditInstances make_audit_instances(Valence valence, const SuiteOptions& options) {
  AuditInstances out;
  for (std::size_t i = 0; i < kAuditInstances; ++i) {
    InstanceSpec spec;
    spec.dim = kAuditDim;
    spec.degree = options.degree;
    spec.valence = valence;
    spec.seed = options.seed + kAuditSeedOffset + i;
    spec.coeff_bound = options.coeff_bound;
    auto inst = generate_instance(spec);
    out.workspaces.push_back(std::make_unique<Workspace>(inst.connection, inst.field));
    out.records.push_back({instance_id(spec, ""), std::move(inst), ""});
  }
  return out;
}

Json identity_catalogue(const CatalogueOptions& options) {
  SuiteOptions so;
  so.seed = options.seed;
  auto wrng = auxiliary_rng(options.seed, kWeightPurpose + 20);
  const RhoWeights weights = random_weights(wrng);

  std::map<std::pair<std::size_t, std::size_t>, AuditInstances> fits;
  std::map<std::pair<std::size_t, std::size_t>, std::unique_ptr<Workspace>> checks;
  auto workspaces_for = [&](Valence v) {
    const auto key = std::make_pair(v.upper, v.lower);
    if (!fits.count(key)) {
      fits.emplace(key, make_audit_instances(v, so));
      InstanceSpec spec;
      spec.valence = v;
      spec.seed = options.seed;
      auto inst = generate_instance(spec);
      checks.emplace(key, std::make_unique<Workspace>(inst.connection, inst.field));
    }
    return std::make_pair(fits.at(key).pointers(), checks.at(key).get());
  };

  Json out;
  out["schema_version"] = kReportSchemaVersion;
  out["artifact_version"] = kArtifactVersion;
  out["generator"] = kGeneratorName;
  out["seed"] = options.seed;
  out["kinds"] = kinds_to_json(options.kinds);
  out["weights"] = weights_to_json(weights);
  Json ids = Json::array();
  for (IdentityId id : all_identity_ids()) {
    IdentityRequest req;
    req.id = id;
    req.kinds = options.kinds;
    const Valence v = id == IdentityId::GeneralFamily ? Valence{2, 1} : Valence{1, 1};
    if (id == IdentityId::RestrictedThree || id == IdentityId::RestrictedTwo) {
      req.support = admissible_supports(id == IdentityId::RestrictedThree ? RestrictedMode::ThreeKinds
                                                                          : RestrictedMode::TwoKinds)
                        .front();
      auto rng = auxiliary_rng(options.seed, kWeightPurpose + 21);
      req.weights = random_restricted_weights(rng, *req.support);
    } else if (id == IdentityId::SecondFamily || id >= IdentityId::ProofX) {
      req.weights = weights;
    }
    auto [fit, check] = workspaces_for(v);
    const auto basis = build_basis(*check, req);
    const auto printed = printed_coefficients(req);

    Json ij;
    ij["identity"] = to_string(id);
    ij["label"] = identity_label(id);
    ij["valence"] = {v.upper, v.lower};
    if (req.support) ij["support"] = support_to_json(*req.support);
    if (req.support) ij["weights"] = weights_to_json(req.weights);
    std::optional<AuditResult> audit;
    if (options.audit) {
      const std::vector<const Workspace*> verify{check};
      audit = audit_coefficients(req, fit, verify);
    }
    Json terms = Json::array();
    for (std::size_t t = 0; t < basis.size(); ++t) {
      Json tj;
      tj["term"] = basis[t].id;
      tj["formula"] = basis[t].formula;
      tj["printed"] = rational_to_json(printed[t]);
      if (audit && audit->coefficients[t].fitted) tj["fitted"] = rational_to_json(*audit->coefficients[t].fitted);
      terms.push_back(std::move(tj));
    }
    ij["terms"] = std::move(terms);
    if (audit) {
      Json aj;
      aj["status"] = to_string(audit->status);
      aj["printed_verified"] = audit->printed_verified;
      aj["unknowns"] = audit->unknowns;
      aj["rank"] = audit->rank;
      aj["discrepancies"] = audit->discrepancies().size();
      ij["audit"] = std::move(aj);
    }
    ids.push_back(std::move(ij));
  }
  out["identities"] = std::move(ids);
  return out;
}

}  // namespace riccitype
