#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "riccitype/audit.hpp"
#include "riccitype/independence.hpp"
#include "riccitype/serialize.hpp"

namespace riccitype {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kArtifactVersion = "0.1.0";

enum class SuiteName { Kinds, First, Ricci11, Second, Restricted, General, Independence, All };

std::string_view to_string(SuiteName name);
/// Throws ValidationError for unknown names.
SuiteName parse_suite_name(std::string_view name);
const std::vector<SuiteName>& all_suite_names();

enum class Verdict {
  ZeroResidual,           // printed identity holds exactly on every instance
  AuditedWithCorrection,  // printed form fails; a unique corrected form verifies
  Failed,
};

std::string_view to_string(Verdict v);

struct Correction {
  std::string term_id;
  std::string formula;
  Rational printed;
  Rational fitted;
};

struct CheckRecord {
  std::string suite;
  std::string check;  // identity id or property name
  Valence valence{1, 1};
  std::optional<KindTuple> kinds;
  std::optional<RhoWeights> weights;
  std::optional<RestrictedSupport> support;
  std::vector<std::string> instances;        // where the printed form was checked
  std::vector<std::string> audit_instances;  // where coefficients were fitted
  Verdict verdict = Verdict::ZeroResidual;
  std::optional<AuditStatus> audit_status;
  std::vector<Correction> corrections;
  std::string note;
};

struct SuiteOptions {
  std::size_t dim = 2;
  std::size_t degree = 2;
  std::uint64_t seed = 42;
  unsigned coeff_bound = 5;
  /// Replaces the valence grid of the kinds and general suites.
  std::optional<Valence> valence;
  std::size_t seeds = 3;         // instances per identity check
  std::size_t weight_draws = 20; // second suite
  std::size_t tuple_draws = 10;  // kind tuples per weight draw
  std::size_t restricted_draws = 2;  // weight draws per admissible support
  std::size_t rank_seeds = 5;
  /// 0 reads RICCITYPE_WORKERS (default 1).
  std::size_t workers = 0;
  bool timing = false;
  /// Used instead of the generated connection on every checked instance.
  std::optional<Connection> connection;
};

struct InstanceRecord {
  std::string id;
  Instance instance;
  std::string note;
};

struct SuiteReport {
  std::string suite;
  SuiteOptions options;
  std::vector<InstanceRecord> instances;
  std::vector<CheckRecord> checks;
  std::vector<RankClaimResult> ranks;
  std::vector<TypoReading> typos;
  std::optional<double> wall_time_seconds;

  std::size_t count(Verdict v) const;
  std::size_t rank_failures() const;
  /// No failed verdict and every rank claim met.
  bool ok() const;
};

/// Worker count from RICCITYPE_WORKERS; 1 when unset or invalid.
std::size_t workers_from_env();

/// Throws ValidationError for an invalid spec or a connection whose
/// dimension differs from options.dim.
SuiteReport run_suite(SuiteName name, const SuiteOptions& options = {});

Json report_to_json(const SuiteReport& report);
Json rank_result_to_json(const RankClaimResult& r);
Json audit_to_json(const AuditResult& a);
Json kinds_to_json(const KindTuple& k);
KindTuple kinds_from_json(const Json& j);

/// Seeded weight draws as used by the suites: every entry but the last of
/// a row is a small random rational, the last one completes the row to 1.
RhoWeights draw_weights(std::uint64_t seed);
RhoWeights draw_restricted_weights(std::uint64_t seed, const RestrictedSupport& support);

/// Descriptive label for each identity.
std::string_view identity_label(IdentityId id);

struct CatalogueOptions {
  std::uint64_t seed = 42;
  KindTuple kinds{Kind(1), Kind(2), Kind(3), Kind(4)};
  bool audit = true;
};

/// Every identity with its term list, printed coefficients at a
/// representative parameter choice, and (optionally) its audit status.
Json identity_catalogue(const CatalogueOptions& options = {});

/// Fit workspaces used by the suite: two N=3 instances of the valence.
struct AuditInstances {
  std::vector<InstanceRecord> records;
  std::vector<std::unique_ptr<Workspace>> workspaces;
  std::vector<const Workspace*> pointers() const;
};
AuditInstances make_audit_instances(Valence valence, const SuiteOptions& options);

}  // namespace riccitype
