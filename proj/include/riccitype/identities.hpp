#pragma once

#include <array>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "riccitype/connection.hpp"

namespace riccitype {

struct KindTuple {
  Kind v1{0}, w1{0}, v2{0}, w2{0};

  /// "v1,w1,v2,w2".
  std::string to_string() const;
  friend bool operator==(const KindTuple&, const KindTuple&) = default;
};

/// All 625 tuples in lexicographic order of (v1, w1, v2, w2).
std::vector<KindTuple> all_kind_tuples();

enum class IdentityId {
  ClassicalRicci,    // kind-0 commutation of a (p,q) field
  RicciFirstFirst,   // 1|m 1|n difference with pseudotensors and brackets
  RicciFirstSecond,  // simplified 1|m 2|n difference
  FirstFamily,       // all (v1,w1,v2,w2) for a (1,1) field
  SecondFamily,      // first family with ρ-weighted derivative mixtures
  RestrictedThree,   // second family, weights on three kinds from {1..4}
  RestrictedTwo,     // second family, weights on {0, n1, n2}
  GeneralFamily,     // first family for a (p,q) field
  ProofX,
  ProofY,
  ProofZ,
  ProofU,
  ProofV,
};

std::string_view to_string(IdentityId id);
/// Throws ValidationError for unknown names.
IdentityId parse_identity_id(std::string_view name);
const std::vector<IdentityId>& all_identity_ids();

/// ρ^z_k for slots z = 1..5 (the X, Y, Z, U, V mixtures) and kinds k = 0..4.
class RhoWeights {
 public:
  using Row = std::array<Rational, 5>;

  /// Every row concentrated on kind 0.
  RhoWeights();
  /// Throws ValidationError unless each row sums to 1.
  explicit RhoWeights(const std::array<Row, 5>& rows);

  static RhoWeights concentrated(Kind k);

  const Row& row(int slot) const;
  const Rational& at(int slot, int kind) const { return row(slot)[static_cast<std::size_t>(kind)]; }
  friend bool operator==(const RhoWeights&, const RhoWeights&) = default;

 private:
  std::array<Row, 5> rows_;
};

/// The two sign patterns over kinds 1..4: (−1)^(k−1) = (+,−,+,−) and
/// (−1)^⌊k/2⌋ = (+,−,−,+).
struct SignPattern {
  static int alternating(int k);
  static int paired(int k);
  /// Σ_k alternating(k) ρ_k and Σ_k paired(k) ρ_k over k = 1..4.
  static Rational alternating_sum(const RhoWeights::Row& row);
  static Rational paired_sum(const RhoWeights::Row& row);
};

enum class RestrictedMode {
  ThreeKinds,  // ρ_0 = ρ_{n4} = 0, support {n1 < n2 < n3} ⊂ {1..4}
  TwoKinds,    // support {0, n1, n2}, (n1,n2) ∈ {(1,3),(1,4),(2,3),(2,4)}
};

struct RestrictedSupport {
  RestrictedMode mode;
  std::vector<int> kinds;  // sorted, including 0 for TwoKinds
};

/// Throws ValidationError for a support the mode does not admit.
void validate(const RestrictedSupport& support);
std::vector<RestrictedSupport> admissible_supports(RestrictedMode mode);

/// Zeros off the support; values[z-1] lists row z's entries on the support
/// in order. Throws ValidationError on bad support or rows not summing to 1.
RhoWeights restricted_weights(const RestrictedSupport& support, const std::array<std::vector<Rational>, 5>& values);

/// How the quadratic double-sum rows of the (p,q) double derivative enter
/// the general identity.
enum class ZReading {
  Difference,  // (v1,w1) rows minus the (v2,w2) rows with m and n exchanged
  FirstOnly,   // only the (v1,w1) rows
};

/// One named RHS contribution; the identity's RHS is Σ coeff_t · value_t.
struct Term {
  std::string id;
  std::string formula;
  TensorField value;
};

TensorField combine(std::span<const Term> terms, std::span<const Rational> coeffs);

/// Derived objects of one (connection, field) pair, computed on first use.
/// Safe to share between threads.
class Workspace {
 public:
  Workspace(Connection connection, TensorField field);
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  const Connection& connection() const { return connection_; }
  const TensorField& field() const { return field_; }
  std::size_t dim() const { return connection_.dim(); }

  const TensorField& comma() const;
  const TensorField& derivative(Kind z) const;
  const TensorField& double_derivative(Kind v, Kind w) const;
  const TensorField& curvature() const;
  const TensorField& torsion_derivative() const;
  const Pseudotensors& pseudotensors() const;

 private:
  template <class F>
  const TensorField& cached(std::optional<TensorField>& slot, F&& make) const;

  Connection connection_;
  TensorField field_;
  mutable std::recursive_mutex mutex_;
  mutable std::optional<TensorField> comma_, curvature_, torsion_derivative_;
  mutable std::array<std::optional<TensorField>, 5> derivatives_;
  mutable std::array<std::optional<TensorField>, 25> doubles_;
  mutable std::optional<Pseudotensors> pseudotensors_;
};

/// a_{v1|m w1|n} − a_{v2|n w2|m}, read at (m, n).
TensorField commutation_lhs(const Workspace& ws, const KindTuple& kinds);
TensorField commutation_lhs(const Connection& conn, const TensorField& a, const KindTuple& kinds);

// ---------------------------------------------------------------------------
// Term bases. Each basis lists the RHS terms as printed; the matching
// *_coefficients function gives the printed scalar coefficient of each term.

std::vector<Term> classical_basis(const Workspace& ws);
std::vector<Rational> classical_coefficients();

std::vector<Term> ricci11_basis(const Workspace& ws);
std::vector<Rational> ricci11_coefficients();

std::vector<Term> ricci12_basis(const Workspace& ws);
std::vector<Rational> ricci12_coefficients();

/// (1,1) fields only; independent of the kind tuple.
std::vector<Term> first_family_basis(const Workspace& ws);
std::vector<Rational> first_family_coefficients(const KindTuple& kinds);

std::vector<Term> second_family_basis(const Workspace& ws, const RhoWeights& weights);
std::vector<Rational> second_family_coefficients(const KindTuple& kinds, const RhoWeights& weights);

/// Coefficients of the restricted forms, written with the explicit sign
/// patterns over the support; the basis is second_family_basis.
std::vector<Rational> restricted_coefficients(const KindTuple& kinds, const RhoWeights& weights,
                                              const RestrictedSupport& support);

/// Any (p,q); for (1,1) the first 19 terms coincide with first_family_basis.
std::vector<Term> general_family_basis(const Workspace& ws);
std::vector<Rational> general_family_coefficients(const KindTuple& kinds, ZReading reading = ZReading::Difference);

/// Expansion of L⌄·X, L⌄·Y, L⌄·Z, L⌄·U or L⌄·V (ids ProofX..ProofV).
TensorField proof_lhs(const Workspace& ws, IdentityId which, const RhoWeights& weights);
std::vector<Term> proof_basis(const Workspace& ws, IdentityId which);
std::vector<Rational> proof_coefficients(IdentityId which, const RhoWeights& weights);

// ---------------------------------------------------------------------------
// Printed right-hand sides.

TensorField ricci_kind0_rhs(const Connection& conn, const TensorField& a);
TensorField ricci_11_rhs(const Connection& conn, const TensorField& a);
TensorField ricci_12_rhs(const Connection& conn, const TensorField& a);
TensorField first_theorem_rhs(const Connection& conn, const TensorField& a, const KindTuple& kinds);
/// Throws ValidationError if a weight row does not sum to 1 (enforced by RhoWeights).
TensorField second_theorem_rhs(const Connection& conn, const TensorField& a, const KindTuple& kinds,
                               const RhoWeights& weights);
TensorField restricted_theorem_rhs(const Connection& conn, const TensorField& a, const KindTuple& kinds,
                                   const RhoWeights& weights, const RestrictedSupport& support);
TensorField general_theorem_rhs(const Connection& conn, const TensorField& a, const KindTuple& kinds,
                                ZReading reading = ZReading::Difference);

// ---------------------------------------------------------------------------

struct IdentityRequest {
  IdentityId id = IdentityId::FirstFamily;
  KindTuple kinds{};
  RhoWeights weights{};
  std::optional<RestrictedSupport> support;
  ZReading reading = ZReading::Difference;
};

/// Everything needed to check or audit one identity on one instance.
struct IdentityProblem {
  std::vector<Term> terms;
  std::vector<Rational> printed;
  TensorField lhs;
};

/// Throws ShapeError when the identity needs a (1,1) field and ws has another.
IdentityProblem build_problem(const Workspace& ws, const IdentityRequest& request);
/// Basis only (no LHS, no coefficients); shared by every kind tuple.
std::vector<Term> build_basis(const Workspace& ws, const IdentityRequest& request);
std::vector<Rational> printed_coefficients(const IdentityRequest& request);
TensorField build_lhs(const Workspace& ws, const IdentityRequest& request);

struct IdentityResidual {
  IdentityId identity_id = IdentityId::FirstFamily;
  KindTuple kinds{};
  TensorField residual;
  bool is_zero = true;
};

/// lhs − rhs with the zero flag. Throws ShapeError on mismatch.
IdentityResidual residual(const TensorField& lhs, const TensorField& rhs);

/// Misprints in the printed formulas and the reading the builders use.
struct TypoReading {
  std::string location;
  std::string printed;
  std::string reading;
};
const std::vector<TypoReading>& typo_readings();

}  // namespace riccitype
