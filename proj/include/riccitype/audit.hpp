#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "riccitype/identities.hpp"

namespace riccitype {

/// Solves Σ_t x_t · term_t = lhs for the scalar vector x, jointly over
/// several instances that share one term list.
///
/// Every (instance, component, monomial) triple is one linear equation.
/// A pivot set of equations is chosen once from the term values, so the
/// same factorisation serves any number of left-hand sides.
class CoefficientFitter {
 public:
  /// bases[i] is the term list evaluated on instance i; all lists must have
  /// the same length and term ids. Terms that vanish on every instance are
  /// dropped from the unknowns.
  explicit CoefficientFitter(std::vector<std::vector<Term>> bases);

  std::size_t num_terms() const { return num_terms_; }
  std::size_t rank() const { return rank_; }
  /// Columns that carry information (the term is not identically zero).
  const std::vector<std::size_t>& active_terms() const { return active_; }
  bool determined() const { return determined_; }
  const std::vector<std::vector<Term>>& bases() const { return bases_; }

  /// Fitted coefficients (zero for vanishing terms), or nullopt when the
  /// system is not uniquely determined. The solution satisfies the pivot
  /// equations only; consistency is checked with residual_is_zero.
  std::optional<std::vector<Rational>> solve(std::span<const TensorField> lhs) const;

  /// lhs[i] − Σ x_t · term_t on instance i is zero for every i.
  bool residual_is_zero(std::span<const TensorField> lhs, std::span<const Rational> x) const;

 private:
  struct Key {
    std::size_t instance;
    std::size_t component;
    Exponents monomial;
  };

  std::vector<std::vector<Term>> bases_;
  std::size_t num_terms_ = 0;
  std::vector<std::size_t> active_;
  std::vector<Key> pivots_;
  std::vector<std::vector<Rational>> inverse_;  // active × active
  std::size_t rank_ = 0;
  bool determined_ = false;
};

enum class AuditStatus {
  Unique,         // the fitted coefficients exist, are unique and verify
  Indeterminate,  // the sampled instances do not fix every coefficient
  Inconsistent,   // no choice of coefficients for these terms verifies
};

std::string_view to_string(AuditStatus status);

struct CoefficientAudit {
  std::string term_id;
  std::string formula;
  Rational printed;
  std::optional<Rational> fitted;  // nullopt unless the status is Unique
  bool vanishes = false;           // term is identically zero on the instances

  bool differs() const { return fitted && *fitted != printed && !vanishes; }
};

struct AuditResult {
  IdentityId identity = IdentityId::FirstFamily;
  KindTuple kinds{};
  AuditStatus status = AuditStatus::Indeterminate;
  std::vector<CoefficientAudit> coefficients;
  std::size_t fit_instances = 0;
  std::size_t verify_instances = 0;
  std::size_t unknowns = 0;
  std::size_t rank = 0;
  /// Printed coefficients give a zero residual on every fit and verify instance.
  bool printed_verified = false;

  std::vector<const CoefficientAudit*> discrepancies() const;
};

struct AuditOptions {
  /// Replaces the printed coefficients (fault-injection self-test).
  std::optional<std::vector<Rational>> printed_override;
};

/// Fits the identity's coefficients on `fit` and checks them exactly on
/// `fit` and `verify`. All workspaces must carry fields of the right valence.
AuditResult audit_coefficients(const IdentityRequest& request, std::span<const Workspace* const> fit,
                               std::span<const Workspace* const> verify = {}, const AuditOptions& options = {});

/// Same audit for many kind tuples; the term bases and the factorisation
/// are built once. request.kinds is ignored.
std::vector<AuditResult> audit_sweep(const IdentityRequest& request, std::span<const KindTuple> tuples,
                                     std::span<const Workspace* const> fit,
                                     std::span<const Workspace* const> verify = {});

}  // namespace riccitype
