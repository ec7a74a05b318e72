#include "riccitype/identities.hpp"

#include <algorithm>

#include "riccitype/errors.hpp"

namespace riccitype {

namespace {

using std::size_t;

struct KindValues {
  int c1, w1c, c2, w2c;  // c_{v1}, c_{w1}, c_{v2}, c_{w2}
  int d1, w1d, d2, w2d;  // d_{v1}, d_{w1}, d_{v2}, d_{w2}
};

KindValues values(const KindTuple& k) {
  using K = KindCoefficients;
  return {K::c(k.v1), K::c(k.w1), K::c(k.v2), K::c(k.w2), K::d(k.v1), K::d(k.w1), K::d(k.v2), K::d(k.w2)};
}

Rational q(long v) { return Rational(v); }

const std::vector<std::pair<IdentityId, std::string_view>>& identity_names() {
  static const std::vector<std::pair<IdentityId, std::string_view>> names{
      {IdentityId::ClassicalRicci, "classical_ricci"},
      {IdentityId::RicciFirstFirst, "ricci_1_1"},
      {IdentityId::RicciFirstSecond, "ricci_1_2"},
      {IdentityId::FirstFamily, "first_family"},
      {IdentityId::SecondFamily, "second_family"},
      {IdentityId::RestrictedThree, "restricted_three"},
      {IdentityId::RestrictedTwo, "restricted_two"},
      {IdentityId::GeneralFamily, "general_family"},
      {IdentityId::ProofX, "proof_x"},
      {IdentityId::ProofY, "proof_y"},
      {IdentityId::ProofZ, "proof_z"},
      {IdentityId::ProofU, "proof_u"},
      {IdentityId::ProofV, "proof_v"},
  };
  return names;
}

bool is_proof(IdentityId id) {
  return id == IdentityId::ProofX || id == IdentityId::ProofY || id == IdentityId::ProofZ || id == IdentityId::ProofU ||
         id == IdentityId::ProofV;
}

int proof_slot(IdentityId id) {
  switch (id) {
    case IdentityId::ProofX: return 1;
    case IdentityId::ProofY: return 2;
    case IdentityId::ProofZ: return 3;
    case IdentityId::ProofU: return 4;
    case IdentityId::ProofV: return 5;
    default: throw ParameterError("not a proof-expansion identity");
  }
}

void check_weights_on_support(const RhoWeights& weights, const RestrictedSupport& support) {
  for (int slot = 1; slot <= 5; ++slot)
    for (int k = 0; k < 5; ++k) {
      const bool on = std::find(support.kinds.begin(), support.kinds.end(), k) != support.kinds.end();
      if (!on && sgn(weights.at(slot, k)) != 0) throw ValidationError("weight outside the restricted support");
    }
}

}  // namespace

std::string KindTuple::to_string() const {
  return std::to_string(v1.value()) + "," + std::to_string(w1.value()) + "," + std::to_string(v2.value()) + "," +
         std::to_string(w2.value());
}

std::vector<KindTuple> all_kind_tuples() {
  std::vector<KindTuple> out;
  out.reserve(625);
  for (Kind v1 : all_kinds())
    for (Kind w1 : all_kinds())
      for (Kind v2 : all_kinds())
        for (Kind w2 : all_kinds()) out.push_back({v1, w1, v2, w2});
  return out;
}

std::string_view to_string(IdentityId id) {
  for (const auto& [key, name] : identity_names())
    if (key == id) return name;
  throw ParameterError("unknown identity id");
}

IdentityId parse_identity_id(std::string_view name) {
  for (const auto& [key, n] : identity_names())
    if (n == name) return key;
  throw ValidationError("unknown identity: " + std::string(name));
}

const std::vector<IdentityId>& all_identity_ids() {
  static const std::vector<IdentityId> ids = [] {
    std::vector<IdentityId> out;
    for (const auto& entry : identity_names()) out.push_back(entry.first);
    return out;
  }();
  return ids;
}

// --- weights ---------------------------------------------------------------

RhoWeights::RhoWeights() {
  for (auto& row : rows_) {
    row.fill(Rational(0));
    row[0] = 1;
  }
}

RhoWeights::RhoWeights(const std::array<Row, 5>& rows) : rows_(rows) {
  for (auto& row : rows_)
    for (auto& w : row) w.canonicalize();
  for (size_t z = 0; z < 5; ++z) {
    Rational sum(0);
    for (const auto& w : rows_[z]) sum += w;
    if (sum != 1) throw ValidationError("weight row " + std::to_string(z + 1) + " sums to " + to_string(sum) + ", not 1");
  }
}

RhoWeights RhoWeights::concentrated(Kind k) {
  std::array<Row, 5> rows;
  for (auto& row : rows) {
    row.fill(Rational(0));
    row[static_cast<size_t>(k.value())] = 1;
  }
  return RhoWeights(rows);
}

const RhoWeights::Row& RhoWeights::row(int slot) const {
  if (slot < 1 || slot > 5) throw IndexError("weight slot must be 1..5");
  return rows_[static_cast<size_t>(slot - 1)];
}

int SignPattern::alternating(int k) {
  if (k < 1 || k > 4) throw IndexError("sign pattern index must be 1..4");
  return (k - 1) % 2 == 0 ? 1 : -1;
}

int SignPattern::paired(int k) {
  if (k < 1 || k > 4) throw IndexError("sign pattern index must be 1..4");
  return (k / 2) % 2 == 0 ? 1 : -1;
}

Rational SignPattern::alternating_sum(const RhoWeights::Row& row) {
  Rational s(0);
  for (int k = 1; k <= 4; ++k) s += alternating(k) * row[static_cast<size_t>(k)];
  return s;
}

Rational SignPattern::paired_sum(const RhoWeights::Row& row) {
  Rational s(0);
  for (int k = 1; k <= 4; ++k) s += paired(k) * row[static_cast<size_t>(k)];
  return s;
}

void validate(const RestrictedSupport& support) {
  const auto& k = support.kinds;
  if (!std::is_sorted(k.begin(), k.end()) || std::adjacent_find(k.begin(), k.end()) != k.end())
    throw ValidationError("support must be strictly increasing");
  if (support.mode == RestrictedMode::ThreeKinds) {
    if (k.size() != 3 || k.front() < 1 || k.back() > 4) throw ValidationError("three-kind support must be n1<n2<n3 in 1..4");
    return;
  }
  if (k.size() != 3 || k[0] != 0) throw ValidationError("two-kind support must be {0, n1, n2}");
  const bool admitted = (k[1] == 1 || k[1] == 2) && (k[2] == 3 || k[2] == 4);
  if (!admitted) throw ValidationError("pair (n1,n2) must be one of (1,3),(1,4),(2,3),(2,4)");
}

std::vector<RestrictedSupport> admissible_supports(RestrictedMode mode) {
  if (mode == RestrictedMode::ThreeKinds) {
    return {{mode, {1, 2, 3}}, {mode, {1, 2, 4}}, {mode, {1, 3, 4}}, {mode, {2, 3, 4}}};
  }
  return {{mode, {0, 1, 3}}, {mode, {0, 1, 4}}, {mode, {0, 2, 3}}, {mode, {0, 2, 4}}};
}

RhoWeights restricted_weights(const RestrictedSupport& support, const std::array<std::vector<Rational>, 5>& values) {
  validate(support);
  std::array<RhoWeights::Row, 5> rows;
  for (size_t z = 0; z < 5; ++z) {
    if (values[z].size() != support.kinds.size()) throw ValidationError("weight row length must match the support");
    rows[z].fill(Rational(0));
    for (size_t s = 0; s < support.kinds.size(); ++s) rows[z][static_cast<size_t>(support.kinds[s])] = values[z][s];
  }
  return RhoWeights(rows);
}

// --- workspace ----------------------------------------------------------------

Workspace::Workspace(Connection connection, TensorField field)
    : connection_(std::move(connection)), field_(std::move(field)) {
  if (field_.dim() != connection_.dim()) throw ShapeError("field and connection dimensions differ");
}

template <class F>
const TensorField& Workspace::cached(std::optional<TensorField>& slot, F&& make) const {
  std::lock_guard lock(mutex_);
  if (!slot) slot = make();
  return *slot;
}

const TensorField& Workspace::comma() const {
  return cached(comma_, [&] { return comma_derivative(field_); });
}

const TensorField& Workspace::derivative(Kind z) const {
  return cached(derivatives_[static_cast<size_t>(z.value())], [&] { return cov_deriv(connection_, field_, z); });
}

const TensorField& Workspace::double_derivative(Kind v, Kind w) const {
  return cached(doubles_[static_cast<size_t>(5 * v.value() + w.value())],
                [&] { return cov_deriv(connection_, derivative(v), w); });
}

const TensorField& Workspace::curvature() const {
  return cached(curvature_, [&] { return curvature_R(connection_); });
}

const TensorField& Workspace::torsion_derivative() const {
  return cached(torsion_derivative_, [&] { return riccitype::torsion_derivative(connection_); });
}

const Pseudotensors& Workspace::pseudotensors() const {
  std::lock_guard lock(mutex_);
  if (!pseudotensors_) pseudotensors_ = pseudotensors_A(connection_);
  return *pseudotensors_;
}

TensorField commutation_lhs(const Workspace& ws, const KindTuple& k) {
  return ws.double_derivative(k.v1, k.w1) - swap_last_two(ws.double_derivative(k.v2, k.w2));
}

TensorField commutation_lhs(const Connection& conn, const TensorField& a, const KindTuple& k) {
  return double_cov_deriv(conn, a, k.v1, k.w1) - swap_last_two(double_cov_deriv(conn, a, k.v2, k.w2));
}

// --- printed coefficients ----------------------------------------------------

std::vector<Rational> classical_coefficients() { return {q(1), q(1)}; }

std::vector<Rational> ricci11_coefficients() {
  return {
      // a^α_j A₁^i_{αmn}
      q(1), q(1), q(-1), q(-1), q(1), q(-2), q(1),
      // −a^i_α A₂^α_{jmn}
      q(1), q(1), q(-1), q(-1), q(1), q(-2), q(1),
      // 4 × single bracket (each summand carries ½)
      q(2), q(-2), q(-2), q(2),
      // 4 × double bracket
      q(2), q(-2), q(-2), q(2),
      // 2 L⌄^α_{mn} a^i_{j1|α}
      q(2),
  };
}

std::vector<Rational> ricci12_coefficients() {
  return {
      q(2), q(-2), q(-2), q(2), q(2),             // first-derivative terms
      q(1), q(1), q(-1), q(-1), q(1), q(-2),      // a^α_j{…}
      q(1), q(1), q(-1), q(-1), q(1), q(-2),      // −a^i_α{…}
  };
}

std::vector<Rational> first_family_coefficients(const KindTuple& kinds) {
  const KindValues k = values(kinds);
  return {
      q(k.c1 - k.w2c),
      q(k.w1c - k.c2),
      q(k.d1 - k.w2d),
      q(k.w1d - k.d2),
      q(k.w1d + k.w2d),
      // a^α_j{…}
      q(1),
      q(k.c1),
      q(-k.c2),
      q(k.c1 * k.w1c - k.c2 * (k.w2c + k.w2d)),
      q(k.c1 * (k.w1c + k.w1d) - k.c2 * k.w2c),
      q(-(k.c1 * k.w1d + k.c2 * k.w2d)),
      // −a^i_α{…}
      q(1),
      q(-k.d1),
      q(k.d2),
      q(-(k.d1 * (k.w1c + k.w1d) - k.d2 * k.w2d)),
      q(-(k.d1 * k.w1d - k.d2 * (k.w2c + k.w2d))),
      q(k.d1 * k.w1d + k.d2 * k.w2d),
      // a^α_β{…}
      q(k.w1c * k.d1 - k.c2 * k.w2d),
      q(k.c1 * k.w1d - k.w2c * k.d2),
  };
}

std::vector<Rational> second_family_coefficients(const KindTuple& kinds, const RhoWeights& w) {
  const KindValues k = values(kinds);
  auto s1 = [&](int slot) { return SignPattern::alternating_sum(w.row(slot)); };
  auto s2 = [&](int slot) { return SignPattern::paired_sum(w.row(slot)); };
  std::vector<Rational> out = first_family_coefficients(kinds);
  // p₁, p₂, p₃ replace the a^α_j quadratic coefficients.
  out[8] = q(k.c1 * k.w1c - k.c2 * (k.w2c + k.w2d)) - q(k.w1c - k.c2) * s1(2);
  out[9] = q(k.c1 * (k.w1c + k.w1d) - k.c2 * k.w2c) - q(k.c1 - k.w2c) * s1(1);
  out[10] = q(-k.c1 * k.w1d - k.c2 * k.w2d) + q(k.w1d + k.w2d) * s1(5);
  // q₁, q₂, q₃.
  out[14] = q(-k.d1 * (k.w1c + k.w1d) + k.d2 * k.w2d) - q(k.d1 - k.w2d) * s2(3);
  out[15] = q(-k.d1 * k.w1d + k.d2 * (k.w2c + k.w2d)) - q(k.w1d - k.d2) * s2(4);
  out[16] = q(k.d1 * k.w1d + k.d2 * k.w2d) - q(k.w1d + k.w2d) * s2(5);
  // r₁, r₂.
  out[17] = q(k.w1c * k.d1 - k.c2 * k.w2d) + q(k.w1c - k.c2) * s2(2) - q(k.d1 - k.w2d) * s1(3);
  out[18] = q(k.c1 * k.w1d - k.w2c * k.d2) + q(k.c1 - k.w2c) * s2(1) - q(k.w1d - k.d2) * s1(4);
  return out;
}

std::vector<Rational> restricted_coefficients(const KindTuple& kinds, const RhoWeights& w,
                                              const RestrictedSupport& support) {
  validate(support);
  check_weights_on_support(w, support);
  const KindValues k = values(kinds);
  // Sums over the nonzero kinds of the support with the two explicit sign
  // rules (−1)^(n−1) and (−1)^⌊n/2⌋.
  auto odd = [&](int slot) {
    Rational s(0);
    for (int n : support.kinds)
      if (n > 0) s += ((n - 1) % 2 == 0 ? 1 : -1) * w.at(slot, n);
    return s;
  };
  auto floor_half = [&](int slot) {
    Rational s(0);
    for (int n : support.kinds)
      if (n > 0) s += ((n / 2) % 2 == 0 ? 1 : -1) * w.at(slot, n);
    return s;
  };
  const bool two = support.mode == RestrictedMode::TwoKinds;

  std::vector<Rational> out = first_family_coefficients(kinds);
  out[8] = q(k.c1 * k.w1c - k.c2 * (k.w2c + k.w2d)) - q(k.w1c - k.c2) * odd(2);
  out[9] = q(k.c1 * (k.w1c + k.w1d) - k.c2 * k.w2c) - q(k.c1 - k.w2c) * odd(1);
  out[10] = q(-k.c1 * k.w1d - k.c2 * k.w2d) + q(k.w1d + k.w2d) * odd(5);
  out[14] = q(-k.d1 * (k.w1c + k.w1d) + k.d2 * k.w2d) - q(k.d1 - k.w2d) * floor_half(3);
  // The two-kind form prints −d_{v2}(c_{w2}+d_{w2}) where the three-kind
  // form prints +d_{v2}(c_{w2}+d_{w2}); each builder keeps its own sign.
  const int q2_sign = two ? -1 : 1;
  out[15] = q(-k.d1 * k.w1d + q2_sign * k.d2 * (k.w2c + k.w2d)) - q(k.w1d - k.d2) * floor_half(4);
  out[16] = q(k.d1 * k.w1d + k.d2 * k.w2d) - q(k.w1d + k.w2d) * floor_half(5);
  out[17] = q(k.w1c * k.d1 - k.c2 * k.w2d) + q(k.w1c - k.c2) * floor_half(2) - q(k.d1 - k.w2d) * odd(3);
  out[18] = q(k.c1 * k.w1d - k.w2c * k.d2) + q(k.c1 - k.w2c) * floor_half(1) - q(k.w1d - k.d2) * odd(4);
  return out;
}

std::vector<Rational> general_family_coefficients(const KindTuple& kinds, ZReading reading) {
  const KindValues k = values(kinds);
  std::vector<Rational> out = first_family_coefficients(kinds);
  if (reading == ZReading::Difference) {
    out.push_back(q(k.c1 * k.w1c - k.c2 * k.w2c));
    out.push_back(q(k.d1 * k.w1d - k.d2 * k.w2d));
  } else {
    out.push_back(q(k.c1 * k.w1c));
    out.push_back(q(k.d1 * k.w1d));
  }
  return out;
}

std::vector<Rational> proof_coefficients(IdentityId which, const RhoWeights& weights) {
  const auto& row = weights.row(proof_slot(which));
  return {q(1), SignPattern::alternating_sum(row), -SignPattern::paired_sum(row)};
}

// --- printed right-hand sides --------------------------------------------------

TensorField ricci_kind0_rhs(const Connection& conn, const TensorField& a) {
  const Workspace ws(conn, a);
  const auto basis = classical_basis(ws);
  return combine(basis, classical_coefficients());
}

TensorField ricci_11_rhs(const Connection& conn, const TensorField& a) {
  const Workspace ws(conn, a);
  return combine(ricci11_basis(ws), ricci11_coefficients());
}

TensorField ricci_12_rhs(const Connection& conn, const TensorField& a) {
  const Workspace ws(conn, a);
  return combine(ricci12_basis(ws), ricci12_coefficients());
}

TensorField first_theorem_rhs(const Connection& conn, const TensorField& a, const KindTuple& kinds) {
  const Workspace ws(conn, a);
  return combine(first_family_basis(ws), first_family_coefficients(kinds));
}

TensorField second_theorem_rhs(const Connection& conn, const TensorField& a, const KindTuple& kinds,
                               const RhoWeights& weights) {
  const Workspace ws(conn, a);
  return combine(second_family_basis(ws, weights), second_family_coefficients(kinds, weights));
}

TensorField restricted_theorem_rhs(const Connection& conn, const TensorField& a, const KindTuple& kinds,
                                   const RhoWeights& weights, const RestrictedSupport& support) {
  const auto coeffs = restricted_coefficients(kinds, weights, support);
  const Workspace ws(conn, a);
  return combine(second_family_basis(ws, weights), coeffs);
}

TensorField general_theorem_rhs(const Connection& conn, const TensorField& a, const KindTuple& kinds,
                                ZReading reading) {
  const Workspace ws(conn, a);
  return combine(general_family_basis(ws), general_family_coefficients(kinds, reading));
}

// --- generic problem interface -------------------------------------------------

std::vector<Term> build_basis(const Workspace& ws, const IdentityRequest& r) {
  switch (r.id) {
    case IdentityId::ClassicalRicci: return classical_basis(ws);
    case IdentityId::RicciFirstFirst: return ricci11_basis(ws);
    case IdentityId::RicciFirstSecond: return ricci12_basis(ws);
    case IdentityId::FirstFamily: return first_family_basis(ws);
    case IdentityId::SecondFamily:
    case IdentityId::RestrictedThree:
    case IdentityId::RestrictedTwo: return second_family_basis(ws, r.weights);
    case IdentityId::GeneralFamily: return general_family_basis(ws);
    default: return proof_basis(ws, r.id);
  }
}

std::vector<Rational> printed_coefficients(const IdentityRequest& r) {
  switch (r.id) {
    case IdentityId::ClassicalRicci: return classical_coefficients();
    case IdentityId::RicciFirstFirst: return ricci11_coefficients();
    case IdentityId::RicciFirstSecond: return ricci12_coefficients();
    case IdentityId::FirstFamily: return first_family_coefficients(r.kinds);
    case IdentityId::SecondFamily: return second_family_coefficients(r.kinds, r.weights);
    case IdentityId::RestrictedThree:
    case IdentityId::RestrictedTwo: {
      if (!r.support) throw ValidationError("restricted identity needs a support");
      const RestrictedMode expected =
          r.id == IdentityId::RestrictedThree ? RestrictedMode::ThreeKinds : RestrictedMode::TwoKinds;
      if (r.support->mode != expected) throw ValidationError("support mode does not match the identity");
      return restricted_coefficients(r.kinds, r.weights, *r.support);
    }
    case IdentityId::GeneralFamily: return general_family_coefficients(r.kinds, r.reading);
    default: return proof_coefficients(r.id, r.weights);
  }
}

TensorField build_lhs(const Workspace& ws, const IdentityRequest& r) {
  switch (r.id) {
    case IdentityId::ClassicalRicci: return commutation_lhs(ws, {Kind(0), Kind(0), Kind(0), Kind(0)});
    case IdentityId::RicciFirstFirst: return commutation_lhs(ws, {Kind(1), Kind(1), Kind(1), Kind(1)});
    case IdentityId::RicciFirstSecond: return commutation_lhs(ws, {Kind(1), Kind(2), Kind(1), Kind(2)});
    default:
      if (is_proof(r.id)) return proof_lhs(ws, r.id, r.weights);
      return commutation_lhs(ws, r.kinds);
  }
}

IdentityProblem build_problem(const Workspace& ws, const IdentityRequest& r) {
  IdentityProblem p;
  p.printed = printed_coefficients(r);
  p.terms = build_basis(ws, r);
  p.lhs = build_lhs(ws, r);
  return p;
}

IdentityResidual residual(const TensorField& lhs, const TensorField& rhs) {
  if (lhs.dim() != rhs.dim() || lhs.valence() != rhs.valence()) throw ShapeError("residual operands differ in shape");
  IdentityResidual r;
  r.residual = lhs - rhs;
  r.is_zero = r.residual.is_zero();
  return r;
}

const std::vector<TypoReading>& typo_readings() {
  static const std::vector<TypoReading> readings{
      {"U mixture, kind-3 summand", "ρ^4_3 A^i_{j3|k}", "ρ^4_3 a^i_{j3|k}"},
      {"alternating sign sum, last summand", "ρ^{4−1} ρ^z_4", "(−1)^{4−1} ρ^z_4"},
      {"(p,q) double derivative, lower quadratic double sum", "Σ_{ℓ=1}^{s−1}", "Σ_{ℓ=1}^{l−1}"},
      {"(p,q) lower first-derivative sum, n-slot summand", "a_{j_1…j_{r−1} α j_{r+1}…j_q|m}",
       "a_{j_1…j_{l−1} α j_{l+1}…j_q|m}"},
      {"three-kind restricted q̃₂, first paired summand", "(−1)^{⌊n₁/2⌋} ρ^4_1", "(−1)^{⌊n₁/2⌋} ρ^4_{n₁}"},
  };
  return readings;
}

}  // namespace riccitype
