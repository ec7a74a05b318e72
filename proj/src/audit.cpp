#include "riccitype/audit.hpp"

#include <algorithm>
#include <cstdint>

#include "riccitype/errors.hpp"

namespace riccitype {

namespace {

using std::size_t;

// Pivot selection runs modulo a large prime first: rows independent mod p
// are independent over Q, so only an apparent rank deficit needs the exact
// (slow) elimination.
constexpr std::uint64_t kPrime = 2305843009213693951ULL;  // 2^61 − 1

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kPrime);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul_mod(r, a);
    a = mul_mod(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a) { return pow_mod(a, kPrime - 2); }

// nullopt when the denominator is divisible by p.
std::optional<std::uint64_t> to_mod(const Rational& r) {
  const std::uint64_t den = mpz_fdiv_ui(r.get_den_mpz_t(), kPrime);
  if (den == 0) return std::nullopt;
  const std::uint64_t num = mpz_fdiv_ui(r.get_num_mpz_t(), kPrime);
  return mul_mod(num, inv_mod(den));
}

// Incremental row echelon form over a field; rows are kept reduced and
// normalised at their pivot column.
template <class T, class Ops>
class Echelon {
 public:
  explicit Echelon(size_t cols) : cols_(cols) {}

  // Reduces `row` and keeps it if it is independent; returns whether kept.
  bool insert(std::vector<T> row) {
    for (size_t r = 0; r < rows_.size(); ++r) {
      const size_t p = pivot_[r];
      if (Ops::is_zero(row[p])) continue;
      const T f = row[p];
      for (size_t c = 0; c < cols_; ++c) {
        if (!Ops::is_zero(rows_[r][c])) row[c] = Ops::sub(row[c], Ops::mul(f, rows_[r][c]));
      }
    }
    size_t p = 0;
    while (p < cols_ && Ops::is_zero(row[p])) ++p;
    if (p == cols_) return false;
    const T inv = Ops::inv(row[p]);
    for (auto& v : row) v = Ops::mul(v, inv);
    rows_.push_back(std::move(row));
    pivot_.push_back(p);
    return true;
  }

  size_t rank() const { return rows_.size(); }

 private:
  size_t cols_;
  std::vector<std::vector<T>> rows_;
  std::vector<size_t> pivot_;
};

struct ModOps {
  static bool is_zero(std::uint64_t a) { return a == 0; }
  static std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + (kPrime - b); }
  static std::uint64_t mul(std::uint64_t a, std::uint64_t b) { return mul_mod(a, b); }
  static std::uint64_t inv(std::uint64_t a) { return inv_mod(a); }
};

struct RationalOps {
  static bool is_zero(const Rational& a) { return sgn(a) == 0; }
  static Rational sub(const Rational& a, const Rational& b) { return a - b; }
  static Rational mul(const Rational& a, const Rational& b) { return a * b; }
  static Rational inv(const Rational& a) { return 1 / a; }
};

// Gauss-Jordan inverse of a nonsingular square matrix.
std::vector<std::vector<Rational>> invert(std::vector<std::vector<Rational>> a) {
  const size_t n = a.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && sgn(a[piv][col]) == 0) ++piv;
    if (piv == n) throw std::logic_error("pivot rows are singular");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const Rational s = 1 / a[col][col];
    for (size_t c = 0; c < n; ++c) {
      a[col][c] *= s;
      inv[col][c] *= s;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col || sgn(a[r][col]) == 0) continue;
      const Rational f = a[r][col];
      for (size_t c = 0; c < n; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

std::vector<std::vector<Term>> bases_for(std::span<const Workspace* const> spaces, const IdentityRequest& request) {
  std::vector<std::vector<Term>> out;
  out.reserve(spaces.size());
  for (const Workspace* ws : spaces) out.push_back(build_basis(*ws, request));
  return out;
}

bool all_zero(const std::vector<std::vector<Term>>& bases, std::span<const TensorField> lhs,
              std::span<const Rational> x) {
  for (size_t i = 0; i < bases.size(); ++i) {
    if (!(lhs[i] == combine(bases[i], x))) return false;
  }
  return true;
}

AuditResult assemble(const IdentityRequest& request, const std::vector<Term>& names, const CoefficientFitter& fitter,
                     std::span<const Rational> printed, const std::vector<std::vector<Term>>& verify_bases,
                     std::span<const TensorField> fit_lhs, std::span<const TensorField> verify_lhs) {
  AuditResult out;
  out.identity = request.id;
  out.kinds = request.kinds;
  out.fit_instances = fit_lhs.size();
  out.verify_instances = verify_lhs.size();
  out.unknowns = fitter.active_terms().size();
  out.rank = fitter.rank();
  out.printed_verified = fitter.residual_is_zero(fit_lhs, printed) && all_zero(verify_bases, verify_lhs, printed);

  const auto fitted = fitter.solve(fit_lhs);
  if (!fitted) {
    out.status = AuditStatus::Indeterminate;
  } else {
    const bool ok = fitter.residual_is_zero(fit_lhs, *fitted) && all_zero(verify_bases, verify_lhs, *fitted);
    out.status = ok ? AuditStatus::Unique : AuditStatus::Inconsistent;
  }

  const auto& active = fitter.active_terms();
  for (size_t t = 0; t < names.size(); ++t) {
    CoefficientAudit c;
    c.term_id = names[t].id;
    c.formula = names[t].formula;
    c.printed = printed[t];
    c.vanishes = std::find(active.begin(), active.end(), t) == active.end();
    if (out.status == AuditStatus::Unique && !c.vanishes) c.fitted = (*fitted)[t];
    out.coefficients.push_back(std::move(c));
  }
  return out;
}

}  // namespace

CoefficientFitter::CoefficientFitter(std::vector<std::vector<Term>> bases) : bases_(std::move(bases)) {
  if (bases_.empty()) throw ShapeError("fitter needs at least one instance");
  num_terms_ = bases_[0].size();
  for (const auto& b : bases_) {
    if (b.size() != num_terms_) throw ShapeError("instances disagree on the number of terms");
    for (size_t t = 0; t < num_terms_; ++t)
      if (b[t].id != bases_[0][t].id) throw ShapeError("instances disagree on term ids");
  }
  for (size_t t = 0; t < num_terms_; ++t) {
    const bool nonzero = std::any_of(bases_.begin(), bases_.end(), [&](const auto& b) { return !b[t].value.is_zero(); });
    if (nonzero) active_.push_back(t);
  }
  const size_t n = active_.size();
  if (n == 0) {
    determined_ = true;
    return;
  }

  // Candidate equations in a fixed order: instance, component, monomial.
  auto for_each_row = [&](auto&& visit) {
    for (size_t i = 0; i < bases_.size(); ++i) {
      const size_t comps = bases_[i][active_[0]].value.size();
      for (size_t c = 0; c < comps; ++c) {
        std::vector<Exponents> monomials;
        for (size_t t : active_)
          for (const auto& term : bases_[i][t].value.component(c).terms()) monomials.push_back(term.exponents);
        std::sort(monomials.begin(), monomials.end());
        monomials.erase(std::unique(monomials.begin(), monomials.end()), monomials.end());
        for (auto& e : monomials) {
          if (!visit(Key{i, c, std::move(e)})) return;
        }
      }
    }
  };
  auto exact_row = [&](const Key& k) {
    std::vector<Rational> row(n);
    for (size_t a = 0; a < n; ++a) row[a] = bases_[k.instance][active_[a]].value.component(k.component).coefficient(k.monomial);
    return row;
  };

  Echelon<std::uint64_t, ModOps> mod(n);
  bool mod_ok = true;
  for_each_row([&](Key k) {
    const auto exact = exact_row(k);
    std::vector<std::uint64_t> row(n);
    for (size_t a = 0; a < n; ++a) {
      const auto m = to_mod(exact[a]);
      if (!m) {
        mod_ok = false;
        return false;
      }
      row[a] = *m;
    }
    if (mod.insert(std::move(row))) pivots_.push_back(std::move(k));
    return pivots_.size() < n;
  });

  if (!mod_ok || pivots_.size() < n) {
    pivots_.clear();
    Echelon<Rational, RationalOps> exact(n);
    for_each_row([&](Key k) {
      if (exact.insert(exact_row(k))) pivots_.push_back(std::move(k));
      return pivots_.size() < n;
    });
  }
  rank_ = pivots_.size();
  determined_ = rank_ == n;
  if (!determined_) return;

  std::vector<std::vector<Rational>> a;
  a.reserve(n);
  for (const auto& k : pivots_) a.push_back(exact_row(k));
  inverse_ = invert(std::move(a));
}

std::optional<std::vector<Rational>> CoefficientFitter::solve(std::span<const TensorField> lhs) const {
  if (lhs.size() != bases_.size()) throw ShapeError("one left-hand side per instance is required");
  if (!determined_) return std::nullopt;
  const size_t n = active_.size();
  std::vector<Rational> b(n);
  for (size_t r = 0; r < n; ++r) {
    const Key& k = pivots_[r];
    b[r] = lhs[k.instance].component(k.component).coefficient(k.monomial);
  }
  std::vector<Rational> x(num_terms_, Rational(0));
  for (size_t r = 0; r < n; ++r) {
    Rational s(0);
    for (size_t c = 0; c < n; ++c)
      if (sgn(inverse_[r][c]) != 0 && sgn(b[c]) != 0) s += inverse_[r][c] * b[c];
    x[active_[r]] = s;
  }
  return x;
}

bool CoefficientFitter::residual_is_zero(std::span<const TensorField> lhs, std::span<const Rational> x) const {
  if (lhs.size() != bases_.size()) throw ShapeError("one left-hand side per instance is required");
  return all_zero(bases_, lhs, x);
}

std::string_view to_string(AuditStatus status) {
  switch (status) {
    case AuditStatus::Unique: return "unique";
    case AuditStatus::Indeterminate: return "indeterminate";
    default: return "inconsistent";
  }
}

std::vector<const CoefficientAudit*> AuditResult::discrepancies() const {
  std::vector<const CoefficientAudit*> out;
  for (const auto& c : coefficients)
    if (c.differs()) out.push_back(&c);
  return out;
}

AuditResult audit_coefficients(const IdentityRequest& request, std::span<const Workspace* const> fit,
                               std::span<const Workspace* const> verify, const AuditOptions& options) {
  const std::vector<Rational> printed = options.printed_override ? *options.printed_override : printed_coefficients(request);
  CoefficientFitter fitter(bases_for(fit, request));
  if (printed.size() != fitter.num_terms()) throw ShapeError("printed coefficient count does not match the terms");
  const auto verify_bases = bases_for(verify, request);
  std::vector<TensorField> fit_lhs, verify_lhs;
  for (const Workspace* ws : fit) fit_lhs.push_back(build_lhs(*ws, request));
  for (const Workspace* ws : verify) verify_lhs.push_back(build_lhs(*ws, request));
  return assemble(request, fitter.bases()[0], fitter, printed, verify_bases, fit_lhs, verify_lhs);
}

std::vector<AuditResult> audit_sweep(const IdentityRequest& request, std::span<const KindTuple> tuples,
                                     std::span<const Workspace* const> fit, std::span<const Workspace* const> verify) {
  CoefficientFitter fitter(bases_for(fit, request));
  const auto verify_bases = bases_for(verify, request);
  std::vector<AuditResult> out;
  out.reserve(tuples.size());
  for (const KindTuple& k : tuples) {
    IdentityRequest r = request;
    r.kinds = k;
    const auto printed = printed_coefficients(r);
    std::vector<TensorField> fit_lhs, verify_lhs;
    for (const Workspace* ws : fit) fit_lhs.push_back(build_lhs(*ws, r));
    for (const Workspace* ws : verify) verify_lhs.push_back(build_lhs(*ws, r));
    out.push_back(assemble(r, fitter.bases()[0], fitter, printed, verify_bases, fit_lhs, verify_lhs));
  }
  return out;
}

}  // namespace riccitype
