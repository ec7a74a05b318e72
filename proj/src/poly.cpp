#include "riccitype/poly.hpp"

#include <algorithm>
#include <sstream>

#include "riccitype/errors.hpp"

namespace riccitype {

Rational make_rational(long long num, long long den) {
  if (den == 0) throw ParameterError("rational with zero denominator");
  Rational r(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw ParameterError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0) {
    throw ValidationError("cannot parse rational '" + text + "'");
  }
  if (r.get_den() == 0) throw ValidationError("rational with zero denominator: " + text);
  r.canonicalize();
  return r;
}

namespace {

bool exponent_less(const Poly::Term& a, const Poly::Term& b) { return a.exponents < b.exponents; }

// Sorts, merges equal monomials and drops zero coefficients.
void normalize(std::vector<Poly::Term>& terms) {
  std::sort(terms.begin(), terms.end(), exponent_less);
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i + 1;
    Rational acc = std::move(terms[i].coeff);
    while (j < terms.size() && terms[j].exponents == terms[i].exponents) {
      acc += terms[j].coeff;
      ++j;
    }
    if (acc != 0) {
      if (out != i) terms[out].exponents = std::move(terms[i].exponents);
      terms[out].coeff = std::move(acc);
      ++out;
    }
    i = j;
  }
  terms.resize(out);
}

}  // namespace

// Coefficients entering from outside are canonicalised: gmpxx compares
// non-canonical fractions such as 5/5 unequal to 1.
Poly::Poly(std::size_t num_vars, const Rational& constant) : num_vars_(num_vars) {
  Rational c = constant;
  c.canonicalize();
  if (c != 0) terms_.push_back({Exponents(num_vars, 0), std::move(c)});
}

Poly Poly::variable(std::size_t num_vars, std::size_t k) {
  if (k >= num_vars) throw IndexError("variable index out of range");
  Exponents e(num_vars, 0);
  e[k] = 1;
  return monomial(num_vars, std::move(e), Rational(1));
}

Poly Poly::monomial(std::size_t num_vars, Exponents exponents, const Rational& coeff) {
  if (exponents.size() != num_vars) throw DimensionError("exponent vector length != num_vars");
  Poly p(num_vars);
  Rational c = coeff;
  c.canonicalize();
  if (c != 0) p.terms_.push_back({std::move(exponents), std::move(c)});
  return p;
}

Poly Poly::from_terms(std::size_t num_vars, std::vector<Term> terms) {
  for (const auto& t : terms) {
    if (t.exponents.size() != num_vars) throw DimensionError("exponent vector length != num_vars");
  }
  Poly p(num_vars);
  p.terms_ = std::move(terms);
  for (auto& t : p.terms_) t.coeff.canonicalize();
  normalize(p.terms_);
  return p;
}

int Poly::degree() const {
  int best = -1;
  for (const auto& t : terms_) {
    int d = 0;
    for (auto e : t.exponents) d += static_cast<int>(e);
    best = std::max(best, d);
  }
  return best;
}

Rational Poly::coefficient(const Exponents& exponents) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), Term{exponents, Rational(0)}, exponent_less);
  if (it != terms_.end() && it->exponents == exponents) return it->coeff;
  return Rational(0);
}

void Poly::check_compatible(const Poly& rhs) const {
  if (num_vars_ != rhs.num_vars_) {
    throw DimensionError("polynomial variable count mismatch: " + std::to_string(num_vars_) + " vs " +
                         std::to_string(rhs.num_vars_));
  }
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

Poly& Poly::add_scaled(const Poly& rhs, const Rational& s) {
  check_compatible(rhs);
  if (rhs.terms_.empty() || s == 0) return *this;
  std::vector<Term> merged;
  merged.reserve(terms_.size() + rhs.terms_.size());
  auto a = terms_.begin();
  auto b = rhs.terms_.begin();
  while (a != terms_.end() || b != rhs.terms_.end()) {
    if (b == rhs.terms_.end() || (a != terms_.end() && a->exponents < b->exponents)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->exponents < a->exponents) {
      merged.push_back({b->exponents, b->coeff * s});
      ++b;
    } else {
      Rational c = a->coeff + b->coeff * s;
      if (c != 0) merged.push_back({std::move(a->exponents), std::move(c)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Poly& Poly::operator+=(const Poly& rhs) { return add_scaled(rhs, Rational(1)); }
Poly& Poly::operator-=(const Poly& rhs) { return add_scaled(rhs, Rational(-1)); }

Poly& Poly::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= s;
  return *this;
}

Poly& Poly::operator*=(const Poly& rhs) {
  *this = *this * rhs;
  return *this;
}

Poly operator*(const Poly& lhs, const Poly& rhs) {
  lhs.check_compatible(rhs);
  Poly out(lhs.num_vars_);
  if (lhs.is_zero() || rhs.is_zero()) return out;
  out.terms_.reserve(lhs.terms_.size() * rhs.terms_.size());
  for (const auto& x : lhs.terms_) {
    for (const auto& y : rhs.terms_) {
      Exponents e(lhs.num_vars_);
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = x.exponents[k] + y.exponents[k];
      out.terms_.push_back({std::move(e), x.coeff * y.coeff});
    }
  }
  normalize(out.terms_);
  return out;
}

Poly Poly::diff(std::size_t k) const {
  if (k >= num_vars_) throw IndexError("differentiation variable out of range");
  Poly out(num_vars_);
  for (const auto& t : terms_) {
    if (t.exponents[k] == 0) continue;
    Term d{t.exponents, t.coeff * t.exponents[k]};
    --d.exponents[k];
    out.terms_.push_back(std::move(d));
  }
  // Decrementing the same coordinate of every surviving term keeps them
  // distinct and in lexicographic order.
  return out;
}

Rational Poly::eval(std::span<const Rational> point) const {
  if (point.size() != num_vars_) throw DimensionError("evaluation point length != num_vars");
  Rational sum(0);
  for (const auto& t : terms_) {
    Rational v = t.coeff;
    for (std::size_t k = 0; k < num_vars_; ++k) {
      for (std::uint32_t e = 0; e < t.exponents[k]; ++e) v *= point[k];
    }
    sum += v;
  }
  return sum;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool constant = std::all_of(t.exponents.begin(), t.exponents.end(), [](auto e) { return e == 0; });
    if (c != 1 || constant) {
      os << c.get_str();
      if (!constant) os << "*";
    }
    bool first_var = true;
    for (std::size_t k = 0; k < t.exponents.size(); ++k) {
      if (t.exponents[k] == 0) continue;
      if (!first_var) os << "*";
      first_var = false;
      os << "x" << (k + 1);
      if (t.exponents[k] > 1) os << "^" << t.exponents[k];
    }
  }
  return os.str();
}

}  // namespace riccitype
