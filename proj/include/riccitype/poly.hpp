#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "riccitype/rational.hpp"

namespace riccitype {

using Exponents = std::vector<std::uint32_t>;

/// Sparse multivariate polynomial over Q in a fixed number of coordinate
/// variables.
///
/// Terms are kept sorted by exponent vector (lexicographic) with no zero
/// coefficients, so equal polynomials always have identical term lists and
/// the zero polynomial has no terms. Values are immutable once built; every
/// operation returns a fresh canonical polynomial.
class Poly {
 public:
  struct Term {
    Exponents exponents;
    Rational coeff;

    friend bool operator==(const Term&, const Term&) = default;
  };

  Poly() = default;
  explicit Poly(std::size_t num_vars) : num_vars_(num_vars) {}
  Poly(std::size_t num_vars, const Rational& constant);

  static Poly variable(std::size_t num_vars, std::size_t k);
  static Poly monomial(std::size_t num_vars, Exponents exponents, const Rational& coeff);
  /// Accepts unsorted input with repeated monomials and zero coefficients.
  static Poly from_terms(std::size_t num_vars, std::vector<Term> terms);

  std::size_t num_vars() const { return num_vars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t num_terms() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  Rational coefficient(const Exponents& exponents) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  Poly& operator*=(const Poly& rhs);
  Poly& operator*=(const Rational& s);
  /// this += s * rhs, without materialising the scaled copy.
  Poly& add_scaled(const Poly& rhs, const Rational& s);

  friend Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
  friend Poly operator-(Poly lhs, const Poly& rhs) { return lhs -= rhs; }
  friend Poly operator*(const Poly& lhs, const Poly& rhs);
  friend Poly operator*(Poly p, const Rational& s) { return p *= s; }
  friend Poly operator*(const Rational& s, Poly p) { return p *= s; }

  friend bool operator==(const Poly&, const Poly&) = default;

  /// Formal partial derivative with respect to x^k (0-based).
  Poly diff(std::size_t k) const;
  Rational eval(std::span<const Rational> point) const;

  /// Human-readable form with 1-based variable names x1..xN.
  std::string to_string() const;

 private:
  void check_compatible(const Poly& rhs) const;

  std::size_t num_vars_ = 0;
  std::vector<Term> terms_;
};

}  // namespace riccitype
