#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "riccitype/poly.hpp"

namespace riccitype {

struct Valence {
  std::size_t upper = 0;
  std::size_t lower = 0;

  std::size_t rank() const { return upper + lower; }
  friend auto operator<=>(const Valence&, const Valence&) = default;
};

using MultiIndex = std::vector<std::size_t>;

/// Dense (p,q)-indexed array of polynomial components over dimension N.
///
/// Components are addressed by (i_1..i_p, j_1..j_q), upper indices first,
/// each 0-based, in row-major order. The container makes no claim about
/// transformation behaviour: connection coefficients and comma derivatives
/// live in it as well as genuine tensors.
class TensorField {
 public:
  TensorField() = default;
  /// Zero field.
  TensorField(std::size_t dim, Valence valence);
  TensorField(std::size_t dim, Valence valence, std::vector<Poly> components);

  /// Fills every component from f(const MultiIndex&) -> Poly.
  template <class F>
  static TensorField generate(std::size_t dim, Valence valence, F&& f) {
    TensorField t(dim, valence);
    MultiIndex idx(valence.rank(), 0);
    for (std::size_t off = 0; off < t.components_.size(); ++off) {
      t.components_[off] = f(static_cast<const MultiIndex&>(idx));
      t.advance(idx);
    }
    return t;
  }

  std::size_t dim() const { return dim_; }
  Valence valence() const { return valence_; }
  std::size_t size() const { return components_.size(); }
  const std::vector<Poly>& components() const { return components_; }

  std::size_t offset(std::span<const std::size_t> idx) const;
  MultiIndex index_of(std::size_t offset) const;

  const Poly& at(std::span<const std::size_t> idx) const { return components_[offset(idx)]; }
  Poly& at(std::span<const std::size_t> idx) { return components_[offset(idx)]; }
  const Poly& component(std::size_t offset) const { return components_.at(offset); }

  template <class... I>
  const Poly& operator()(I... idx) const {
    const std::array<std::size_t, sizeof...(I)> arr{static_cast<std::size_t>(idx)...};
    return at(std::span<const std::size_t>(arr.data(), arr.size()));
  }

  bool is_zero() const;
  /// Number of components that are not the zero polynomial.
  std::size_t nonzero_count() const;

  TensorField& operator+=(const TensorField& rhs);
  TensorField& operator-=(const TensorField& rhs);
  TensorField& operator*=(const Rational& s);
  /// this += s * rhs.
  TensorField& add_scaled(const TensorField& rhs, const Rational& s);

  friend TensorField operator+(TensorField a, const TensorField& b) { return a += b; }
  friend TensorField operator-(TensorField a, const TensorField& b) { return a -= b; }
  friend TensorField operator*(TensorField a, const Rational& s) { return a *= s; }
  friend TensorField operator*(const Rational& s, TensorField a) { return a *= s; }
  friend bool operator==(const TensorField&, const TensorField&) = default;

  /// Steps idx to the next multi-index in row-major order.
  void advance(MultiIndex& idx) const;

 private:
  void check_same_shape(const TensorField& rhs) const;

  std::size_t dim_ = 0;
  Valence valence_{};
  std::vector<Poly> components_;
};

/// a_{...,k}: partial derivative of every component, new trailing lower slot k.
TensorField comma_derivative(const TensorField& a);

enum class SlotKind { Upper, Lower };

struct Slot {
  SlotKind kind;
  std::size_t position;  // 0-based among the slots of that kind
};

/// Index order of the connection-like coefficient in a correction term:
/// SlotFirst picks L^i_{αk} / L^α_{j k}, DerivFirst picks L^i_{kα} / L^α_{k j}.
enum class IndexOrder { SlotFirst, DerivFirst };

/// The single summed correction term for one slot at derivative index k.
///
/// Upper slot u:  Σ_α L^{i_u}_{αk} a^{..α..}   (or L^{i_u}_{kα})
/// Lower slot v:  Σ_α L^α_{j_v k} a_{..α..}    (or L^α_{k j_v})
/// The result has the valence of a and carries no sign.
TensorField contract_with_connection(const TensorField& coeffs, const TensorField& a, Slot slot,
                                     std::size_t k, IndexOrder order);

/// Same correction for every k at once; the derivative index is appended as
/// a trailing lower slot.
TensorField connection_correction(const TensorField& coeffs, const TensorField& a, Slot slot,
                                  IndexOrder order);

/// Swaps the two trailing lower slots: out(...,m,n) = a(...,n,m).
TensorField swap_last_two(const TensorField& a);

}  // namespace riccitype
