#include "riccitype/tensor.hpp"

#include <algorithm>
#include <string>

#include "riccitype/errors.hpp"

namespace riccitype {

namespace {

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp--) r *= base;
  return r;
}

std::string describe(std::size_t dim, Valence v) {
  return "dim " + std::to_string(dim) + " valence (" + std::to_string(v.upper) + "," +
         std::to_string(v.lower) + ")";
}

}  // namespace

TensorField::TensorField(std::size_t dim, Valence valence)
    : dim_(dim), valence_(valence), components_(ipow(dim, valence.rank()), Poly(dim)) {}

TensorField::TensorField(std::size_t dim, Valence valence, std::vector<Poly> components)
    : dim_(dim), valence_(valence), components_(std::move(components)) {
  if (components_.size() != ipow(dim, valence.rank())) {
    throw ShapeError("component count " + std::to_string(components_.size()) + " does not match " +
                     describe(dim, valence));
  }
  for (const auto& p : components_) {
    if (p.num_vars() != dim) throw DimensionError("component variable count != dim");
  }
}

std::size_t TensorField::offset(std::span<const std::size_t> idx) const {
  if (idx.size() != valence_.rank()) throw IndexError("multi-index length != tensor rank");
  std::size_t off = 0;
  for (auto i : idx) {
    if (i >= dim_) throw IndexError("index component out of range");
    off = off * dim_ + i;
  }
  return off;
}

MultiIndex TensorField::index_of(std::size_t offset) const {
  MultiIndex idx(valence_.rank());
  for (std::size_t s = idx.size(); s-- > 0;) {
    idx[s] = offset % dim_;
    offset /= dim_;
  }
  return idx;
}

void TensorField::advance(MultiIndex& idx) const {
  for (std::size_t s = idx.size(); s-- > 0;) {
    if (++idx[s] < dim_) return;
    idx[s] = 0;
  }
}

bool TensorField::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const Poly& p) { return p.is_zero(); });
}

std::size_t TensorField::nonzero_count() const {
  return static_cast<std::size_t>(
      std::count_if(components_.begin(), components_.end(), [](const Poly& p) { return !p.is_zero(); }));
}

void TensorField::check_same_shape(const TensorField& rhs) const {
  if (dim_ != rhs.dim_ || valence_ != rhs.valence_) {
    throw ShapeError("shape mismatch: " + describe(dim_, valence_) + " vs " + describe(rhs.dim_, rhs.valence_));
  }
}

TensorField& TensorField::add_scaled(const TensorField& rhs, const Rational& s) {
  check_same_shape(rhs);
  for (std::size_t i = 0; i < components_.size(); ++i) components_[i].add_scaled(rhs.components_[i], s);
  return *this;
}

TensorField& TensorField::operator+=(const TensorField& rhs) { return add_scaled(rhs, Rational(1)); }
TensorField& TensorField::operator-=(const TensorField& rhs) { return add_scaled(rhs, Rational(-1)); }

TensorField& TensorField::operator*=(const Rational& s) {
  for (auto& p : components_) p *= s;
  return *this;
}

TensorField comma_derivative(const TensorField& a) {
  const Valence out{a.valence().upper, a.valence().lower + 1};
  return TensorField::generate(a.dim(), out, [&](const MultiIndex& idx) {
    std::span<const std::size_t> base(idx.data(), idx.size() - 1);
    return a.at(base).diff(idx.back());
  });
}

namespace {

void check_slot(const TensorField& a, Slot slot) {
  const std::size_t count = slot.kind == SlotKind::Upper ? a.valence().upper : a.valence().lower;
  if (slot.position >= count) throw IndexError("slot position out of range for valence");
}

void check_coefficients(const TensorField& coeffs, const TensorField& a) {
  if (coeffs.valence() != Valence{1, 2}) throw ShapeError("connection-like object must have valence (1,2)");
  if (coeffs.dim() != a.dim()) throw ShapeError("connection and field dimensions differ");
}

// One component of the correction: idx addresses a (length rank(a)).
Poly correction_at(const TensorField& coeffs, const TensorField& a, Slot slot, std::size_t k,
                   IndexOrder order, MultiIndex& idx) {
  const std::size_t pos = slot.kind == SlotKind::Upper ? slot.position : a.valence().upper + slot.position;
  const std::size_t free = idx[pos];
  Poly sum(a.dim());
  for (std::size_t alpha = 0; alpha < a.dim(); ++alpha) {
    idx[pos] = alpha;
    const Poly& comp = a.at(idx);
    if (comp.is_zero()) continue;
    const Poly* c = nullptr;
    if (slot.kind == SlotKind::Upper) {
      c = order == IndexOrder::SlotFirst ? &coeffs(free, alpha, k) : &coeffs(free, k, alpha);
    } else {
      c = order == IndexOrder::SlotFirst ? &coeffs(alpha, free, k) : &coeffs(alpha, k, free);
    }
    if (!c->is_zero()) sum += *c * comp;
  }
  idx[pos] = free;
  return sum;
}

}  // namespace

TensorField contract_with_connection(const TensorField& coeffs, const TensorField& a, Slot slot,
                                     std::size_t k, IndexOrder order) {
  check_coefficients(coeffs, a);
  check_slot(a, slot);
  if (k >= a.dim()) throw IndexError("derivative index out of range");
  return TensorField::generate(a.dim(), a.valence(), [&](const MultiIndex& idx) {
    MultiIndex work = idx;
    return correction_at(coeffs, a, slot, k, order, work);
  });
}

TensorField connection_correction(const TensorField& coeffs, const TensorField& a, Slot slot,
                                  IndexOrder order) {
  check_coefficients(coeffs, a);
  check_slot(a, slot);
  const Valence out{a.valence().upper, a.valence().lower + 1};
  return TensorField::generate(a.dim(), out, [&](const MultiIndex& idx) {
    MultiIndex work(idx.begin(), idx.end() - 1);
    return correction_at(coeffs, a, slot, idx.back(), order, work);
  });
}

TensorField swap_last_two(const TensorField& a) {
  if (a.valence().lower < 2) throw ShapeError("swap_last_two needs at least two lower slots");
  return TensorField::generate(a.dim(), a.valence(), [&](const MultiIndex& idx) {
    MultiIndex s = idx;
    std::swap(s[s.size() - 1], s[s.size() - 2]);
    return a.at(s);
  });
}

}  // namespace riccitype
