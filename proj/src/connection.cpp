#include "riccitype/connection.hpp"

#include "riccitype/errors.hpp"

namespace riccitype {

Kind::Kind(int value) : value_(value) {
  if (value < 0 || value > 4) throw ParameterError("derivative kind must be in 0..4, got " + std::to_string(value));
}

int KindCoefficients::c(Kind z) {
  static constexpr int table[5] = {0, 1, -1, 1, -1};
  return table[z.value()];
}

int KindCoefficients::d(Kind z) {
  static constexpr int table[5] = {0, -1, 1, 1, -1};
  return table[z.value()];
}

namespace {

TensorField half_sum(const TensorField& coeffs, int sign) {
  if (coeffs.valence() != Valence{1, 2}) throw ShapeError("connection-like object must have valence (1,2)");
  const Rational half(1, 2);
  return TensorField::generate(coeffs.dim(), coeffs.valence(), [&](const MultiIndex& x) {
    Poly p = coeffs(x[0], x[1], x[2]);
    p.add_scaled(coeffs(x[0], x[2], x[1]), Rational(sign));
    return p * half;
  });
}

}  // namespace

TensorField symmetric_part(const TensorField& coeffs) { return half_sum(coeffs, 1); }
TensorField torsion(const TensorField& coeffs) { return half_sum(coeffs, -1); }

Connection::Connection(TensorField coefficients)
    : coefficients_(std::move(coefficients)),
      symmetric_(riccitype::symmetric_part(coefficients_)),
      torsion_(riccitype::torsion(coefficients_)) {}

namespace {

struct Orders {
  IndexOrder upper;
  IndexOrder lower;
};

// Index orders of L for kinds 1..4 in direct mode.
Orders direct_orders(Kind kind) {
  switch (kind.value()) {
    case 1: return {IndexOrder::SlotFirst, IndexOrder::SlotFirst};
    case 2: return {IndexOrder::DerivFirst, IndexOrder::DerivFirst};
    case 3: return {IndexOrder::SlotFirst, IndexOrder::DerivFirst};
    default: return {IndexOrder::DerivFirst, IndexOrder::SlotFirst};
  }
}

// comma + Σ_u (upper corrections) − Σ_v (lower corrections) with a given
// coefficient array and index orders.
TensorField derivative_with(const TensorField& coeffs, const TensorField& a, Orders orders) {
  TensorField out = comma_derivative(a);
  for (std::size_t u = 0; u < a.valence().upper; ++u) {
    out += connection_correction(coeffs, a, {SlotKind::Upper, u}, orders.upper);
  }
  for (std::size_t v = 0; v < a.valence().lower; ++v) {
    out -= connection_correction(coeffs, a, {SlotKind::Lower, v}, orders.lower);
  }
  return out;
}

}  // namespace

TensorField cov_deriv(const Connection& conn, const TensorField& a, Kind kind, DerivativeMode mode) {
  if (a.dim() != conn.dim()) throw ShapeError("field and connection dimensions differ");
  if (kind.value() == 0) {
    return derivative_with(conn.symmetric(), a, {IndexOrder::SlotFirst, IndexOrder::SlotFirst});
  }
  if (mode == DerivativeMode::Direct) return derivative_with(conn.coefficients(), a, direct_orders(kind));

  TensorField out = derivative_with(conn.symmetric(), a, {IndexOrder::SlotFirst, IndexOrder::SlotFirst});
  const Rational c(KindCoefficients::c(kind));
  const Rational d(KindCoefficients::d(kind));
  for (std::size_t u = 0; u < a.valence().upper; ++u) {
    out.add_scaled(connection_correction(conn.torsion(), a, {SlotKind::Upper, u}, IndexOrder::SlotFirst), c);
  }
  for (std::size_t v = 0; v < a.valence().lower; ++v) {
    out.add_scaled(connection_correction(conn.torsion(), a, {SlotKind::Lower, v}, IndexOrder::SlotFirst), d);
  }
  return out;
}

TensorField double_cov_deriv(const Connection& conn, const TensorField& a, Kind v, Kind w, DerivativeMode mode) {
  return cov_deriv(conn, cov_deriv(conn, a, v, mode), w, mode);
}

TensorField curvature_R(const Connection& conn) {
  const TensorField& s = conn.symmetric();
  const std::size_t n_dim = conn.dim();
  return TensorField::generate(n_dim, {1, 3}, [&](const MultiIndex& x) {
    const std::size_t i = x[0], j = x[1], m = x[2], n = x[3];
    Poly r = s(i, j, m).diff(n) - s(i, j, n).diff(m);
    for (std::size_t al = 0; al < n_dim; ++al) {
      r += s(al, j, m) * s(i, al, n);
      r -= s(al, j, n) * s(i, al, m);
    }
    return r;
  });
}

TensorField torsion_derivative(const Connection& conn) { return cov_deriv(conn, conn.torsion(), Kind(0)); }

Pseudotensors pseudotensors_A(const Connection& conn) {
  const TensorField& s = conn.symmetric();
  const TensorField& t = conn.torsion();
  const TensorField r = curvature_R(conn);
  const TensorField dt = torsion_derivative(conn);
  const std::size_t n_dim = conn.dim();

  // Shared part: R + L⌄_{jm|n} − L⌄_{jn|m} − L⌄^α_{jm}L⌄^i_{αn} + L⌄^α_{jn}L⌄^i_{αm}.
  const TensorField common = TensorField::generate(n_dim, {1, 3}, [&](const MultiIndex& x) {
    const std::size_t i = x[0], j = x[1], m = x[2], n = x[3];
    Poly p = r(i, j, m, n) + dt(i, j, m, n) - dt(i, j, n, m);
    for (std::size_t al = 0; al < n_dim; ++al) {
      p -= t(al, j, m) * t(i, al, n);
      p += t(al, j, n) * t(i, al, m);
    }
    return p;
  });

  Pseudotensors out{common, common};
  const Rational two(2);
  for (std::size_t off = 0; off < common.size(); ++off) {
    const MultiIndex x = common.index_of(off);
    const std::size_t i = x[0], j = x[1], m = x[2], n = x[3];
    Poly& first = out.first.at(x);
    Poly& second = out.second.at(x);
    for (std::size_t al = 0; al < n_dim; ++al) {
      // A₁: − 2 L̲^α_{jm} L⌄^i_{αn} + L̲^α_{jn} L⌄^i_{αm}
      first.add_scaled(s(al, j, m) * t(i, al, n), -two);
      first += s(al, j, n) * t(i, al, m);
      // A₂: − 2 L⌄^α_{jm} L̲^i_{αn} + L̲^α_{jn} L̲^i_{αm}
      second.add_scaled(t(al, j, m) * s(i, al, n), -two);
      second += s(al, j, n) * s(i, al, m);
    }
  }
  return out;
}

}  // namespace riccitype
