#pragma once

#include <array>
#include <string>

#include "riccitype/tensor.hpp"

namespace riccitype {

/// One of the five covariant-derivative kinds 0..4. Kind 0 differentiates
/// with the symmetric part of the connection; kinds 1..4 use the full
/// coefficients with their four index-order choices.
class Kind {
 public:
  /// Throws ParameterError outside 0..4.
  explicit Kind(int value);

  int value() const { return value_; }
  friend auto operator<=>(const Kind&, const Kind&) = default;

 private:
  int value_;
};

inline const std::array<Kind, 5>& all_kinds() {
  static const std::array<Kind, 5> kinds{Kind(0), Kind(1), Kind(2), Kind(3), Kind(4)};
  return kinds;
}

/// Torsion-correction coefficients expressing kind z as
/// kind 0 + c_z (upper torsion terms) + d_z (lower torsion terms).
struct KindCoefficients {
  static int c(Kind z);
  static int d(Kind z);
};

/// L^i_{jk} component array (not a tensor) with its symmetric part and
/// torsion computed once at construction.
class Connection {
 public:
  Connection() = default;
  /// coefficients must have valence (1,2).
  explicit Connection(TensorField coefficients);

  std::size_t dim() const { return coefficients_.dim(); }
  const TensorField& coefficients() const { return coefficients_; }
  const TensorField& symmetric() const { return symmetric_; }
  const TensorField& torsion() const { return torsion_; }
  bool is_torsion_free() const { return torsion_.is_zero(); }

 private:
  TensorField coefficients_;
  TensorField symmetric_;
  TensorField torsion_;
};

/// ½(L^i_{jk} + L^i_{kj}) of any (1,2) object.
TensorField symmetric_part(const TensorField& coeffs);
/// ½(L^i_{jk} − L^i_{kj}) of any (1,2) object.
TensorField torsion(const TensorField& coeffs);

enum class DerivativeMode {
  Direct,   // kinds 1..4 built from the full coefficients
  Unified,  // kind 0 plus c_z / d_z weighted torsion corrections
};

/// a_{...z|k}; the derivative index k is appended as a trailing lower slot.
TensorField cov_deriv(const Connection& conn, const TensorField& a, Kind kind,
                      DerivativeMode mode = DerivativeMode::Direct);

/// a_{...v|m w|n}: kind v then kind w. The slot m created by the first
/// derivative is an ordinary lower slot for the second; output order is
/// (..., m, n).
TensorField double_cov_deriv(const Connection& conn, const TensorField& a, Kind v, Kind w,
                             DerivativeMode mode = DerivativeMode::Direct);

/// R^i_{jmn} of the symmetric part:
/// L̲^i_{jm,n} − L̲^i_{jn,m} + L̲^α_{jm} L̲^i_{αn} − L̲^α_{jn} L̲^i_{αm}.
TensorField curvature_R(const Connection& conn);

/// L⌄^i_{jm|n}: kind-0 covariant derivative of the torsion as a (1,2) tensor.
TensorField torsion_derivative(const Connection& conn);

struct Pseudotensors {
  TensorField first;   // A₁^i_{jmn}
  TensorField second;  // A₂^i_{jmn}
};

/// Curvature pseudotensors, built literally from their defining sums.
Pseudotensors pseudotensors_A(const Connection& conn);

}  // namespace riccitype
