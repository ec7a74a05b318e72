#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "riccitype/identities.hpp"

namespace riccitype {

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  /// Throws ShapeError when the rows have different lengths.
  static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

  /// Throws ShapeError unless row.size() == cols().
  void append_row(std::span<const Rational> row);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

/// Rank over Q. Each row is scaled to integers, then fraction-free
/// (Bareiss) elimination runs on the integer matrix.
std::size_t exact_rank(const RationalMatrix& m);

/// count points in Q^dim with small random numerators and denominators.
std::vector<std::vector<Rational>> sample_points(std::size_t dim, std::size_t count, std::uint64_t seed);

/// Every component of `object` evaluated at every point, point-major.
std::vector<Rational> evaluate(const TensorField& object, std::span<const std::vector<Rational>> points);

/// Rank of the kind-z covariant derivatives of a for the listed kinds.
/// Throws InsufficientSamplesError when N^(p+q+1)·|samples| < |kinds|.
std::size_t derivative_family_rank(const Connection& conn, const TensorField& a, std::span<const Kind> kinds,
                                   std::span<const std::vector<Rational>> samples);

/// Rank of the commutation differences a_{v1|m w1|n} − a_{v2|n w2|m} over
/// the listed tuples. Throws InsufficientSamplesError when
/// N^4·|samples| < |tuples|.
std::size_t commutation_family_rank(const Workspace& ws, std::span<const KindTuple> tuples,
                                    std::span<const std::vector<Rational>> samples);
std::size_t commutation_family_rank(const Connection& conn, const TensorField& a, std::span<const KindTuple> tuples,
                                    std::span<const std::vector<Rational>> samples);

/// Sample points needed so that `components`·points >= objects.
std::size_t minimum_points(std::size_t components, std::size_t objects);

/// A rank evaluated with a growing number of points until it repeats.
struct StableRank {
  std::size_t rank = 0;
  std::size_t points = 0;
};

/// rank_at(k) must be monotone in k. Starts at `start` points and adds
/// `start` more until two consecutive counts agree.
template <class F>
StableRank stabilized_rank(std::size_t start, F&& rank_at) {
  std::size_t points = start;
  std::size_t rank = rank_at(points);
  for (;;) {
    const std::size_t next = rank_at(points + start);
    if (next == rank) return {rank, points};
    rank = next;
    points += start;
  }
}

enum class RankClaim {
  MatrixM,            // the 5×3 table of (1, c_z, d_z) rows
  KindFamily,         // the five kind derivatives of a (1,1) field
  KindTriples,        // each of the eight listed kind triples of a (1,1) field
  VectorKinds,        // (1,0) field, kinds {0, 1, 2}
  CovectorKinds,      // (0,1) field, kinds {0, 1, 2}
  TorsionFree,        // torsion-free connection, all kinds
  Commutation,        // all 625 commutation differences
  CommutationOneTwoThree,  // tuples with every kind in {1,2,3}
  RepeatedTuple,      // one tuple listed twice
};

std::string_view to_string(RankClaim claim);
/// Throws ValidationError for unknown names.
RankClaim parse_rank_claim(std::string_view name);
const std::vector<RankClaim>& all_rank_claims();

enum class ClaimComparison {
  Equal,     // max over seeds == expected, and no seed exceeds it
  AtLeast,   // max over seeds >= expected
  External,  // reported only; a mismatch is not a failure
};

struct RankClaimResult {
  RankClaim claim = RankClaim::MatrixM;
  std::size_t dim = 0;
  std::size_t expected = 0;
  ClaimComparison comparison = ClaimComparison::Equal;
  std::vector<std::uint64_t> seeds;
  std::vector<std::size_t> observed;  // one per seed
  std::vector<std::size_t> points;    // sample points behind each observation
  std::size_t maximum = 0;
  bool passed = false;
  /// External claims: whether the observed maximum reproduces the value.
  bool reproduced = false;
};

struct RankOptions {
  std::size_t dim = 2;
  std::size_t degree = 2;
  unsigned coeff_bound = 5;
  std::uint64_t seed = 42;
  std::size_t seeds = 5;
};

/// Runs one claim on options.seeds consecutive seeds starting at options.seed.
RankClaimResult check_rank_claim(RankClaim claim, const RankOptions& options = {});

}  // namespace riccitype
