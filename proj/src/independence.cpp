#include "riccitype/independence.hpp"

#include <algorithm>
#include <array>

#include "riccitype/errors.hpp"
#include "riccitype/instance.hpp"

namespace riccitype {

namespace {

constexpr std::uint64_t kSamplePurpose = 3;
constexpr unsigned kSampleBound = 9;

std::size_t power(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

// Row scaled by the lcm of its denominators.
std::vector<Integer> integer_row(const Rational* row, std::size_t cols) {
  Integer lcm = 1;
  for (std::size_t c = 0; c < cols; ++c) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), row[c].get_den_mpz_t());
  std::vector<Integer> out(cols);
  for (std::size_t c = 0; c < cols; ++c) out[c] = row[c].get_num() * (lcm / row[c].get_den());
  return out;
}

void check_samples(std::size_t components, std::size_t points, std::size_t objects) {
  if (components * points < objects) {
    throw InsufficientSamplesError("need at least " + std::to_string(minimum_points(components, objects)) +
                                   " sample points for " + std::to_string(objects) + " objects, got " +
                                   std::to_string(points));
  }
}

// Offset of the component with its two trailing slots exchanged.
std::size_t swapped_offset(std::size_t off, std::size_t n) {
  const std::size_t base = off / (n * n);
  const std::size_t m = (off / n) % n;
  const std::size_t k = off % n;
  return base * n * n + k * n + m;
}

}  // namespace

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  RationalMatrix m(0, rows.empty() ? 0 : rows.front().size());
  for (const auto& r : rows) m.append_row(r);
  return m;
}

void RationalMatrix::append_row(std::span<const Rational> row) {
  if (row.size() != cols_) {
    throw ShapeError("row has " + std::to_string(row.size()) + " entries, matrix has " + std::to_string(cols_) +
                     " columns");
  }
  entries_.insert(entries_.end(), row.begin(), row.end());
  ++rows_;
}

std::size_t exact_rank(const RationalMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::vector<Integer>> a;
  a.reserve(rows);
  for (std::size_t r = 0; r < rows; ++r) a.push_back(integer_row(&m(r, 0), cols));

  std::size_t rank = 0;
  Integer prev = 1;
  Integer t;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t p = rank;
    while (p < rows && a[p][col] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    const auto& piv = a[rank];
    for (std::size_t r = rank + 1; r < rows; ++r) {
      auto& row = a[r];
      for (std::size_t c = col + 1; c < cols; ++c) {
        // row[c] = (piv[col]·row[c] − row[col]·piv[c]) / prev, exact.
        t = piv[col] * row[c];
        t -= row[col] * piv[c];
        mpz_divexact(row[c].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      row[col] = 0;
    }
    prev = piv[col];
    ++rank;
  }
  return rank;
}

std::vector<std::vector<Rational>> sample_points(std::size_t dim, std::size_t count, std::uint64_t seed) {
  auto rng = auxiliary_rng(seed, kSamplePurpose);
  std::vector<std::vector<Rational>> points(count, std::vector<Rational>(dim));
  for (auto& p : points)
    for (auto& x : p) x = random_rational(rng, kSampleBound);
  return points;
}

std::vector<Rational> evaluate(const TensorField& object, std::span<const std::vector<Rational>> points) {
  std::vector<Rational> out;
  out.reserve(object.size() * points.size());
  for (const auto& pt : points)
    for (const auto& c : object.components()) out.push_back(c.eval(pt));
  return out;
}

std::size_t minimum_points(std::size_t components, std::size_t objects) {
  if (components == 0) return 0;
  return std::max<std::size_t>(1, (objects + components - 1) / components);
}

std::size_t derivative_family_rank(const Connection& conn, const TensorField& a, std::span<const Kind> kinds,
                                   std::span<const std::vector<Rational>> samples) {
  const std::size_t components = power(a.dim(), a.valence().rank() + 1);
  check_samples(components, samples.size(), kinds.size());
  RationalMatrix m(0, components * samples.size());
  for (Kind z : kinds) m.append_row(evaluate(cov_deriv(conn, a, z), samples));
  return exact_rank(m);
}

std::size_t commutation_family_rank(const Workspace& ws, std::span<const KindTuple> tuples,
                                    std::span<const std::vector<Rational>> samples) {
  const std::size_t n = ws.dim();
  const std::size_t components = power(n, ws.field().valence().rank() + 2);
  check_samples(components, samples.size(), tuples.size());

  // Evaluate each double derivative once; the differences are then formed
  // on the sampled values.
  std::array<std::vector<Rational>, 25> values;
  auto value = [&](Kind v, Kind w) -> const std::vector<Rational>& {
    auto& slot = values[static_cast<std::size_t>(v.value() * 5 + w.value())];
    if (slot.empty()) slot = evaluate(ws.double_derivative(v, w), samples);
    return slot;
  };

  RationalMatrix m(0, components * samples.size());
  std::vector<Rational> row(components * samples.size());
  for (const auto& t : tuples) {
    const auto& first = value(t.v1, t.w1);
    const auto& second = value(t.v2, t.w2);
    for (std::size_t s = 0; s < samples.size(); ++s) {
      const std::size_t base = s * components;
      for (std::size_t off = 0; off < components; ++off)
        row[base + off] = first[base + off] - second[base + swapped_offset(off, n)];
    }
    m.append_row(row);
  }
  return exact_rank(m);
}

std::size_t commutation_family_rank(const Connection& conn, const TensorField& a, std::span<const KindTuple> tuples,
                                    std::span<const std::vector<Rational>> samples) {
  Workspace ws(conn, a);
  return commutation_family_rank(ws, tuples, samples);
}

// ---------------------------------------------------------------------------

namespace {

struct ClaimInfo {
  RankClaim claim;
  std::string_view name;
};

constexpr std::array<ClaimInfo, 9> kClaims{{
    {RankClaim::MatrixM, "matrix_m"},
    {RankClaim::KindFamily, "kind_family"},
    {RankClaim::KindTriples, "kind_triples"},
    {RankClaim::VectorKinds, "vector_kinds"},
    {RankClaim::CovectorKinds, "covector_kinds"},
    {RankClaim::TorsionFree, "torsion_free"},
    {RankClaim::Commutation, "commutation"},
    {RankClaim::CommutationOneTwoThree, "commutation_123"},
    {RankClaim::RepeatedTuple, "repeated_tuple"},
}};

std::vector<Kind> kinds_of(std::initializer_list<int> values) {
  std::vector<Kind> out;
  for (int v : values) out.emplace_back(v);
  return out;
}

RationalMatrix kind_matrix() {
  RationalMatrix m(0, 3);
  for (Kind z : all_kinds()) {
    const std::array<Rational, 3> row{Rational(1), Rational(KindCoefficients::c(z)),
                                      Rational(KindCoefficients::d(z))};
    m.append_row(row);
  }
  return m;
}

StableRank derivative_rank(const Connection& conn, const TensorField& a, const std::vector<Kind>& kinds,
                           std::uint64_t seed) {
  const std::size_t start = minimum_points(power(a.dim(), a.valence().rank() + 1), kinds.size());
  return stabilized_rank(start, [&](std::size_t k) {
    return derivative_family_rank(conn, a, kinds, sample_points(a.dim(), k, seed));
  });
}

StableRank commutation_rank(const Workspace& ws, const std::vector<KindTuple>& tuples, std::uint64_t seed) {
  const std::size_t start = minimum_points(power(ws.dim(), ws.field().valence().rank() + 2), tuples.size());
  return stabilized_rank(start, [&](std::size_t k) {
    return commutation_family_rank(ws, tuples, sample_points(ws.dim(), k, seed));
  });
}

std::vector<KindTuple> one_two_three_tuples() {
  std::vector<KindTuple> out;
  for (const auto& t : all_kind_tuples()) {
    auto in = [](Kind k) { return k.value() >= 1 && k.value() <= 3; };
    if (in(t.v1) && in(t.w1) && in(t.v2) && in(t.w2)) out.push_back(t);
  }
  return out;
}

StableRank observe(RankClaim claim, const RankOptions& options, std::uint64_t seed) {
  InstanceSpec spec;
  spec.dim = options.dim;
  spec.degree = options.degree;
  spec.coeff_bound = options.coeff_bound;
  spec.seed = seed;
  switch (claim) {
    case RankClaim::MatrixM:
      return {exact_rank(kind_matrix()), 0};
    case RankClaim::KindFamily:
    case RankClaim::TorsionFree: {
      spec.valence = {1, 1};
      const auto inst = generate_instance(spec);
      const Connection conn =
          claim == RankClaim::TorsionFree ? Connection(inst.connection.symmetric()) : inst.connection;
      return derivative_rank(conn, inst.field, kinds_of({0, 1, 2, 3, 4}), seed);
    }
    case RankClaim::KindTriples: {
      spec.valence = {1, 1};
      const auto inst = generate_instance(spec);
      const std::array<std::vector<Kind>, 8> triples{kinds_of({1, 2, 3}), kinds_of({1, 2, 4}), kinds_of({1, 3, 4}),
                                                     kinds_of({2, 3, 4}), kinds_of({0, 1, 3}), kinds_of({0, 1, 4}),
                                                     kinds_of({0, 2, 3}), kinds_of({0, 2, 4})};
      // The weakest triple decides the observation.
      StableRank worst{3, 0};
      for (const auto& t : triples) {
        const auto r = derivative_rank(inst.connection, inst.field, t, seed);
        if (r.rank < worst.rank) worst.rank = r.rank;
        worst.points = std::max(worst.points, r.points);
      }
      return worst;
    }
    case RankClaim::VectorKinds:
    case RankClaim::CovectorKinds: {
      spec.valence = claim == RankClaim::VectorKinds ? Valence{1, 0} : Valence{0, 1};
      const auto inst = generate_instance(spec);
      return derivative_rank(inst.connection, inst.field, kinds_of({0, 1, 2}), seed);
    }
    case RankClaim::Commutation:
    case RankClaim::CommutationOneTwoThree:
    case RankClaim::RepeatedTuple: {
      spec.valence = {1, 1};
      const auto inst = generate_instance(spec);
      const Workspace ws(inst.connection, inst.field);
      std::vector<KindTuple> tuples;
      if (claim == RankClaim::Commutation) {
        tuples = all_kind_tuples();
      } else if (claim == RankClaim::CommutationOneTwoThree) {
        tuples = one_two_three_tuples();
      } else {
        const KindTuple t{Kind(1), Kind(2), Kind(3), Kind(4)};
        tuples = {t, t};
      }
      return commutation_rank(ws, tuples, seed);
    }
  }
  throw ParameterError("unknown rank claim");
}

}  // namespace

std::string_view to_string(RankClaim claim) {
  for (const auto& c : kClaims)
    if (c.claim == claim) return c.name;
  throw ParameterError("unknown rank claim");
}

RankClaim parse_rank_claim(std::string_view name) {
  for (const auto& c : kClaims)
    if (c.name == name) return c.claim;
  throw ValidationError("unknown rank claim '" + std::string(name) + "'");
}

const std::vector<RankClaim>& all_rank_claims() {
  static const std::vector<RankClaim> claims = [] {
    std::vector<RankClaim> out;
    for (const auto& c : kClaims) out.push_back(c.claim);
    return out;
  }();
  return claims;
}

RankClaimResult check_rank_claim(RankClaim claim, const RankOptions& options) {
  RankClaimResult result;
  result.claim = claim;
  result.dim = options.dim;
  switch (claim) {
    case RankClaim::MatrixM:
    case RankClaim::KindFamily:
    case RankClaim::KindTriples:
      result.expected = 3;
      break;
    case RankClaim::VectorKinds:
    case RankClaim::CovectorKinds:
      result.expected = 2;
      break;
    case RankClaim::TorsionFree:
    case RankClaim::RepeatedTuple:
      result.expected = 1;
      break;
    case RankClaim::Commutation:
      result.expected = 15;
      result.comparison = ClaimComparison::AtLeast;
      break;
    case RankClaim::CommutationOneTwoThree:
      result.expected = 16;
      result.comparison = ClaimComparison::External;
      break;
  }
  if (options.seeds == 0) throw ValidationError("rank claims need at least one seed");

  for (std::size_t i = 0; i < options.seeds; ++i) {
    const std::uint64_t seed = options.seed + i;
    const auto r = observe(claim, options, seed);
    result.seeds.push_back(seed);
    result.observed.push_back(r.rank);
    result.points.push_back(r.points);
    result.maximum = std::max(result.maximum, r.rank);
  }
  switch (result.comparison) {
    case ClaimComparison::Equal:
      result.passed = result.maximum == result.expected;
      break;
    case ClaimComparison::AtLeast:
      result.passed = result.maximum >= result.expected;
      break;
    case ClaimComparison::External:
      result.passed = true;
      break;
  }
  result.reproduced = result.maximum == result.expected;
  return result;
}

}  // namespace riccitype
