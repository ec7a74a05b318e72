#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "riccitype/connection.hpp"

namespace riccitype {

struct InstanceSpec {
  std::size_t dim = 2;
  std::size_t degree = 2;
  Valence valence{1, 1};
  std::uint64_t seed = 42;
  unsigned coeff_bound = 5;

  friend bool operator==(const InstanceSpec&, const InstanceSpec&) = default;
};

struct Instance {
  InstanceSpec spec;
  Connection connection;
  TensorField field;
};

/// Name recorded in reports for the generator behind generate_instance.
inline constexpr const char* kGeneratorName = "std::mt19937_64/std::uniform_int_distribution (libstdc++)";

/// Throws ValidationError for dim < 2 or coeff_bound == 0.
void validate(const InstanceSpec& spec);

/// Random polynomial: every monomial of total degree <= degree gets a
/// coefficient num/den with |num| <= bound and 1 <= den <= bound.
Poly random_poly(std::mt19937_64& rng, std::size_t num_vars, std::size_t degree, unsigned bound);
TensorField random_field(std::mt19937_64& rng, std::size_t dim, Valence valence, std::size_t degree,
                         unsigned bound);

/// Deterministic: identical specs give identical instances. The connection
/// depends only on (dim, degree, seed, coeff_bound), so instances that differ
/// only in valence share their connection.
Instance generate_instance(const InstanceSpec& spec);

/// Same draws as generate_instance but the field is replaced by one of the
/// given valence drawn from the field stream.
TensorField generate_field(const InstanceSpec& spec);
Connection generate_connection(const InstanceSpec& spec);

/// Independent generator for auxiliary draws (weights, kind tuples, sample
/// points) keyed by a purpose tag so streams never overlap.
std::mt19937_64 auxiliary_rng(std::uint64_t seed, std::uint64_t purpose);

/// Uniform rational num/den with |num| <= bound, 1 <= den <= bound.
Rational random_rational(std::mt19937_64& rng, unsigned bound);

}  // namespace riccitype
