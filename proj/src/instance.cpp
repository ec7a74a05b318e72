#include "riccitype/instance.hpp"

#include "riccitype/errors.hpp"

namespace riccitype {

namespace {

enum Stream : std::uint64_t { kConnectionStream = 1, kFieldStream = 2 };

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

// All exponent vectors of total degree <= degree, graded then lexicographic.
void enumerate_monomials(std::size_t num_vars, std::size_t degree, std::vector<Exponents>& out) {
  for (std::size_t total = 0; total <= degree; ++total) {
    Exponents e(num_vars, 0);
    std::vector<Exponents> level;
    // Compositions of `total` into num_vars parts.
    auto rec = [&](auto&& self, std::size_t var, std::size_t left) -> void {
      if (var + 1 == num_vars) {
        e[var] = static_cast<std::uint32_t>(left);
        level.push_back(e);
        return;
      }
      for (std::size_t k = left + 1; k-- > 0;) {
        e[var] = static_cast<std::uint32_t>(k);
        self(self, var + 1, left - k);
      }
    };
    rec(rec, 0, total);
    out.insert(out.end(), level.begin(), level.end());
  }
}

}  // namespace

void validate(const InstanceSpec& spec) {
  if (spec.dim < 2) throw ValidationError("instance dimension must be at least 2");
  if (spec.coeff_bound == 0) throw ValidationError("coeff_bound must be positive");
}

Rational random_rational(std::mt19937_64& rng, unsigned bound) {
  std::uniform_int_distribution<long long> num(-static_cast<long long>(bound), bound);
  std::uniform_int_distribution<long long> den(1, bound);
  const long long n = num(rng);
  const long long d = den(rng);
  return make_rational(n, d);
}

Poly random_poly(std::mt19937_64& rng, std::size_t num_vars, std::size_t degree, unsigned bound) {
  std::vector<Exponents> monomials;
  enumerate_monomials(num_vars, degree, monomials);
  std::vector<Poly::Term> terms;
  terms.reserve(monomials.size());
  for (auto& e : monomials) terms.push_back({std::move(e), random_rational(rng, bound)});
  return Poly::from_terms(num_vars, std::move(terms));
}

TensorField random_field(std::mt19937_64& rng, std::size_t dim, Valence valence, std::size_t degree,
                         unsigned bound) {
  return TensorField::generate(dim, valence,
                               [&](const MultiIndex&) { return random_poly(rng, dim, degree, bound); });
}

Connection generate_connection(const InstanceSpec& spec) {
  validate(spec);
  auto rng = make_rng(spec.seed, kConnectionStream);
  return Connection(random_field(rng, spec.dim, {1, 2}, spec.degree, spec.coeff_bound));
}

TensorField generate_field(const InstanceSpec& spec) {
  validate(spec);
  auto rng = make_rng(spec.seed, kFieldStream);
  return random_field(rng, spec.dim, spec.valence, spec.degree, spec.coeff_bound);
}

Instance generate_instance(const InstanceSpec& spec) {
  return Instance{spec, generate_connection(spec), generate_field(spec)};
}

std::mt19937_64 auxiliary_rng(std::uint64_t seed, std::uint64_t purpose) { return make_rng(seed, 100 + purpose); }

}  // namespace riccitype
