#include "riccitype/serialize.hpp"

#include <fstream>
#include <limits>

#include "riccitype/errors.hpp"

namespace riccitype {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing JSON field '") + key + "'");
  return j.at(key);
}

std::size_t size_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw ValidationError(std::string("field '") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

}  // namespace

Json integer_to_json(const Integer& value) {
  if (mpz_fits_slong_p(value.get_mpz_t()) && sizeof(long) >= sizeof(std::int64_t))
    return static_cast<std::int64_t>(value.get_si());
  return value.get_str();
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    Integer out;
    if (out.set_str(j.get<std::string>(), 10) != 0) throw ValidationError("not an integer: " + j.get<std::string>());
    return out;
  }
  throw ValidationError("expected an integer, got " + j.dump());
}

Json rational_to_json(const Rational& value) { return to_string(value); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::exception& e) {
      throw ValidationError(e.what());
    }
  }
  if (j.is_number_integer()) return Rational(integer_from_json(j));
  if (j.is_object()) {
    const Integer den = integer_from_json(field(j, "den"));
    if (den == 0) throw ValidationError("zero denominator");
    return make_rational(integer_from_json(field(j, "num")), den);
  }
  throw ValidationError("expected a rational, got " + j.dump());
}

Json poly_to_json(const Poly& p) {
  Json out = Json::array();
  for (const auto& t : p.terms()) {
    Json rec;
    rec["coeff_num"] = integer_to_json(t.coeff.get_num());
    rec["coeff_den"] = integer_to_json(t.coeff.get_den());
    rec["exponents"] = t.exponents;
    out.push_back(std::move(rec));
  }
  return out;
}

Poly poly_from_json(const Json& j, std::size_t num_vars) {
  if (!j.is_array()) throw ValidationError("polynomial must be a list of term records");
  std::vector<Poly::Term> terms;
  terms.reserve(j.size());
  for (const auto& rec : j) {
    const Integer num = integer_from_json(field(rec, "coeff_num"));
    const Integer den = integer_from_json(field(rec, "coeff_den"));
    if (den <= 0) throw ValidationError("coefficient denominator must be positive");
    const Json& e = field(rec, "exponents");
    if (!e.is_array() || e.size() != num_vars)
      throw ValidationError("exponent vector must have " + std::to_string(num_vars) + " entries");
    Exponents exps;
    for (const auto& x : e) {
      if (!x.is_number_integer() || x.get<long long>() < 0) throw ValidationError("exponents must be non-negative");
      exps.push_back(x.get<std::uint32_t>());
    }
    terms.push_back({std::move(exps), make_rational(num, den)});
  }
  return Poly::from_terms(num_vars, std::move(terms));
}

Json tensor_to_json(const TensorField& t) {
  Json out;
  out["dim"] = t.dim();
  out["p"] = t.valence().upper;
  out["q"] = t.valence().lower;
  Json comps = Json::array();
  for (const auto& c : t.components()) comps.push_back(poly_to_json(c));
  out["components"] = std::move(comps);
  return out;
}

TensorField tensor_from_json(const Json& j) {
  const std::size_t dim = size_field(j, "dim");
  const Valence valence{size_field(j, "p"), size_field(j, "q")};
  const Json& comps = field(j, "components");
  std::size_t expected = 1;
  for (std::size_t i = 0; i < valence.rank(); ++i) expected *= dim;
  if (!comps.is_array() || comps.size() != expected)
    throw ValidationError("tensor needs " + std::to_string(expected) + " components");
  std::vector<Poly> polys;
  polys.reserve(expected);
  for (const auto& c : comps) polys.push_back(poly_from_json(c, dim));
  return TensorField(dim, valence, std::move(polys));
}

Json connection_to_json(const Connection& c) {
  Json out;
  out["dim"] = c.dim();
  Json comps = Json::array();
  for (const auto& p : c.coefficients().components()) comps.push_back(poly_to_json(p));
  out["L"] = std::move(comps);
  return out;
}

Connection connection_from_json(const Json& j) {
  const std::size_t dim = size_field(j, "dim");
  if (dim < 2) throw ValidationError("connection dimension must be at least 2");
  const Json& comps = field(j, "L");
  if (!comps.is_array() || comps.size() != dim * dim * dim)
    throw ValidationError("connection needs " + std::to_string(dim * dim * dim) + " coefficients");
  std::vector<Poly> polys;
  polys.reserve(comps.size());
  for (const auto& c : comps) polys.push_back(poly_from_json(c, dim));
  return Connection(TensorField(dim, {1, 2}, std::move(polys)));
}

Json spec_to_json(const InstanceSpec& spec) {
  Json out;
  out["dim"] = spec.dim;
  out["degree"] = spec.degree;
  out["valence"] = {spec.valence.upper, spec.valence.lower};
  out["seed"] = spec.seed;
  out["coeff_bound"] = spec.coeff_bound;
  return out;
}

InstanceSpec spec_from_json(const Json& j) {
  InstanceSpec spec;
  spec.dim = size_field(j, "dim");
  spec.degree = size_field(j, "degree");
  const Json& v = field(j, "valence");
  if (!v.is_array() || v.size() != 2) throw ValidationError("valence must be [p, q]");
  spec.valence = {v[0].get<std::size_t>(), v[1].get<std::size_t>()};
  spec.seed = field(j, "seed").get<std::uint64_t>();
  spec.coeff_bound = static_cast<unsigned>(size_field(j, "coeff_bound"));
  validate(spec);
  return spec;
}

Json instance_to_json(const Instance& inst) {
  Json out;
  out["spec"] = spec_to_json(inst.spec);
  out["connection"] = connection_to_json(inst.connection);
  out["field"] = tensor_to_json(inst.field);
  return out;
}

Instance instance_from_json(const Json& j) {
  Instance inst{spec_from_json(field(j, "spec")), connection_from_json(field(j, "connection")),
                tensor_from_json(field(j, "field"))};
  if (inst.field.dim() != inst.connection.dim()) throw ValidationError("field and connection dimensions differ");
  return inst;
}

Json weights_to_json(const RhoWeights& w) {
  Json out = Json::array();
  for (int z = 1; z <= 5; ++z) {
    Json row = Json::array();
    for (const auto& x : w.row(z)) row.push_back(rational_to_json(x));
    out.push_back(std::move(row));
  }
  return out;
}

RhoWeights weights_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 5) throw ValidationError("weights must be five rows");
  std::array<RhoWeights::Row, 5> rows;
  for (std::size_t z = 0; z < 5; ++z) {
    if (!j[z].is_array() || j[z].size() != 5) throw ValidationError("each weight row needs five entries");
    for (std::size_t k = 0; k < 5; ++k) rows[z][k] = rational_from_json(j[z][k]);
  }
  return RhoWeights(rows);
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace riccitype
