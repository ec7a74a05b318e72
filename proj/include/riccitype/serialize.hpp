#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "riccitype/identities.hpp"
#include "riccitype/instance.hpp"

namespace riccitype {

using Json = nlohmann::ordered_json;

/// A JSON integer when the value fits in int64, otherwise a decimal string.
Json integer_to_json(const Integer& value);
/// Accepts a JSON integer or a decimal string. Throws ValidationError.
Integer integer_from_json(const Json& j);

/// "p/q" (or "p").
Json rational_to_json(const Rational& value);
/// Accepts "p/q", an integer, or {num, den}. Throws ValidationError.
Rational rational_from_json(const Json& j);

/// [{coeff_num, coeff_den, exponents: [e1..eN]}, ...] in canonical term order.
Json poly_to_json(const Poly& p);
/// Throws ValidationError on malformed records or exponent vectors whose
/// length is not num_vars.
Poly poly_from_json(const Json& j, std::size_t num_vars);

/// {dim, p, q, components: [Poly...]} in row-major multi-index order.
Json tensor_to_json(const TensorField& t);
TensorField tensor_from_json(const Json& j);

/// {dim, L: [Poly...]} with L^i_{jk} at position (i·N + j)·N + k (0-based).
Json connection_to_json(const Connection& c);
Connection connection_from_json(const Json& j);

Json spec_to_json(const InstanceSpec& spec);
InstanceSpec spec_from_json(const Json& j);

/// {spec, connection, field}.
Json instance_to_json(const Instance& inst);
Instance instance_from_json(const Json& j);

/// 5×5 nested array of "p/q" strings, rows z = 1..5, columns kinds 0..4.
Json weights_to_json(const RhoWeights& w);
RhoWeights weights_from_json(const Json& j);

/// Throws ValidationError when the file cannot be read or parsed.
Json read_json_file(const std::filesystem::path& path);
/// Two-space indented, trailing newline. Throws std::runtime_error when the
/// file cannot be written.
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace riccitype
