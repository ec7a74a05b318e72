#pragma once

#include <stdexcept>
#include <string>

namespace riccitype {

/// Polynomial variable-count or evaluation-point length mismatch.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Tensor dimension or valence mismatch.
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct IndexError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

/// Invalid derivative kind or other out-of-domain parameter.
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Rejected user input: weights, supports, instance specs, JSON documents.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InsufficientSamplesError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace riccitype
