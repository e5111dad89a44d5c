#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>

#include "gradenorm/norms.hpp"

namespace gradenorm {

using Json = nlohmann::json;

/// Configuration problems exit the CLI with code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json load_config_file(const std::string& path);

/// Apply a --key=value override with a dotted path (e.g. params.seed=7).
/// The value is parsed as JSON when possible, else taken as a string.
void apply_override(Json& config, const std::string& dotted_key, const std::string& value);

/// Fill command defaults and validate: required sections present, unknown
/// keys rejected, values in range.  Returns the fully resolved config that
/// reports embed for reproducibility.
Json resolve_config(const std::string& command, Json config);

Field config_field(const Json& config);

template <class S>
SpecPtr<S> algebra_from_json(const Json& algebra);

WeightSpec weights_from_json(const Json& norm_block);

template <class S>
NormSpec<S> norm_from_json(const Json& norm_block, int generators);

}  // namespace gradenorm
