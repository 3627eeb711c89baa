#pragma once

#include <string>

#include "freeride/engine.hpp"

namespace freeride {

// Parses a JSON experiment config. Throws ParseError on malformed input (with
// byte position) and ValidationError naming the offending key on anything the
// engine would refuse. The result is fully validated.
SimulationConfig parse_config(const std::string& text);
SimulationConfig parse_config_file(const std::string& path);

// Canonical JSON serialization; parse_config(serialize_config(c)) round-trips.
std::string serialize_config(const SimulationConfig& config);

// Human-readable description of the config format (the `schema` subcommand).
std::string config_schema_text();

}  // namespace freeride
