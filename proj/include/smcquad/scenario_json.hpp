#pragma once

#include <filesystem>
#include <string>

#include "smcquad/scenario.hpp"

namespace smcquad {

/// Parses and validates a scenario JSON file. Omitted fields take the
/// documented defaults; an empty file (or `{}`) yields the full-default
/// nominal scenario. Unknown keys are rejected.
///
/// Throws ParseError (syntax, unknown keys, wrong types) or
/// ValidationError (invariant violations), both with field context.
Scenario parse_scenario(const std::filesystem::path& path);

/// Same contract, operating on in-memory JSON text.
Scenario parse_scenario_text(const std::string& text, const std::string& origin = "<memory>");

}  // namespace smcquad
