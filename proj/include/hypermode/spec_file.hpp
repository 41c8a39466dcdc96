#pragma once

#include <string>
#include <string_view>

#include "hypermode/systems.hpp"

namespace hypermode {

/// Parse a system-spec document (JSON; grammar in docs/spec-format.md).
/// Throws ParseError (with line/column) for malformed text and
/// ValidationError for well-formed documents that violate the schema.
System parse_system(std::string_view text);
System load_system(const std::string& path);

/// Serialize to the same grammar. Closure-backed coefficients are rejected.
std::string print_system(const System& system);

}  // namespace hypermode
