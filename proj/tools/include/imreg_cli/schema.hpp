#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace imreg::cli {

/// Validates `doc` against a JSON Schema subset: type, enum, const,
/// properties, required, additionalProperties (boolean), items, minItems,
/// minimum, maximum, exclusiveMinimum, exclusiveMaximum, minLength, anyOf.
/// Returns one message per violation, each prefixed by its JSON pointer.
std::vector<std::string> validate_schema(const nlohmann::ordered_json& schema,
                                         const nlohmann::ordered_json& doc);

}  // namespace imreg::cli
