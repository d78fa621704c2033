#pragma once

#include <string>

#include <json.hpp>

namespace hs {

// Validates a document against the JSON-Schema subset used by the shipped
// schemas: type (single or list), properties, required, items, enum,
// minItems, additionalProperties (boolean form).  On failure writes a
// human-readable message with a $.path[i].field locator into *error.
bool validate_json(const nlohmann::json& doc, const nlohmann::json& schema,
                   std::string* error);

}  // namespace hs
