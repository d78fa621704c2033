#include "hardyspec/schema.hpp"

#include <string>

namespace hs {

namespace {

bool matches_type(const nlohmann::json& doc, const std::string& t) {
    if (t == "object") return doc.is_object();
    if (t == "array") return doc.is_array();
    if (t == "string") return doc.is_string();
    if (t == "number") return doc.is_number();
    if (t == "integer") return doc.is_number_integer();
    if (t == "boolean") return doc.is_boolean();
    if (t == "null") return doc.is_null();
    return false;
}

std::string type_name(const nlohmann::json& doc) {
    if (doc.is_object()) return "object";
    if (doc.is_array()) return "array";
    if (doc.is_string()) return "string";
    if (doc.is_number_integer()) return "integer";
    if (doc.is_number()) return "number";
    if (doc.is_boolean()) return "boolean";
    if (doc.is_null()) return "null";
    return "unknown";
}

bool set_error(std::string* error, const std::string& msg) {
    if (error) *error = msg;
    return false;
}

bool validate_at(const nlohmann::json& doc, const nlohmann::json& schema,
                 const std::string& path, std::string* error) {
    if (!schema.is_object()) {
        return set_error(error, path + ": schema node must be an object");
    }

    if (schema.contains("type")) {
        const auto& ty = schema.at("type");
        bool ok = false;
        if (ty.is_string()) {
            ok = matches_type(doc, ty.get<std::string>());
        } else if (ty.is_array()) {
            for (const auto& alt : ty) {
                if (alt.is_string() && matches_type(doc, alt.get<std::string>())) {
                    ok = true;
                    break;
                }
            }
        }
        if (!ok) {
            return set_error(error, path + ": expected type " + ty.dump() +
                                        ", got " + type_name(doc));
        }
    }

    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& alt : schema.at("enum")) {
            if (doc == alt) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            return set_error(error, path + ": value " + doc.dump() +
                                        " not in enum " +
                                        schema.at("enum").dump());
        }
    }

    if (doc.is_object()) {
        if (schema.contains("required")) {
            for (const auto& key : schema.at("required")) {
                const std::string k = key.get<std::string>();
                if (!doc.contains(k)) {
                    return set_error(error,
                                     path + ": missing required field \"" + k +
                                         "\"");
                }
            }
        }
        const nlohmann::json* props = nullptr;
        if (schema.contains("properties")) props = &schema.at("properties");
        if (props) {
            for (auto it = props->begin(); it != props->end(); ++it) {
                if (doc.contains(it.key())) {
                    if (!validate_at(doc.at(it.key()), it.value(),
                                     path + "." + it.key(), error)) {
                        return false;
                    }
                }
            }
        }
        if (schema.contains("additionalProperties") &&
            schema.at("additionalProperties").is_boolean() &&
            !schema.at("additionalProperties").get<bool>()) {
            for (auto it = doc.begin(); it != doc.end(); ++it) {
                if (!props || !props->contains(it.key())) {
                    return set_error(error, path + ": unexpected field \"" +
                                                it.key() + "\"");
                }
            }
        }
    }

    if (doc.is_array()) {
        if (schema.contains("minItems")) {
            const auto need = schema.at("minItems").get<std::size_t>();
            if (doc.size() < need) {
                return set_error(error,
                                 path + ": array has " +
                                     std::to_string(doc.size()) +
                                     " items, needs at least " +
                                     std::to_string(need));
            }
        }
        if (schema.contains("items")) {
            const auto& item_schema = schema.at("items");
            for (std::size_t i = 0; i < doc.size(); ++i) {
                if (!validate_at(doc.at(i), item_schema,
                                 path + "[" + std::to_string(i) + "]",
                                 error)) {
                    return false;
                }
            }
        }
    }

    return true;
}

}  // namespace

bool validate_json(const nlohmann::json& doc, const nlohmann::json& schema,
                   std::string* error) {
    return validate_at(doc, schema, "$", error);
}

}  // namespace hs
