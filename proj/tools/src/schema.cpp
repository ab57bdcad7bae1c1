#include "imreg_cli/schema.hpp"

#include <cmath>

namespace imreg::cli {

namespace {

using Json = nlohmann::ordered_json;

bool has_type(const Json& doc, const std::string& type) {
  if (type == "object") return doc.is_object();
  if (type == "array") return doc.is_array();
  if (type == "string") return doc.is_string();
  if (type == "boolean") return doc.is_boolean();
  if (type == "null") return doc.is_null();
  if (type == "number") return doc.is_number();
  if (type == "integer") {
    if (doc.is_number_integer()) return true;
    return doc.is_number_float() && std::floor(doc.get<double>()) == doc.get<double>();
  }
  return false;
}

void validate(const Json& schema, const Json& doc, const std::string& path,
              std::vector<std::string>& errors) {
  const std::string where = path.empty() ? "/" : path;

  if (schema.contains("anyOf")) {
    bool any = false;
    for (const auto& option : schema["anyOf"]) {
      std::vector<std::string> sub;
      validate(option, doc, path, sub);
      if (sub.empty()) {
        any = true;
        break;
      }
    }
    if (!any) errors.push_back(where + ": does not match any allowed form");
  }

  if (schema.contains("type")) {
    const auto& t = schema["type"];
    bool ok = false;
    if (t.is_array()) {
      for (const auto& option : t) ok = ok || has_type(doc, option.get<std::string>());
    } else {
      ok = has_type(doc, t.get<std::string>());
    }
    if (!ok) {
      errors.push_back(where + ": expected type " + t.dump());
      return;
    }
  }

  if (schema.contains("const") && doc != schema["const"]) {
    errors.push_back(where + ": must equal " + schema["const"].dump());
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& v : schema["enum"]) found = found || v == doc;
    if (!found) errors.push_back(where + ": must be one of " + schema["enum"].dump());
  }

  if (doc.is_number()) {
    const double v = doc.get<double>();
    if (schema.contains("minimum") && v < schema["minimum"].get<double>()) {
      errors.push_back(where + ": must be >= " + schema["minimum"].dump());
    }
    if (schema.contains("maximum") && v > schema["maximum"].get<double>()) {
      errors.push_back(where + ": must be <= " + schema["maximum"].dump());
    }
    if (schema.contains("exclusiveMinimum") && v <= schema["exclusiveMinimum"].get<double>()) {
      errors.push_back(where + ": must be > " + schema["exclusiveMinimum"].dump());
    }
    if (schema.contains("exclusiveMaximum") && v >= schema["exclusiveMaximum"].get<double>()) {
      errors.push_back(where + ": must be < " + schema["exclusiveMaximum"].dump());
    }
  }

  if (doc.is_string() && schema.contains("minLength") &&
      doc.get<std::string>().size() < schema["minLength"].get<std::size_t>()) {
    errors.push_back(where + ": string too short");
  }

  if (doc.is_array()) {
    if (schema.contains("minItems") && doc.size() < schema["minItems"].get<std::size_t>()) {
      errors.push_back(where + ": needs at least " + schema["minItems"].dump() + " items");
    }
    if (schema.contains("items")) {
      for (std::size_t i = 0; i < doc.size(); ++i) {
        validate(schema["items"], doc[i], path + "/" + std::to_string(i), errors);
      }
    }
  }

  if (doc.is_object()) {
    const Json empty = Json::object();
    const Json& props = schema.contains("properties") ? schema["properties"] : empty;
    if (schema.contains("required")) {
      for (const auto& key : schema["required"]) {
        if (!doc.contains(key.get<std::string>())) {
          errors.push_back(where + ": missing required key '" + key.get<std::string>() + "'");
        }
      }
    }
    const bool closed = schema.contains("additionalProperties") &&
                        schema["additionalProperties"].is_boolean() &&
                        !schema["additionalProperties"].get<bool>();
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      if (props.contains(it.key())) {
        validate(props[it.key()], it.value(), path + "/" + it.key(), errors);
      } else if (closed) {
        errors.push_back(where + ": unknown key '" + it.key() + "'");
      }
    }
  }
}

}  // namespace

std::vector<std::string> validate_schema(const Json& schema, const Json& doc) {
  std::vector<std::string> errors;
  validate(schema, doc, "", errors);
  return errors;
}

}  // namespace imreg::cli
