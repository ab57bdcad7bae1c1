#include <map>
#include <stdexcept>
#include <string>

#include "imreg_cli/cli.hpp"

namespace imreg::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kJointProps = R"(
  "x_size": {"type": "integer", "minimum": 2},
  "y_size": {"type": "integer", "minimum": 2},
  "probs": {"type": "array", "minItems": 4, "items": {"type": "number", "minimum": 0}})";

std::string channel_schema() {
  return std::string(R"({"anyOf": [
    {"type": "object", "additionalProperties": false, "required": ["type", "crossover"],
     "properties": {"type": {"const": "bsc"},
                    "crossover": {"type": "number", "minimum": 0, "maximum": 1}}},
    {"type": "object", "additionalProperties": false,
     "required": ["type", "x_size", "y_size", "probs"],
     "properties": {"type": {"const": "joint"},)") +
         kJointProps + R"(}},
    {"type": "object", "additionalProperties": false, "required": ["type", "prior", "kernel"],
     "properties": {"type": {"const": "dmc"},
                    "prior": {"type": "array", "minItems": 1,
                              "items": {"type": "number", "minimum": 0}},
                    "kernel": {"type": "array", "minItems": 1,
                               "items": {"type": "object", "additionalProperties": false,
                                         "required": ["x_size", "y_size", "probs"],
                                         "properties": {"type": {"const": "joint"},)" +
         kJointProps + R"(}}}}}
  ]})";
}

constexpr const char* kGamma = R"({"anyOf": [
    {"type": "object", "additionalProperties": false, "required": ["power"],
     "properties": {"power": {"type": "number", "exclusiveMinimum": 0}}},
    {"type": "object", "additionalProperties": false, "required": ["constant"],
     "properties": {"constant": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1}}}
  ]})";

constexpr const char* kFamily = R"({"anyOf": [
    {"type": "string", "minLength": 1},
    {"type": "array", "minItems": 1,
     "items": {"type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 0}}}
  ]})";

constexpr const char* kCommon = R"(
  "schema_version": {"const": "1"},
  "seed": {"type": "integer", "minimum": 0})";

std::string fill(std::string text) {
  auto replace = [&text](const std::string& token, const std::string& with) {
    for (std::size_t pos = text.find(token); pos != std::string::npos; pos = text.find(token)) {
      text.replace(pos, token.size(), with);
    }
  };
  replace("@COMMON@", kCommon);
  replace("@CHANNEL@", channel_schema());
  replace("@GAMMA@", kGamma);
  replace("@FAMILY@", kFamily);
  return text;
}

std::map<std::string, Json> build() {
  std::map<std::string, Json> s;
  s["moments"] = Json::parse(fill(R"({
    "title": "imreg moments config", "type": "object", "additionalProperties": false,
    "required": ["schema_version", "channel"],
    "properties": {@COMMON@,
      "channel": @CHANNEL@,
      "rate_points": {"type": "integer", "minimum": 2, "maximum": 100000}}})"));
  s["bound"] = Json::parse(fill(R"({
    "title": "imreg bound config", "type": "object", "additionalProperties": false,
    "required": ["schema_version", "channel", "n"],
    "properties": {@COMMON@,
      "channel": @CHANNEL@,
      "n": {"type": "integer", "minimum": 3},
      "alpha": {"type": "number", "minimum": 0},
      "c": {"type": "number", "exclusiveMinimum": 0},
      "gamma": @GAMMA@,
      "delta": {"type": "number"},
      "epsilon": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1}}})"));
  s["samplesize"] = Json::parse(fill(R"({
    "title": "imreg samplesize config", "type": "object", "additionalProperties": false,
    "required": ["schema_version", "epsilons", "crossovers"],
    "properties": {@COMMON@,
      "epsilons": {"type": "array", "minItems": 1,
                   "items": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1}},
      "crossovers": {"type": "array", "minItems": 1,
                     "items": {"type": "number", "minimum": 0, "maximum": 1}},
      "alpha": {"type": "number", "minimum": 0},
      "c": {"type": "number", "exclusiveMinimum": 0},
      "gamma": @GAMMA@,
      "cap": {"type": "integer", "minimum": 1}}})"));
  s["simulate"] = Json::parse(fill(R"({
    "title": "imreg simulate config", "type": "object", "additionalProperties": false,
    "required": ["schema_version", "channel", "n", "trials"],
    "properties": {@COMMON@,
      "channel": @CHANNEL@,
      "n": {"type": "integer", "minimum": 1},
      "family": @FAMILY@,
      "decoders": {"type": "array", "minItems": 1,
                   "items": {"enum": ["ml", "mmi", "feinstein"]}},
      "delta": {"type": "number"},
      "trials": {"type": "integer", "minimum": 1},
      "alpha": {"type": "number", "minimum": 0},
      "gamma": @GAMMA@}})"));
  s["typecount"] = Json::parse(fill(R"({
    "title": "imreg typecount config", "type": "object", "additionalProperties": false,
    "required": ["schema_version", "n", "r"],
    "properties": {@COMMON@,
      "mode": {"enum": ["delay", "conditional"]},
      "n": {"type": "integer", "minimum": 1},
      "r": {"type": "integer", "minimum": 2},
      "r_y": {"type": "integer", "minimum": 2},
      "k": {"anyOf": [{"type": "integer", "minimum": 0}, {"const": "all"}]},
      "budget": {"type": "integer", "minimum": 1},
      "sequence": {"type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 0}}}})"));
  s["gap"] = Json::parse(fill(R"({
    "title": "imreg gap config", "type": "object", "additionalProperties": false,
    "required": ["schema_version", "n", "r", "kappa"],
    "properties": {@COMMON@,
      "n": {"type": "integer", "minimum": 1},
      "r": {"type": "integer", "minimum": 2},
      "kappa": {"anyOf": [{"type": "integer", "minimum": 1},
                          {"type": "array", "minItems": 1,
                           "items": {"type": "integer", "minimum": 1}}]},
      "e_star": {"type": "number"},
      "empirical": {"type": "object", "additionalProperties": false,
                    "required": ["channel", "trials"],
                    "properties": {"channel": @CHANNEL@, "family": @FAMILY@,
                                   "trials": {"type": "integer", "minimum": 1},
                                   "min_errors": {"type": "integer", "minimum": 1}}}}})"));
  s["validate-family"] = Json::parse(fill(R"({
    "title": "imreg validate-family config", "type": "object", "additionalProperties": false,
    "required": ["schema_version", "n", "family"],
    "properties": {@COMMON@,
      "n": {"type": "integer", "minimum": 1},
      "family": @FAMILY@}})"));
  return s;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"moments",   "bound", "samplesize",
                                                 "simulate",  "typecount", "gap",
                                                 "validate-family"};
  return names;
}

const Json& command_schema(const std::string& command) {
  static const std::map<std::string, Json> schemas = build();
  const auto it = schemas.find(command);
  if (it == schemas.end()) throw std::out_of_range("no schema for command '" + command + "'");
  return it->second;
}

}  // namespace imreg::cli
