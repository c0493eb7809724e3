#pragma once

#include <json.hpp>
#include <string>
#include <utility>

#include "poisson_forge/error.hpp"
#include "poisson_forge/rational.hpp"

namespace poisson_forge::detail {

using nlohmann::json;

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kParse, std::string("malformed JSON: ") + e.what());
  }
}

[[noreturn]] inline void schema_error(const std::string& what) { throw Error(ErrorKind::kSchema, what); }

inline const json& require_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::string require_string(const json& j, const std::string& where) {
  if (!j.is_string()) schema_error(where + " must be a string");
  return j.get<std::string>();
}

inline Rational json_rational(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  schema_error(where + " must be an integer or a \"p/q\" string");
}

// "i,j" with 1-based indices.
inline std::pair<std::size_t, std::size_t> index_pair(const std::string& key, std::size_t limit) {
  auto comma = key.find(',');
  if (comma == std::string::npos) schema_error("key '" + key + "' is not of the form \"i,j\"");
  try {
    std::size_t used = 0;
    long i = std::stol(key.substr(0, comma), &used);
    long j = std::stol(key.substr(comma + 1));
    if (i < 1 || j < 1 || static_cast<std::size_t>(i) > limit || static_cast<std::size_t>(j) > limit) {
      schema_error("index out of range in key '" + key + "'");
    }
    return {static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)};
  } catch (const std::logic_error&) {
    schema_error("key '" + key + "' is not of the form \"i,j\"");
  }
}

}  // namespace poisson_forge::detail
