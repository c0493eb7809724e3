#include "poisson_forge/algebra_file.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json_util.hpp"
#include "poisson_forge/expr.hpp"

namespace poisson_forge {

using detail::json;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

std::set<std::string> name_set(const json& root, const char* key) {
  std::set<std::string> out;
  if (!root.contains(key)) return out;
  const json& arr = root.at(key);
  if (!arr.is_array()) detail::schema_error(std::string("'") + key + "' must be an array");
  for (const auto& v : arr) out.insert(detail::require_string(v, std::string("entry of '") + key + "'"));
  return out;
}

}  // namespace

AlgebraDefinition parse_algebra_json(const std::string& text) {
  json root = detail::parse_json(text);
  if (!root.is_object()) detail::schema_error("top level must be an object");
  const json& names = detail::require_field(root, "variables");
  if (!names.is_array() || names.empty()) detail::schema_error("'variables' must be a non-empty array");

  auto invertible = name_set(root, "invertible");
  auto parameters = name_set(root, "parameters");
  std::vector<VarContext::Variable> vars;
  for (const auto& n : names) {
    std::string name = detail::require_string(n, "variable name");
    vars.push_back({name, invertible.count(name) > 0, parameters.count(name) > 0});
    invertible.erase(name);
    parameters.erase(name);
  }
  if (!invertible.empty()) detail::schema_error("'invertible' names an undeclared variable");
  if (!parameters.empty()) detail::schema_error("'parameters' names an undeclared variable");
  bool seen_parameter = false;
  for (const auto& v : vars) {
    if (v.parameter) seen_parameter = true;
    if (!v.parameter && seen_parameter) detail::schema_error("parameters must follow the generators");
  }

  AlgebraDefinition def;
  try {
    def.context = VarContext::create(vars);
  } catch (const Error& e) {
    detail::schema_error(e.what());
  }
  const std::size_t n = vars.size();

  std::map<IndexPair, LaurentPoly> table;
  if (root.contains("brackets")) {
    const json& b = root.at("brackets");
    if (!b.is_object()) detail::schema_error("'brackets' must be an object");
    for (const auto& [key, value] : b.items()) {
      table.emplace(detail::index_pair(key, n), parse_expr(detail::require_string(value, "bracket " + key), def.context));
    }
  }
  try {
    def.structure = PoissonStructure::from_table(def.context, table);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kInvalidArgument || e.kind() == ErrorKind::kInconsistent) detail::schema_error(e.what());
    throw;
  }

  if (root.contains("sigma") || root.contains("delta")) {
    std::map<IndexPair, Rational> sigma;
    std::map<IndexPair, LaurentPoly> delta;
    if (root.contains("sigma")) {
      for (const auto& [key, value] : root.at("sigma").items()) {
        sigma.emplace(detail::index_pair(key, n), detail::json_rational(value, "sigma " + key));
      }
    }
    if (root.contains("delta")) {
      for (const auto& [key, value] : root.at("delta").items()) {
        delta.emplace(detail::index_pair(key, n), parse_expr(detail::require_string(value, "delta " + key), def.context));
      }
    }
    try {
      def.ore = PoissonOreData::from_tables(def.context, sigma, delta);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kInvalidArgument) detail::schema_error(e.what());
      throw;
    }
  }

  if (root.contains("weights")) {
    const json& w = root.at("weights");
    if (!w.is_array() || w.size() != def.context->generators().size()) {
      detail::schema_error("'weights' needs one vector per generator");
    }
    WeightVector weights;
    for (const auto& row : w) {
      if (!row.is_array()) detail::schema_error("weight entries must be arrays");
      std::vector<int> v;
      for (const auto& x : row) {
        if (!x.is_number_integer()) detail::schema_error("weights must be integers");
        v.push_back(x.get<int>());
      }
      if (!weights.empty() && v.size() != weights.front().size()) detail::schema_error("weights of unequal length");
      weights.push_back(std::move(v));
    }
    def.weights = std::move(weights);
  }

  if (root.contains("casimirs")) {
    const json& c = root.at("casimirs");
    if (!c.is_object()) detail::schema_error("'casimirs' must be an object");
    for (const auto& [key, value] : c.items()) {
      def.casimirs.emplace_back(key, parse_expr(detail::require_string(value, "casimir " + key), def.context));
    }
  }

  if (root.contains("torus_matrix")) {
    const json& m = root.at("torus_matrix");
    RationalMatrix mat;
    if (!m.is_array()) detail::schema_error("'torus_matrix' must be an array of rows");
    for (const auto& row : m) {
      if (!row.is_array() || row.size() != m.size()) detail::schema_error("'torus_matrix' must be square");
      std::vector<Rational> r;
      for (const auto& x : row) r.push_back(detail::json_rational(x, "torus_matrix entry"));
      mat.push_back(std::move(r));
    }
    def.torus_matrix = std::move(mat);
  }
  return def;
}

AlgebraDefinition load_algebra_file(const std::string& path) { return parse_algebra_json(read_text_file(path)); }

}  // namespace poisson_forge
