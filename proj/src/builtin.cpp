#include "poisson_forge/builtin.hpp"

#include "json_util.hpp"

namespace poisson_forge {

namespace detail {
const std::map<std::string, std::string>& embedded_files();
}

const std::string& builtin_file(const std::string& stem) {
  const auto& files = detail::embedded_files();
  auto it = files.find(stem);
  if (it == files.end()) throw Error(ErrorKind::kIo, "no built-in file named '" + stem + "'");
  return it->second;
}

const AlgebraDefinition& builtin_algebra() {
  static const AlgebraDefinition def = parse_algebra_json(builtin_file("algebra_a"));
  return def;
}

namespace {

ReferenceData load_reference() {
  using detail::json;
  json root = detail::parse_json(builtin_file("reference"));
  ReferenceData ref;
  auto equations = [&](const char* key) {
    std::vector<Equation> out;
    for (const auto& e : detail::require_field(root, key)) {
      out.push_back({detail::require_string(detail::require_field(e, "lhs"), "lhs"),
                     detail::require_string(detail::require_field(e, "rhs"), "rhs")});
    }
    return out;
  };
  auto identities = [&](const char* key) {
    std::vector<ReferenceIdentity> out;
    for (const auto& e : detail::require_field(root, key)) {
      out.push_back({detail::require_string(detail::require_field(e, "label"), "label"),
                     detail::require_string(detail::require_field(e, "lhs"), "lhs"),
                     detail::require_string(detail::require_field(e, "rhs"), "rhs")});
    }
    return out;
  };
  ref.chain_formulas = equations("chain_formulas");
  ref.final_generators = equations("final_generators");
  ref.identities = identities("identities");
  ref.localization = identities("localization");
  for (const auto& l : detail::require_field(root, "ladders")) {
    Ladder ladder{detail::require_string(detail::require_field(l, "name"), "name"), {},
                  detail::require_field(l, "degree").get<int>(), detail::require_field(l, "steps").get<int>()};
    for (const auto& line : detail::require_field(l, "lines")) {
      ladder.lines.push_back({detail::require_field(line, "level").get<int>(),
                              detail::require_string(detail::require_field(line, "expr"), "expr")});
    }
    ref.ladders.push_back(std::move(ladder));
  }
  for (const auto& [k, v] : detail::require_field(root, "eta").items()) {
    ref.eta.emplace(std::stoul(k) - 1, detail::require_string(v, "eta"));
  }
  return ref;
}

}  // namespace

const ReferenceData& reference_data() {
  static const ReferenceData ref = load_reference();
  return ref;
}

const Chain& builtin_chain() {
  static const Chain chain = [] {
    const auto& def = builtin_algebra();
    return run_chain(*def.structure, *def.ore);
  }();
  return chain;
}

const QuotientAlgebra& builtin_quotient() {
  static const QuotientAlgebra q = [] {
    const auto& def = builtin_algebra();
    return QuotientAlgebra::create(def, {def.context->index("X5"), def.context->index("X6")});
  }();
  return q;
}

}  // namespace poisson_forge
