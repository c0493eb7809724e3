#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "poisson_forge/poisson.hpp"

namespace poisson_forge {

// {"variables", "invertible", "parameters", "brackets": {"i,j": expr},
//  "sigma": {"i,j": rational}, "delta": {"i,j": expr}, "weights",
//  "casimirs": {name: expr}, "torus_matrix"}. Indices are 1-based positions
// in "variables".
struct AlgebraDefinition {
  ContextPtr context;
  std::optional<PoissonStructure> structure;
  std::optional<PoissonOreData> ore;
  std::optional<WeightVector> weights;
  std::vector<std::pair<std::string, LaurentPoly>> casimirs;
  std::optional<RationalMatrix> torus_matrix;
};

// Error(kSchema) on shape violations, Error(kParse) on malformed JSON or
// expressions.
AlgebraDefinition parse_algebra_json(const std::string& text);
AlgebraDefinition load_algebra_file(const std::string& path);

// Error(kIo) if unreadable.
std::string read_text_file(const std::string& path);

}  // namespace poisson_forge
