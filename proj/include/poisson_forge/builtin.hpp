#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "poisson_forge/algebra_file.hpp"
#include "poisson_forge/pdda.hpp"
#include "poisson_forge/quotient.hpp"

namespace poisson_forge {

// Raw text of an embedded data file by stem ("algebra_a", "theta",
// "theta_tilde", "reference"); Error(kIo) for unknown names.
const std::string& builtin_file(const std::string& stem);

struct Equation {
  std::string lhs;
  std::string rhs;
};

struct ReferenceData {
  std::vector<Equation> chain_formulas;
  std::vector<Equation> final_generators;
  std::vector<Ladder> ladders;
  std::vector<ReferenceIdentity> identities;    // in x1..x6
  std::vector<ReferenceIdentity> localization;  // in chain symbols
  std::map<std::size_t, std::string> eta;       // generator position -> value or "undefined"
};

// Parsed once and shared; safe to call from several threads.
const AlgebraDefinition& builtin_algebra();
const ReferenceData& reference_data();
const Chain& builtin_chain();
// Localized at x5, x6.
const QuotientAlgebra& builtin_quotient();

}  // namespace poisson_forge
