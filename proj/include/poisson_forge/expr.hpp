#pragma once

#include <string>
#include <string_view>

#include "poisson_forge/laurent.hpp"

namespace poisson_forge {

// Recursive descent over
//   expr   := term { ("+" | "-") term }
//   term   := factor { "*" factor }
//   factor := base [ "^" signed_int ] | "-" factor
//   base   := rational | identifier | "(" expr ")"
// Throws ParseError, or Error(kUnknownIdentifier / kInvertibility).
LaurentPoly parse_expr(std::string_view text, const ContextPtr& context);

// Canonical text, e.g. "2*alpha + 3*x1*x4 - 1/2*X5*X6^-1". Zero prints as "0".
std::string format_expr(const LaurentPoly& f);

std::string format_monomial(const VarContext& context, const Exponents& e);

}  // namespace poisson_forge
