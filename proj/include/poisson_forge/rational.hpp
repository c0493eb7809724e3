#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace poisson_forge {

// Exact scalars. mpq_class keeps values canonical (lowest terms, positive
// denominator) after every arithmetic operation.
using Rational = mpq_class;
using BigInt = mpz_class;

using RationalMatrix = std::vector<std::vector<Rational>>;

// Accepts "n" or "n/d" with optional sign; throws Error(kParse) otherwise.
Rational parse_rational(std::string_view text);

// "n" for integers, "n/d" otherwise.
std::string to_string(const Rational& value);

}  // namespace poisson_forge
