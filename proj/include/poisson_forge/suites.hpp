#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "poisson_forge/report.hpp"

namespace poisson_forge {

constexpr std::uint64_t kDefaultSeed = 20240601;
constexpr int kTorusRoundtrips = 100;

// jacobi, casimir, pdda, pullback, pl2, localization, torus, derivations,
// centre, grading.
const std::vector<std::string>& suite_names();

// One suite on the built-in data; "quotient" is an alias of "pl2".
// Error(kInvalidArgument) for unknown names.
Report run_suite(const std::string& name, std::uint64_t seed = kDefaultSeed);

// "all" expands to every suite in suite_names() order.
std::vector<Report> run_verify(const std::string& name, std::uint64_t seed = kDefaultSeed);

}  // namespace poisson_forge
