#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "poisson_forge/fraction.hpp"
#include "poisson_forge/poisson.hpp"

namespace poisson_forge {

// The family X_{1,j}, ..., X_{n,j} in the ambient localization.
struct ChainStage {
  int level = 0;
  std::vector<FractionElement> generators;
};

// One generated series term delta_j^k(X_{i,j+1}), cross-checked against the
// delta table composed on formal generators.
struct SeriesCheck {
  int level = 0;
  std::size_t i = 0;
  int k = 0;
  Rational sigma_weight;   // mu_ji - k eta_j
  bool homogeneous = false;
  bool agrees = false;
};

// Level j+1 -> level j. `ambient` is the bracket on the stage's context.
ChainStage pdda_step(const ChainStage& next, const PoissonOreData& o, const PoissonStructure& ambient,
                     int bound = kDefaultNilpotencyBound, std::vector<SeriesCheck>* trace = nullptr);

struct Chain {
  ContextPtr context;                 // original variables, chain denominators inverted
  std::optional<PoissonStructure> structure;
  std::vector<ChainStage> stages;     // levels n+1 down to 2
  std::map<std::size_t, Rational> eta;
  std::vector<SeriesCheck> trace;
  // X<i><j> for every stage, T<i>, the generators and the parameters.
  ContextPtr symbols;

  const ChainStage& level(int j) const;
  const ChainStage& final_stage() const { return stages.back(); }
};

Chain run_chain(const PoissonStructure& s, const PoissonOreData& o, int bound = kDefaultNilpotencyBound);

// Evaluates an expression over chain symbols such as "X14*X34*X54 - 1/2*X24*X54".
FractionElement evaluate_in_chain(const Chain& chain, const std::string& text);

std::string chain_symbol(const Chain& chain, std::size_t i, int level);

struct PairViolation {
  std::size_t i, j;
  LaurentPoly residue;
};

// {T_i, T_j} = M_ij T_i T_j for all i < j, cross-multiplied.
std::optional<PairViolation> verify_target_torus(const ChainStage& final_stage, const RationalMatrix& m,
                                                 const PoissonStructure& ambient);

struct LadderLine {
  int level = 0;
  std::string expr;
};

struct Ladder {
  std::string name;
  std::vector<LadderLine> lines;  // first line is the reference product
  int degree = 0;                 // total degree of the last line
  int steps = 0;                  // lines that are not bare products
};

struct LadderCheck {
  std::string name;
  int level = 0;
  bool trivial = false;  // a bare product of chain generators
  bool passed = false;
  LaurentPoly residue;
};

struct CentralCheck {
  std::string name;
  std::size_t j = 0;
  bool passed = false;
  LaurentPoly residue;
};

struct PullbackResult {
  std::vector<LadderCheck> lines;
  std::vector<CentralCheck> central;
  bool passed() const;
};

// Each ladder line is compared with the first; the last line of each ladder,
// a polynomial in the original generators, is checked to be central.
PullbackResult pull_central_chain(const Chain& chain, const std::vector<Ladder>& ladders);

// Chain dump, one "X<i><j> = expr" line per element.
std::vector<std::string> dump_chain(const Chain& chain);

}  // namespace poisson_forge
