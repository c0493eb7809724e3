#pragma once

#include <optional>
#include <string>
#include <vector>

#include "poisson_forge/linalg.hpp"
#include "poisson_forge/poisson.hpp"

namespace poisson_forge {

// Group algebra of Z^n with {g, h} = lambda(g, h) g h, lambda(g, h) = g^T L h.
// Elements are Laurent polynomials in t1..tn.
class TorusStructure {
 public:
  static TorusStructure create(const RationalMatrix& lambda);

  std::size_t rank() const noexcept { return lambda_.size(); }
  const RationalMatrix& lambda() const noexcept { return lambda_; }
  const ContextPtr& context() const noexcept { return context_; }
  const PoissonStructure& structure() const noexcept { return *structure_; }

  Rational pairing(const Exponents& g, const Exponents& h) const;
  bool is_central(const Exponents& g) const;

 private:
  RationalMatrix lambda_;
  ContextPtr context_;
  std::optional<PoissonStructure> structure_;
};

// Basis of C = {g : lambda(g, e_i) = 0 for all i} in row Hermite normal form.
IntegerMatrix central_lattice(const TorusStructure& t);

struct Decomposition {
  LaurentPoly gamma;                // support disjoint from C
  std::vector<LaurentPoly> theta;   // theta(e_i), support inside C
};

enum class WitnessPolicy { kSmallest, kLargest };

// D = ham_gamma + D_theta, with D_theta(t_i) = theta(e_i) t_i. Throws
// Error(kInconsistent) when a_g(x) lambda(g, y) = a_g(y) lambda(g, x) fails
// for some generator pair, i.e. D is not a Poisson derivation.
Decomposition decompose_derivation(const DerivationSpec& d, const TorusStructure& t,
                                   WitnessPolicy policy = WitnessPolicy::kSmallest);

// Index of the first generator where ham_gamma(t_i) + theta(e_i) t_i differs
// from D(t_i), or nullopt.
std::optional<std::size_t> verify_decomposition(const DerivationSpec& d, const Decomposition& dec,
                                                const TorusStructure& t);

// True when every admissible witness index gives the same coefficient c_g.
bool witness_independent(const DerivationSpec& d, const TorusStructure& t);

struct TorusDerivationInput {
  TorusStructure torus;
  DerivationSpec derivation;
};

// {"rank": n, "lambda": [[...]], "images": {"t1": expr, ...}}
TorusDerivationInput parse_torus_derivation_json(const std::string& text);

}  // namespace poisson_forge
