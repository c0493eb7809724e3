#pragma once

#include <optional>
#include <string>
#include <vector>

#include "poisson_forge/algebra_file.hpp"
#include "poisson_forge/linalg.hpp"
#include "poisson_forge/poisson.hpp"

namespace poisson_forge {

// Each parameter is either symbolic (nullopt) or pinned to a rational.
struct Specialization {
  std::optional<Rational> alpha;
  std::optional<Rational> beta;
};

// Accepts "symbolic", "a"/"alpha" (resp. "b"/"beta") for symbolic, or "p/q".
std::optional<Rational> parse_parameter_value(const std::string& text, const std::string& name);

// x_v^2 -> rhs, rhs of degree <= 1 in both rewrite variables.
struct RewriteRule {
  std::size_t var = 0;
  LaurentPoly rhs;
};

struct RewriteSystem {
  RewriteRule r3;  // from Omega1 - alpha
  RewriteRule r4;  // from Omega2 - beta, already reduced by r3
};

struct RewriteStats {
  std::size_t rewrites = 0;
  // Longest rewrite chain from a single starting term, and whether every
  // chain stayed within 2a + 3b <= 4(a + b) steps (a, b the rewrite-variable
  // exponents of that starting term).
  std::size_t max_depth = 0;
  bool within_bound = true;
};

// K[x1..x6]/<Omega1 - alpha, Omega2 - beta>, localized at the inverted
// generators, with alpha and beta as parameters.
class QuotientAlgebra {
 public:
  // Lowercases the generator names of `ambient`; `localized` lists the
  // generator positions to invert.
  static QuotientAlgebra create(const AlgebraDefinition& ambient, const std::vector<std::size_t>& localized);

  const ContextPtr& context() const noexcept { return context_; }
  // The ambient spelling (X1..X6) with the same layout, for input.
  const ContextPtr& ambient_context() const noexcept { return ambient_context_; }
  const PoissonStructure& structure() const noexcept { return *structure_; }
  const RewriteSystem& rules() const noexcept { return *rules_; }
  const LaurentPoly& omega1() const noexcept { return *omega1_; }
  const LaurentPoly& omega2() const noexcept { return *omega2_; }
  std::size_t alpha_index() const noexcept { return alpha_; }
  std::size_t beta_index() const noexcept { return beta_; }

  // Parses in either spelling.
  LaurentPoly parse(const std::string& text) const;

 private:
  ContextPtr context_;
  ContextPtr ambient_context_;
  std::optional<PoissonStructure> structure_;
  std::optional<RewriteSystem> rules_;
  std::optional<LaurentPoly> omega1_, omega2_;
  std::size_t alpha_ = 0, beta_ = 0;
};

// Unique representative over the basis x1^i x2^j x3^e1 x4^e2 x5^k x6^l.
// Error(kInvertibility) on negative exponents of non-localized generators.
LaurentPoly normal_form(const QuotientAlgebra& q, const LaurentPoly& p, RewriteStats* stats = nullptr);
LaurentPoly normal_form(const QuotientAlgebra& q, const LaurentPoly& p, const Specialization& s);

// Replaces pinned parameters by their values.
LaurentPoly specialize(const QuotientAlgebra& q, const LaurentPoly& p, const Specialization& s);

LaurentPoly quotient_bracket(const QuotientAlgebra& q, const LaurentPoly& f, const LaurentPoly& g,
                             const Specialization& s = {});

struct CheckItem {
  std::string label;
  bool passed = false;
  LaurentPoly residue;
};

struct ReferenceIdentity {
  std::string label;
  std::string lhs;
  std::string rhs;
};

// normal_form(Omega1) = alpha, normal_form(Omega2) = beta, and every identity
// lhs = rhs reduces to zero.
std::vector<CheckItem> check_casimirs(const QuotientAlgebra& q, const std::vector<ReferenceIdentity>& identities);

struct DerivationCheck {
  bool passed = false;
  std::vector<CheckItem> items;  // two relation items, then generator pairs
};

// Well-definedness on both relations and bracket compatibility on all
// generator pairs, modulo the ideal under the specialization.
DerivationCheck check_quotient_derivation(const QuotientAlgebra& q, const DerivationSpec& d, const Specialization& s);

struct QuotientDerivationInput {
  Specialization specialization;
  DerivationSpec derivation;
};

// {"alpha": "symbolic"|"p/q", "beta": ..., "images": {"x1": expr, ...}}
QuotientDerivationInput parse_quotient_derivation_json(const QuotientAlgebra& q, const std::string& text);

// Basis monomials of total degree in [low, high], x5/x6 exponents >= 0.
std::vector<Exponents> basis_monomials(const QuotientAlgebra& q, int low, int high);

// x with normal_form({x, x_i}) = D(x_i) for every generator, over basis
// monomials of degree 1..d; nullopt if none exists.
std::optional<LaurentPoly> bounded_inner_search(const QuotientAlgebra& q, const DerivationSpec& d, int degree,
                                                const Specialization& s);

// Canonical (RREF) basis of {f : deg f <= d, {f, x_i} = 0 for all i}.
std::vector<LaurentPoly> bounded_centre(const PoissonStructure& s, int degree);
std::vector<LaurentPoly> bounded_centre(const QuotientAlgebra& q, int degree, const Specialization& s);

// Same span test used by the centre checks: RREF of coefficient vectors.
bool same_span(const std::vector<LaurentPoly>& a, const std::vector<LaurentPoly>& b);

}  // namespace poisson_forge
