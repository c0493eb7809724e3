#pragma once

#include <random>
#include <string>

#include "poisson_forge/expr.hpp"
#include "poisson_forge/laurent.hpp"
#include "poisson_forge/poisson.hpp"

namespace pf_test {

using namespace poisson_forge;

inline LaurentPoly P(const ContextPtr& ctx, const std::string& text) { return parse_expr(text, ctx); }

inline ContextPtr xyz_context() {
  return VarContext::create({{"x", false, false}, {"y", true, false}, {"z", false, false}, {"a", false, true}});
}

// Random polynomial; invertible variables may get negative exponents.
inline LaurentPoly random_poly(std::mt19937_64& rng, const ContextPtr& ctx, int terms = 4, int max_exp = 2) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 3), count(0, terms);
  LaurentPoly f(ctx);
  for (int k = count(rng); k > 0; --k) {
    Exponents e(ctx->size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      std::uniform_int_distribution<int> ex(ctx->invertible(i) ? -max_exp : 0, max_exp);
      e[i] = ex(rng);
    }
    Rational c(num(rng), den(rng));
    c.canonicalize();
    f.add_term(e, c);
  }
  return f;
}

// Independent bracket: sum over i<j of table(i,j) (d_i f d_j g - d_j f d_i g).
inline LaurentPoly oracle_bracket(const LaurentPoly& f, const LaurentPoly& g, const PoissonStructure& s) {
  LaurentPoly out(f.context());
  for (const auto& [key, value] : s.table()) {
    auto [i, j] = key;
    out += value * (partial_derivative(f, i) * partial_derivative(g, j) -
                    partial_derivative(f, j) * partial_derivative(g, i));
  }
  return out;
}

}  // namespace pf_test
