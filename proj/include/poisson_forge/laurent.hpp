#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "poisson_forge/rational.hpp"

namespace poisson_forge {

// Ordered set of variable names with per-variable flags.
//
// Invertible variables may carry negative exponents. Parameter variables are
// central scalars (alpha, beta): they bracket to zero with everything and are
// never inverted.
class VarContext {
 public:
  struct Variable {
    std::string name;
    bool invertible = false;
    bool parameter = false;
  };

  static std::shared_ptr<const VarContext> create(std::vector<Variable> variables);

  std::size_t size() const noexcept { return variables_.size(); }
  const Variable& variable(std::size_t i) const { return variables_.at(i); }
  const std::string& name(std::size_t i) const { return variables_.at(i).name; }
  bool invertible(std::size_t i) const { return variables_.at(i).invertible; }
  bool parameter(std::size_t i) const { return variables_.at(i).parameter; }

  std::optional<std::size_t> find(std::string_view name) const;
  // Throws Error(kUnknownIdentifier).
  std::size_t index(std::string_view name) const;

  // Positions of the non-parameter variables, in declaration order.
  std::vector<std::size_t> generators() const;

  bool same_layout(const VarContext& other) const;

 private:
  explicit VarContext(std::vector<Variable> variables);

  std::vector<Variable> variables_;
  std::unordered_map<std::string, std::size_t> by_name_;
};

using ContextPtr = std::shared_ptr<const VarContext>;

// Exponent vector indexed by context position.
using Exponents = std::vector<int>;

int total_degree(const Exponents& e);

// Total degree ascending, then lexicographically descending. The order is
// compatible with multiplication, so the last term is a leading term.
struct MonomialOrder {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

class LaurentPoly {
 public:
  using TermMap = std::map<Exponents, Rational, MonomialOrder>;

  explicit LaurentPoly(ContextPtr context);

  static LaurentPoly constant(ContextPtr context, const Rational& c);
  static LaurentPoly variable(ContextPtr context, std::size_t index, int power = 1);
  static LaurentPoly variable(ContextPtr context, std::string_view name, int power = 1);
  static LaurentPoly monomial(ContextPtr context, Exponents exponents, const Rational& c = 1);
  static LaurentPoly from_terms(ContextPtr context, TermMap terms);

  const ContextPtr& context() const noexcept { return context_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  std::optional<Rational> constant_value() const;
  Rational coefficient(const Exponents& e) const;
  // Largest total degree among the terms; 0 for the zero polynomial.
  int degree() const;
  int degree_in(std::size_t var) const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  LaurentPoly& operator*=(const LaurentPoly& other);
  LaurentPoly& operator*=(const Rational& c);

  // Negative powers are only defined for monomials over invertible variables.
  LaurentPoly pow(int n) const;

  // Same terms in another context with an identical layout of names' positions
  // and compatible masks (used to move between X and x spellings).
  LaurentPoly rebind(ContextPtr context) const;

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  // Adds c * x^e in place, dropping the term if it cancels.
  void add_term(const Exponents& e, const Rational& c);

 private:
  ContextPtr context_;
  TermMap terms_;
};

LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b);
LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b);
LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly operator*(LaurentPoly a, const Rational& c);
LaurentPoly operator*(const Rational& c, LaurentPoly a);

LaurentPoly add(const LaurentPoly& f, const LaurentPoly& g);
LaurentPoly multiply(const LaurentPoly& f, const LaurentPoly& g);

LaurentPoly partial_derivative(const LaurentPoly& f, std::size_t var);
LaurentPoly partial_derivative(const LaurentPoly& f, std::string_view var);

// Simultaneous substitution. `images` maps source variable positions to values
// in `target`; unmapped variables are carried over by name. A variable that
// occurs with a negative exponent needs a single-monomial image over
// invertible variables.
LaurentPoly substitute(const LaurentPoly& f, const std::map<std::size_t, LaurentPoly>& images,
                       const ContextPtr& target);
LaurentPoly substitute(const LaurentPoly& f, const std::map<std::size_t, LaurentPoly>& images);

// Exact quotient f / a in the Laurent ring of f's context, if it exists and is
// found within the search budget.
std::optional<LaurentPoly> divide_exact(const LaurentPoly& f, const LaurentPoly& a);

// Three-way comparison of term maps, used to keep denominator factors sorted.
int compare(const LaurentPoly& a, const LaurentPoly& b);

void require_same_context(const LaurentPoly& a, const LaurentPoly& b);
void require_same_context(const ContextPtr& a, const ContextPtr& b);

}  // namespace poisson_forge
