#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "poisson_forge/laurent.hpp"

namespace poisson_forge {

using IndexPair = std::pair<std::size_t, std::size_t>;

// Antisymmetric table of generator brackets, extended to everything by the
// biderivation formula {f,g} = sum_{i,j} {x_i,x_j} df/dx_i dg/dx_j.
class PoissonStructure {
 public:
  // Keys are context positions; (j,i) entries are stored negated as (i,j).
  // Entries touching a parameter, diagonal entries and conflicting duplicates
  // are rejected.
  static PoissonStructure from_table(ContextPtr context, const std::map<IndexPair, LaurentPoly>& entries);
  // {x_i, x_j} = mu[i][j] x_i x_j over the non-parameter variables in order.
  static PoissonStructure log_canonical(ContextPtr context, const RationalMatrix& mu);

  const ContextPtr& context() const noexcept { return context_; }
  const std::map<IndexPair, LaurentPoly>& table() const noexcept { return table_; }

  LaurentPoly generator_bracket(std::size_t i, std::size_t j) const;
  LaurentPoly bracket(const LaurentPoly& f, const LaurentPoly& g) const;

  // Copy with {x_i, x_j} replaced.
  PoissonStructure with_entry(std::size_t i, std::size_t j, const LaurentPoly& value) const;
  // Same table in a context of identical size (e.g. with more invertible variables).
  PoissonStructure rebind(ContextPtr context) const;

 private:
  explicit PoissonStructure(ContextPtr context) : context_(std::move(context)) {}

  ContextPtr context_;
  std::map<IndexPair, LaurentPoly> table_;  // i < j, nonzero values only
};

LaurentPoly bracket(const LaurentPoly& f, const LaurentPoly& g, const PoissonStructure& s);

struct JacobiViolation {
  std::size_t i, j, k;
  LaurentPoly residue;
};

LaurentPoly jacobiator(const PoissonStructure& s, const LaurentPoly& x, const LaurentPoly& y, const LaurentPoly& z);
// Generator triples i < j < k, first failure in lexicographic order.
std::optional<JacobiViolation> check_jacobi(const PoissonStructure& s);
std::size_t jacobi_triple_count(const PoissonStructure& s);

class DerivationSpec {
 public:
  // Every non-parameter variable needs an image; parameters default to 0.
  static DerivationSpec from_images(ContextPtr context, const std::map<std::size_t, LaurentPoly>& images);
  static DerivationSpec zero(ContextPtr context);

  const ContextPtr& context() const noexcept { return context_; }
  const LaurentPoly& image(std::size_t var) const { return images_.at(var); }

  // Leibniz extension: D(f) = sum_i D(x_i) df/dx_i.
  LaurentPoly apply(const LaurentPoly& f) const;

 private:
  DerivationSpec(ContextPtr context, std::vector<LaurentPoly> images)
      : context_(std::move(context)), images_(std::move(images)) {}

  ContextPtr context_;
  std::vector<LaurentPoly> images_;
};

struct DerivationViolation {
  std::size_t i, j;
  // D({x_i,x_j}) - {D x_i, x_j} - {x_i, D x_j}
  LaurentPoly residue;
};

std::optional<DerivationViolation> check_poisson_derivation(const DerivationSpec& d, const PoissonStructure& s);

// x_i -> {f, x_i}
DerivationSpec hamiltonian_derivation(const LaurentPoly& f, const PoissonStructure& s);

// {X_i, a} = sigma_i(a) X_i + delta_i(a) for a in the subalgebra on X_1..X_{i-1}.
// Indices are context positions of the generators, which come first.
class PoissonOreData {
 public:
  // sigma: (i, j) with j < i -> mu_ij; delta: (i, j) with j < i -> delta_i(X_j).
  static PoissonOreData from_tables(ContextPtr context, const std::map<IndexPair, Rational>& sigma,
                                    const std::map<IndexPair, LaurentPoly>& delta);

  const ContextPtr& context() const noexcept { return context_; }
  std::size_t rank() const noexcept { return rank_; }

  // Antisymmetric extension of the sigma table.
  Rational mu(std::size_t i, std::size_t j) const;
  LaurentPoly delta(std::size_t i, std::size_t j) const;
  bool delta_is_zero(std::size_t i) const;

  // sigma_i and delta_i extended as derivations; the argument may only involve
  // X_1..X_{i-1} and parameters.
  LaurentPoly apply_sigma(std::size_t i, const LaurentPoly& f) const;
  LaurentPoly apply_delta(std::size_t i, const LaurentPoly& f) const;

 private:
  PoissonOreData(ContextPtr context, std::size_t rank) : context_(std::move(context)), rank_(rank) {}
  void require_below(std::size_t i, const LaurentPoly& f) const;

  ContextPtr context_;
  std::size_t rank_ = 0;
  RationalMatrix mu_;
  std::map<IndexPair, LaurentPoly> delta_;
};

// eta with (delta_i sigma_i - sigma_i delta_i)(X_j) = eta delta_i(X_j) for all j < i.
// Error(kUndefined) when delta_i vanishes on generators, Error(kInconsistent)
// when no single nonzero scalar works.
Rational compute_eta(const PoissonOreData& o, std::size_t i);

constexpr int kDefaultNilpotencyBound = 16;

// Smallest k with delta_i^k(X_j) = 0; Error(kNotNilpotent) past the bound.
int nilpotency_index(const PoissonOreData& o, std::size_t i, std::size_t j, int bound = kDefaultNilpotencyBound);

struct OreViolation {
  std::size_t i, j;
  LaurentPoly residue;
};

// Checks {X_i, X_j} = mu_ij X_j X_i + delta_i(X_j) for j < i against the table.
std::optional<OreViolation> check_ore_consistency(const PoissonOreData& o, const PoissonStructure& s);

// One integer vector per non-parameter variable; parameters weigh zero.
using WeightVector = std::vector<std::vector<int>>;

// nullopt when f is zero or not homogeneous.
std::optional<std::vector<int>> homogeneous_weight(const LaurentPoly& f, const WeightVector& w);
std::vector<int> monomial_weight(const Exponents& e, const WeightVector& w);

struct GradingViolation {
  std::size_t i, j;
  std::vector<int> expected;
  Exponents offending;
};

std::optional<GradingViolation> check_grading(const PoissonStructure& s, const WeightVector& w);

}  // namespace poisson_forge
