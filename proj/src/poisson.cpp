#include "poisson_forge/poisson.hpp"

#include "poisson_forge/error.hpp"

namespace poisson_forge {

namespace {

void require_generator(const VarContext& ctx, std::size_t i) {
  if (i >= ctx.size()) throw Error(ErrorKind::kInvalidArgument, "variable index out of range");
  if (ctx.parameter(i)) {
    throw Error(ErrorKind::kInvalidArgument, "parameter '" + ctx.name(i) + "' has zero bracket by definition");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// PoissonStructure

PoissonStructure PoissonStructure::from_table(ContextPtr context, const std::map<IndexPair, LaurentPoly>& entries) {
  PoissonStructure s(context);
  for (const auto& [key, value] : entries) {
    auto [i, j] = key;
    require_generator(*context, i);
    require_generator(*context, j);
    require_same_context(value.context(), context);
    if (i == j) throw Error(ErrorKind::kInvalidArgument, "diagonal bracket entry for '" + context->name(i) + "'");
    IndexPair k = i < j ? key : IndexPair{j, i};
    LaurentPoly v = i < j ? value : -value;
    auto [it, inserted] = s.table_.emplace(k, v);
    if (!inserted && it->second != v) {
      throw Error(ErrorKind::kInconsistent, "conflicting entries for {" + context->name(k.first) + ", " +
                                                context->name(k.second) + "}");
    }
  }
  for (auto it = s.table_.begin(); it != s.table_.end();) {
    it = it->second.is_zero() ? s.table_.erase(it) : std::next(it);
  }
  return s;
}

PoissonStructure PoissonStructure::log_canonical(ContextPtr context, const RationalMatrix& mu) {
  auto gens = context->generators();
  if (mu.size() != gens.size()) throw Error(ErrorKind::kInvalidArgument, "matrix size does not match generators");
  std::map<IndexPair, LaurentPoly> entries;
  for (std::size_t a = 0; a < gens.size(); ++a) {
    if (mu[a].size() != gens.size()) throw Error(ErrorKind::kInvalidArgument, "matrix is not square");
    if (mu[a][a] != 0) throw Error(ErrorKind::kInvalidArgument, "matrix has a nonzero diagonal");
    for (std::size_t b = a + 1; b < gens.size(); ++b) {
      if (mu[a][b] != -mu[b][a]) throw Error(ErrorKind::kInvalidArgument, "matrix is not antisymmetric");
      Exponents e(context->size(), 0);
      e[gens[a]] = 1;
      e[gens[b]] = 1;
      entries.emplace(IndexPair{gens[a], gens[b]}, LaurentPoly::monomial(context, e, mu[a][b]));
    }
  }
  return from_table(context, entries);
}

LaurentPoly PoissonStructure::generator_bracket(std::size_t i, std::size_t j) const {
  if (i == j) return LaurentPoly(context_);
  auto it = table_.find(i < j ? IndexPair{i, j} : IndexPair{j, i});
  if (it == table_.end()) return LaurentPoly(context_);
  return i < j ? it->second : -it->second;
}

LaurentPoly PoissonStructure::bracket(const LaurentPoly& f, const LaurentPoly& g) const {
  require_same_context(f.context(), context_);
  require_same_context(g.context(), context_);
  LaurentPoly result(context_);
  if (f.is_constant() || g.is_constant()) return result;
  std::map<std::size_t, LaurentPoly> df, dg;
  auto partial = [](std::map<std::size_t, LaurentPoly>& cache, const LaurentPoly& p, std::size_t v) -> const LaurentPoly& {
    auto it = cache.find(v);
    if (it == cache.end()) it = cache.emplace(v, partial_derivative(p, v)).first;
    return it->second;
  };
  for (const auto& [key, value] : table_) {
    auto [i, j] = key;
    const LaurentPoly& fi = partial(df, f, i);
    const LaurentPoly& fj = partial(df, f, j);
    const LaurentPoly& gi = partial(dg, g, i);
    const LaurentPoly& gj = partial(dg, g, j);
    LaurentPoly cross = fi * gj - fj * gi;
    if (!cross.is_zero()) result += value * cross;
  }
  return result;
}

PoissonStructure PoissonStructure::with_entry(std::size_t i, std::size_t j, const LaurentPoly& value) const {
  std::map<IndexPair, LaurentPoly> entries = table_;
  entries.erase(i < j ? IndexPair{i, j} : IndexPair{j, i});
  entries.emplace(IndexPair{i, j}, value);
  return from_table(context_, entries);
}

PoissonStructure PoissonStructure::rebind(ContextPtr context) const {
  PoissonStructure s(context);
  for (const auto& [key, value] : table_) s.table_.emplace(key, value.rebind(context));
  return s;
}

LaurentPoly bracket(const LaurentPoly& f, const LaurentPoly& g, const PoissonStructure& s) { return s.bracket(f, g); }

// ---------------------------------------------------------------------------
// Jacobi

LaurentPoly jacobiator(const PoissonStructure& s, const LaurentPoly& x, const LaurentPoly& y, const LaurentPoly& z) {
  return s.bracket(x, s.bracket(y, z)) + s.bracket(y, s.bracket(z, x)) + s.bracket(z, s.bracket(x, y));
}

std::optional<JacobiViolation> check_jacobi(const PoissonStructure& s) {
  const auto& ctx = s.context();
  auto gens = ctx->generators();
  for (std::size_t a = 0; a < gens.size(); ++a) {
    for (std::size_t b = a + 1; b < gens.size(); ++b) {
      for (std::size_t c = b + 1; c < gens.size(); ++c) {
        LaurentPoly r = jacobiator(s, LaurentPoly::variable(ctx, gens[a]), LaurentPoly::variable(ctx, gens[b]),
                                   LaurentPoly::variable(ctx, gens[c]));
        if (!r.is_zero()) return JacobiViolation{gens[a], gens[b], gens[c], r};
      }
    }
  }
  return std::nullopt;
}

std::size_t jacobi_triple_count(const PoissonStructure& s) {
  std::size_t n = s.context()->generators().size();
  return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6;
}

// ---------------------------------------------------------------------------
// Derivations

DerivationSpec DerivationSpec::from_images(ContextPtr context, const std::map<std::size_t, LaurentPoly>& images) {
  std::vector<LaurentPoly> out(context->size(), LaurentPoly(context));
  for (const auto& [var, image] : images) {
    if (var >= context->size()) throw Error(ErrorKind::kInvalidArgument, "derivation image for unknown variable");
    require_same_context(image.context(), context);
    out[var] = image;
  }
  for (std::size_t i = 0; i < context->size(); ++i) {
    if (!context->parameter(i) && !images.count(i)) {
      throw Error(ErrorKind::kInvalidArgument, "derivation has no image for '" + context->name(i) + "'");
    }
  }
  return DerivationSpec(std::move(context), std::move(out));
}

DerivationSpec DerivationSpec::zero(ContextPtr context) {
  std::vector<LaurentPoly> out(context->size(), LaurentPoly(context));
  return DerivationSpec(std::move(context), std::move(out));
}

LaurentPoly DerivationSpec::apply(const LaurentPoly& f) const {
  require_same_context(f.context(), context_);
  LaurentPoly result(context_);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i].is_zero()) continue;
    LaurentPoly d = partial_derivative(f, i);
    if (!d.is_zero()) result += images_[i] * d;
  }
  return result;
}

std::optional<DerivationViolation> check_poisson_derivation(const DerivationSpec& d, const PoissonStructure& s) {
  const auto& ctx = s.context();
  require_same_context(d.context(), ctx);
  auto gens = ctx->generators();
  for (std::size_t a = 0; a < gens.size(); ++a) {
    for (std::size_t b = a + 1; b < gens.size(); ++b) {
      std::size_t i = gens[a], j = gens[b];
      LaurentPoly xi = LaurentPoly::variable(ctx, i);
      LaurentPoly xj = LaurentPoly::variable(ctx, j);
      LaurentPoly r = d.apply(s.generator_bracket(i, j)) - s.bracket(d.image(i), xj) - s.bracket(xi, d.image(j));
      if (!r.is_zero()) return DerivationViolation{i, j, r};
    }
  }
  return std::nullopt;
}

DerivationSpec hamiltonian_derivation(const LaurentPoly& f, const PoissonStructure& s) {
  const auto& ctx = s.context();
  std::map<std::size_t, LaurentPoly> images;
  for (std::size_t i : ctx->generators()) images.emplace(i, s.bracket(f, LaurentPoly::variable(ctx, i)));
  return DerivationSpec::from_images(ctx, images);
}

// ---------------------------------------------------------------------------
// Poisson-Ore data

PoissonOreData PoissonOreData::from_tables(ContextPtr context, const std::map<IndexPair, Rational>& sigma,
                                           const std::map<IndexPair, LaurentPoly>& delta) {
  auto gens = context->generators();
  for (std::size_t a = 0; a < gens.size(); ++a) {
    if (gens[a] != a) throw Error(ErrorKind::kSchema, "generators must precede parameters in the variable list");
  }
  PoissonOreData o(context, gens.size());
  std::size_t n = gens.size();
  o.mu_.assign(n, std::vector<Rational>(n, Rational(0)));
  for (const auto& [key, value] : sigma) {
    auto [i, j] = key;
    if (i >= n || j >= i) throw Error(ErrorKind::kInvalidArgument, "sigma entries need j < i");
    o.mu_[i][j] = value;
    o.mu_[j][i] = -value;
  }
  for (const auto& [key, value] : delta) {
    auto [i, j] = key;
    if (i >= n || j >= i) throw Error(ErrorKind::kInvalidArgument, "delta entries need j < i");
    require_same_context(value.context(), context);
    o.require_below(i, value);
    if (!value.is_zero()) o.delta_.emplace(key, value);
  }
  return o;
}

Rational PoissonOreData::mu(std::size_t i, std::size_t j) const { return mu_.at(i).at(j); }

LaurentPoly PoissonOreData::delta(std::size_t i, std::size_t j) const {
  auto it = delta_.find({i, j});
  return it == delta_.end() ? LaurentPoly(context_) : it->second;
}

bool PoissonOreData::delta_is_zero(std::size_t i) const {
  for (std::size_t j = 0; j < i; ++j) {
    if (delta_.count({i, j})) return false;
  }
  return true;
}

void PoissonOreData::require_below(std::size_t i, const LaurentPoly& f) const {
  for (const auto& [e, c] : f.terms()) {
    for (std::size_t k = i; k < rank_; ++k) {
      if (e[k] != 0) {
        throw Error(ErrorKind::kInvalidArgument,
                    "argument involves '" + context_->name(k) + "', outside the domain of the " +
                        std::to_string(i + 1) + "th Ore data");
      }
    }
  }
}

LaurentPoly PoissonOreData::apply_sigma(std::size_t i, const LaurentPoly& f) const {
  require_below(i, f);
  LaurentPoly result(context_);
  for (const auto& [e, c] : f.terms()) {
    Rational w = 0;
    for (std::size_t j = 0; j < i; ++j) w += mu_[i][j] * e[j];
    if (w != 0) result.add_term(e, w * c);
  }
  return result;
}

LaurentPoly PoissonOreData::apply_delta(std::size_t i, const LaurentPoly& f) const {
  require_below(i, f);
  LaurentPoly result(context_);
  for (std::size_t j = 0; j < i; ++j) {
    auto it = delta_.find({i, j});
    if (it == delta_.end()) continue;
    LaurentPoly d = partial_derivative(f, j);
    if (!d.is_zero()) result += it->second * d;
  }
  return result;
}

Rational compute_eta(const PoissonOreData& o, std::size_t i) {
  if (i >= o.rank()) throw Error(ErrorKind::kInvalidArgument, "index out of range");
  const auto& ctx = o.context();
  std::optional<Rational> eta;
  for (std::size_t j = 0; j < i; ++j) {
    LaurentPoly d = o.delta(i, j);
    if (d.is_zero()) continue;
    LaurentPoly xj = LaurentPoly::variable(ctx, j);
    LaurentPoly lhs = o.apply_delta(i, o.apply_sigma(i, xj)) - o.apply_sigma(i, d);
    const auto& [e, c] = *d.terms().rbegin();
    Rational candidate = lhs.coefficient(e) / c;
    if (lhs != d * candidate) {
      throw Error(ErrorKind::kInconsistent, "delta_" + std::to_string(i + 1) + " sigma_" + std::to_string(i + 1) +
                                                " commutator is not proportional to delta on " + ctx->name(j));
    }
    if (eta && *eta != candidate) {
      throw Error(ErrorKind::kInconsistent, "eta_" + std::to_string(i + 1) + " differs across generators");
    }
    eta = candidate;
  }
  if (!eta) throw Error(ErrorKind::kUndefined, "eta undefined: delta_" + std::to_string(i + 1) + " is zero");
  if (*eta == 0) throw Error(ErrorKind::kInconsistent, "eta_" + std::to_string(i + 1) + " is zero");
  return *eta;
}

int nilpotency_index(const PoissonOreData& o, std::size_t i, std::size_t j, int bound) {
  LaurentPoly p = LaurentPoly::variable(o.context(), j);
  for (int k = 0; k <= bound; ++k) {
    if (p.is_zero()) return k;
    p = o.apply_delta(i, p);
  }
  throw Error(ErrorKind::kNotNilpotent, "delta_" + std::to_string(i + 1) + " not nilpotent on " +
                                            o.context()->name(j) + " within " + std::to_string(bound) + " steps");
}

std::optional<OreViolation> check_ore_consistency(const PoissonOreData& o, const PoissonStructure& s) {
  require_same_context(o.context(), s.context());
  const auto& ctx = o.context();
  for (std::size_t i = 0; i < o.rank(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      LaurentPoly expected =
          LaurentPoly::variable(ctx, i) * LaurentPoly::variable(ctx, j) * o.mu(i, j) + o.delta(i, j);
      LaurentPoly r = s.generator_bracket(i, j) - expected;
      if (!r.is_zero()) return OreViolation{i, j, r};
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Gradings

namespace {

std::vector<std::vector<int>> per_position(const VarContext& ctx, const WeightVector& w) {
  auto gens = ctx.generators();
  if (w.size() != gens.size()) throw Error(ErrorKind::kInvalidArgument, "one weight per generator required");
  std::size_t dim = w.empty() ? 0 : w[0].size();
  std::vector<std::vector<int>> out(ctx.size(), std::vector<int>(dim, 0));
  for (std::size_t a = 0; a < gens.size(); ++a) {
    if (w[a].size() != dim) throw Error(ErrorKind::kInvalidArgument, "weights of unequal length");
    out[gens[a]] = w[a];
  }
  return out;
}

std::vector<int> weigh(const Exponents& e, const std::vector<std::vector<int>>& pos) {
  std::size_t dim = pos.empty() ? 0 : pos[0].size();
  std::vector<int> out(dim, 0);
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t k = 0; k < dim; ++k) out[k] += e[i] * pos[i][k];
  }
  return out;
}

}  // namespace

std::vector<int> monomial_weight(const Exponents& e, const WeightVector& w) {
  // Without a context, weights are read positionally.
  std::size_t dim = w.empty() ? 0 : w[0].size();
  std::vector<int> out(dim, 0);
  for (std::size_t i = 0; i < e.size() && i < w.size(); ++i) {
    for (std::size_t k = 0; k < dim; ++k) out[k] += e[i] * w[i][k];
  }
  return out;
}

std::optional<std::vector<int>> homogeneous_weight(const LaurentPoly& f, const WeightVector& w) {
  if (f.is_zero()) return std::nullopt;
  auto pos = per_position(*f.context(), w);
  std::optional<std::vector<int>> weight;
  for (const auto& [e, c] : f.terms()) {
    auto we = weigh(e, pos);
    if (weight && *weight != we) return std::nullopt;
    weight = we;
  }
  return weight;
}

std::optional<GradingViolation> check_grading(const PoissonStructure& s, const WeightVector& w) {
  const auto& ctx = s.context();
  auto pos = per_position(*ctx, w);
  auto gens = ctx->generators();
  for (std::size_t a = 0; a < gens.size(); ++a) {
    for (std::size_t b = a + 1; b < gens.size(); ++b) {
      std::size_t i = gens[a], j = gens[b];
      std::vector<int> expected = pos[i];
      for (std::size_t k = 0; k < expected.size(); ++k) expected[k] += pos[j][k];
      LaurentPoly value = s.generator_bracket(i, j);
      for (const auto& [e, c] : value.terms()) {
        if (weigh(e, pos) != expected) return GradingViolation{i, j, expected, e};
      }
    }
  }
  return std::nullopt;
}

}  // namespace poisson_forge
