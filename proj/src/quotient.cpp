#include "poisson_forge/quotient.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "json_util.hpp"
#include "poisson_forge/expr.hpp"

namespace poisson_forge {

std::optional<Rational> parse_parameter_value(const std::string& text, const std::string& name) {
  if (text == "symbolic" || text == name || (!name.empty() && text == name.substr(0, 1))) return std::nullopt;
  try {
    return parse_rational(text);
  } catch (const Error&) {
    throw Error(ErrorKind::kParse, "value for " + name + " must be 'symbolic' or a rational, got '" + text + "'");
  }
}

namespace {

// Pending terms ordered by (a + b, b), then the monomial order.
struct MeasureOrder {
  std::size_t a, b;
  bool operator()(const Exponents& x, const Exponents& y) const {
    int mx = x[a] + x[b], my = y[a] + y[b];
    if (mx != my) return mx < my;
    if (x[b] != y[b]) return x[b] < y[b];
    return MonomialOrder{}(x, y);
  }
};

struct Pending {
  Rational coefficient;
  std::size_t depth = 0;
};

LaurentPoly reduce(const LaurentPoly& p, std::size_t a, std::size_t b, const RewriteRule* r3, const RewriteRule* r4,
                   std::size_t* rewrites, std::size_t* max_depth) {
  const ContextPtr& ctx = p.context();
  std::map<Exponents, Pending, MeasureOrder> pending(MeasureOrder{a, b});
  auto push = [&](const Exponents& e, const Rational& c, std::size_t depth) {
    auto [it, inserted] = pending.try_emplace(e, Pending{c, depth});
    if (!inserted) {
      it->second.coefficient += c;
      it->second.depth = std::max(it->second.depth, depth);
      if (it->second.coefficient == 0) pending.erase(it);
    }
  };
  for (const auto& [e, c] : p.terms()) push(e, c, 0);

  LaurentPoly result(ctx);
  while (!pending.empty()) {
    auto top = std::prev(pending.end());
    Exponents e = top->first;
    Pending term = top->second;
    pending.erase(top);
    const RewriteRule* rule = nullptr;
    if (r3 && e[r3->var] >= 2) {
      rule = r3;
    } else if (r4 && e[r4->var] >= 2) {
      rule = r4;
    }
    if (!rule) {
      result.add_term(e, term.coefficient);
      if (max_depth) *max_depth = std::max(*max_depth, term.depth);
      continue;
    }
    if (rewrites) ++*rewrites;
    e[rule->var] -= 2;
    for (const auto& [re, rc] : rule->rhs.terms()) {
      Exponents ne = e;
      for (std::size_t i = 0; i < ne.size(); ++i) ne[i] += re[i];
      push(ne, term.coefficient * rc, term.depth + 1);
    }
  }
  return result;
}

RewriteRule solve_square(const LaurentPoly& omega, std::size_t param) {
  const ContextPtr& ctx = omega.context();
  std::optional<std::size_t> var;
  for (std::size_t v : ctx->generators()) {
    Exponents sq(ctx->size(), 0);
    sq[v] = 2;
    if (omega.coefficient(sq) != 0) var = v;
  }
  if (!var) throw Error(ErrorKind::kInvalidArgument, "relation has no pure square term to rewrite");
  Exponents sq(ctx->size(), 0);
  sq[*var] = 2;
  Rational c = omega.coefficient(sq);
  LaurentPoly rest = omega - LaurentPoly::monomial(ctx, sq, c) - LaurentPoly::variable(ctx, param);
  return RewriteRule{*var, rest * (Rational(-1) / c)};
}

}  // namespace

QuotientAlgebra QuotientAlgebra::create(const AlgebraDefinition& ambient, const std::vector<std::size_t>& localized) {
  if (!ambient.structure || ambient.casimirs.size() < 2) {
    throw Error(ErrorKind::kInvalidArgument, "quotient needs a bracket table and two casimirs");
  }
  const auto& src = *ambient.context;
  std::vector<VarContext::Variable> lower, upper;
  for (std::size_t i = 0; i < src.size(); ++i) {
    VarContext::Variable v = src.variable(i);
    v.invertible = std::find(localized.begin(), localized.end(), i) != localized.end();
    if (v.invertible && v.parameter) throw Error(ErrorKind::kInvalidArgument, "cannot localize at a parameter");
    upper.push_back(v);
    if (!v.parameter) v.name[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(v.name[0])));
    lower.push_back(v);
  }
  QuotientAlgebra q;
  q.context_ = VarContext::create(lower);
  q.ambient_context_ = VarContext::create(upper);
  q.structure_ = ambient.structure->rebind(q.context_);
  q.omega1_ = ambient.casimirs[0].second.rebind(q.context_);
  q.omega2_ = ambient.casimirs[1].second.rebind(q.context_);
  q.alpha_ = q.context_->index("alpha");
  q.beta_ = q.context_->index("beta");

  RewriteRule r3 = solve_square(*q.omega1_, q.alpha_);
  RewriteRule r4 = solve_square(*q.omega2_, q.beta_);
  r4.rhs = reduce(r4.rhs, r3.var, r4.var, &r3, nullptr, nullptr, nullptr);
  q.rules_ = RewriteSystem{r3, r4};
  return q;
}

LaurentPoly QuotientAlgebra::parse(const std::string& text) const {
  try {
    return parse_expr(text, context_);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kUnknownIdentifier) throw;
    try {
      return parse_expr(text, ambient_context_).rebind(context_);
    } catch (const Error&) {
      throw e;
    }
  }
}

LaurentPoly normal_form(const QuotientAlgebra& q, const LaurentPoly& p, RewriteStats* stats) {
  require_same_context(p.context(), q.context());
  const auto& ctx = *q.context();
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] < 0 && !ctx.invertible(i)) {
        throw Error(ErrorKind::kInvertibility, "negative exponent on " + ctx.name(i));
      }
    }
  }
  const auto& rules = q.rules();
  const std::size_t a = rules.r3.var, b = rules.r4.var;
  if (!stats) return reduce(p, a, b, &rules.r3, &rules.r4, nullptr, nullptr);
  LaurentPoly result(q.context());
  for (const auto& [e, c] : p.terms()) {
    std::size_t depth = 0;
    result += reduce(LaurentPoly::monomial(q.context(), e, c), a, b, &rules.r3, &rules.r4, &stats->rewrites, &depth);
    stats->max_depth = std::max(stats->max_depth, depth);
    std::size_t potential = static_cast<std::size_t>(std::max(0, 2 * e[a] + 3 * e[b]));
    if (depth > potential || depth > static_cast<std::size_t>(std::max(0, 4 * (e[a] + e[b])))) {
      stats->within_bound = false;
    }
  }
  return result;
}

LaurentPoly specialize(const QuotientAlgebra& q, const LaurentPoly& p, const Specialization& s) {
  std::map<std::size_t, LaurentPoly> images;
  if (s.alpha) images.emplace(q.alpha_index(), LaurentPoly::constant(q.context(), *s.alpha));
  if (s.beta) images.emplace(q.beta_index(), LaurentPoly::constant(q.context(), *s.beta));
  if (images.empty()) return p;
  return substitute(p, images, q.context());
}

LaurentPoly normal_form(const QuotientAlgebra& q, const LaurentPoly& p, const Specialization& s) {
  return specialize(q, normal_form(q, p), s);
}

LaurentPoly quotient_bracket(const QuotientAlgebra& q, const LaurentPoly& f, const LaurentPoly& g,
                             const Specialization& s) {
  return normal_form(q, q.structure().bracket(f, g), s);
}

std::vector<CheckItem> check_casimirs(const QuotientAlgebra& q, const std::vector<ReferenceIdentity>& identities) {
  std::vector<CheckItem> out;
  auto item = [&](std::string label, LaurentPoly residue) {
    bool ok = residue.is_zero();
    out.push_back(CheckItem{std::move(label), ok, std::move(residue)});
  };
  const auto& ctx = q.context();
  item("normal_form(Omega1) = alpha", normal_form(q, q.omega1()) - LaurentPoly::variable(ctx, q.alpha_index()));
  item("normal_form(Omega2) = beta", normal_form(q, q.omega2()) - LaurentPoly::variable(ctx, q.beta_index()));
  for (const auto& id : identities) item(id.label, normal_form(q, q.parse(id.lhs) - q.parse(id.rhs)));
  return out;
}

DerivationCheck check_quotient_derivation(const QuotientAlgebra& q, const DerivationSpec& d, const Specialization& s) {
  require_same_context(d.context(), q.context());
  DerivationCheck check;
  auto item = [&](std::string label, const LaurentPoly& value) {
    LaurentPoly r = normal_form(q, value, s);
    bool ok = r.is_zero();
    check.items.push_back(CheckItem{std::move(label), ok, std::move(r)});
  };
  item("D(Omega1 - alpha)", d.apply(q.omega1()));
  item("D(Omega2 - beta)", d.apply(q.omega2()));
  const auto& ctx = q.context();
  const auto& st = q.structure();
  auto gens = ctx->generators();
  for (std::size_t x = 0; x < gens.size(); ++x) {
    for (std::size_t y = x + 1; y < gens.size(); ++y) {
      std::size_t i = gens[x], j = gens[y];
      LaurentPoly xi = LaurentPoly::variable(ctx, i), xj = LaurentPoly::variable(ctx, j);
      LaurentPoly r = d.apply(st.generator_bracket(i, j)) - st.bracket(d.image(i), xj) - st.bracket(xi, d.image(j));
      item("D{" + ctx->name(i) + "," + ctx->name(j) + "}", r);
    }
  }
  check.passed = std::all_of(check.items.begin(), check.items.end(), [](const CheckItem& c) { return c.passed; });
  return check;
}

QuotientDerivationInput parse_quotient_derivation_json(const QuotientAlgebra& q, const std::string& text) {
  using detail::json;
  json root = detail::parse_json(text);
  if (!root.is_object()) detail::schema_error("top level must be an object");
  auto param = [&](const char* key, const std::string& name) -> std::optional<Rational> {
    if (!root.contains(key)) return std::nullopt;
    const json& v = root.at(key);
    if (v.is_number_integer()) return detail::json_rational(v, key);
    return parse_parameter_value(detail::require_string(v, key), name);
  };
  Specialization spec{param("alpha", "alpha"), param("beta", "beta")};
  const json& images = detail::require_field(root, "images");
  if (!images.is_object()) detail::schema_error("'images' must be an object");
  std::map<std::size_t, LaurentPoly> parsed;
  for (const auto& [key, value] : images.items()) {
    auto idx = q.context()->find(key);
    if (!idx) idx = q.ambient_context()->find(key);
    if (!idx || q.context()->parameter(*idx)) detail::schema_error("image for unknown generator '" + key + "'");
    parsed.emplace(*idx, q.parse(detail::require_string(value, "image " + key)));
  }
  for (std::size_t g : q.context()->generators()) {
    if (!parsed.count(g)) detail::schema_error("missing image for '" + q.context()->name(g) + "'");
  }
  return QuotientDerivationInput{spec, DerivationSpec::from_images(q.context(), parsed)};
}

namespace {

void enumerate(const std::vector<std::size_t>& gens, const std::vector<int>& cap, std::size_t at, int remaining,
               Exponents& e, std::vector<Exponents>& out) {
  if (at == gens.size()) {
    out.push_back(e);
    return;
  }
  int top = std::min(remaining, cap[at]);
  for (int k = 0; k <= top; ++k) {
    e[gens[at]] = k;
    enumerate(gens, cap, at + 1, remaining - k, e, out);
  }
  e[gens[at]] = 0;
}

std::vector<Exponents> monomials_up_to(const VarContext& ctx, const std::vector<int>& cap, int low, int high) {
  auto gens = ctx.generators();
  std::vector<Exponents> all;
  Exponents e(ctx.size(), 0);
  enumerate(gens, cap, 0, high, e, all);
  std::vector<Exponents> out;
  for (auto& m : all) {
    if (total_degree(m) >= low) out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end(), MonomialOrder{});
  return out;
}

using RowKey = std::pair<std::size_t, Exponents>;

struct LinearSystem {
  std::map<RowKey, std::size_t> index;
  std::vector<SparseRow> rows;
  std::vector<Rational> rhs;

  std::size_t row(const RowKey& key) {
    auto [it, inserted] = index.try_emplace(key, rows.size());
    if (inserted) {
      rows.emplace_back();
      rhs.emplace_back(0);
    }
    return it->second;
  }
};

std::vector<LaurentPoly> centre_from(const ContextPtr& ctx, const std::vector<Exponents>& columns,
                                     const std::function<LaurentPoly(const LaurentPoly&, std::size_t)>& bracket_with) {
  LinearSystem sys;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    LaurentPoly m = LaurentPoly::monomial(ctx, columns[c]);
    for (std::size_t i : ctx->generators()) {
      LaurentPoly b = bracket_with(m, i);
      for (const auto& [e, v] : b.terms()) sys.rows[sys.row({i, e})][c] = v;
    }
  }
  auto kernel = canonical_span(nullspace(sys.rows, columns.size()));
  std::vector<LaurentPoly> out;
  for (const auto& v : kernel) {
    LaurentPoly f(ctx);
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (v[c] != 0) f.add_term(columns[c], v[c]);
    }
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

std::vector<Exponents> basis_monomials(const QuotientAlgebra& q, int low, int high) {
  const auto& ctx = *q.context();
  std::vector<int> cap;
  for (std::size_t g : ctx.generators()) {
    cap.push_back(g == q.rules().r3.var || g == q.rules().r4.var ? 1 : high);
  }
  return monomials_up_to(ctx, cap, low, high);
}

std::optional<LaurentPoly> bounded_inner_search(const QuotientAlgebra& q, const DerivationSpec& d, int degree,
                                                const Specialization& s) {
  require_same_context(d.context(), q.context());
  const auto& ctx = q.context();
  auto columns = basis_monomials(q, 1, degree);
  LinearSystem sys;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    LaurentPoly m = LaurentPoly::monomial(ctx, columns[c]);
    for (std::size_t i : ctx->generators()) {
      LaurentPoly b = quotient_bracket(q, m, LaurentPoly::variable(ctx, i), s);
      for (const auto& [e, v] : b.terms()) sys.rows[sys.row({i, e})][c] = v;
    }
  }
  for (std::size_t i : ctx->generators()) {
    LaurentPoly target = normal_form(q, d.image(i), s);
    for (const auto& [e, v] : target.terms()) sys.rhs[sys.row({i, e})] = v;
  }
  auto x = solve(sys.rows, sys.rhs, columns.size());
  if (!x) return std::nullopt;
  LaurentPoly out(ctx);
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if ((*x)[c] != 0) out.add_term(columns[c], (*x)[c]);
  }
  return out;
}

std::vector<LaurentPoly> bounded_centre(const PoissonStructure& s, int degree) {
  const auto& ctx = s.context();
  std::vector<int> cap(ctx->generators().size(), degree);
  auto columns = monomials_up_to(*ctx, cap, 0, degree);
  return centre_from(ctx, columns, [&](const LaurentPoly& m, std::size_t i) {
    return s.bracket(m, LaurentPoly::variable(ctx, i));
  });
}

std::vector<LaurentPoly> bounded_centre(const QuotientAlgebra& q, int degree, const Specialization& s) {
  const auto& ctx = q.context();
  auto columns = basis_monomials(q, 0, degree);
  return centre_from(ctx, columns, [&](const LaurentPoly& m, std::size_t i) {
    return quotient_bracket(q, m, LaurentPoly::variable(ctx, i), s);
  });
}

bool same_span(const std::vector<LaurentPoly>& a, const std::vector<LaurentPoly>& b) {
  std::map<Exponents, std::size_t, MonomialOrder> coords;
  for (const auto* side : {&a, &b}) {
    for (const auto& f : *side) {
      for (const auto& [e, c] : f.terms()) coords.try_emplace(e, coords.size());
    }
  }
  auto vectors = [&](const std::vector<LaurentPoly>& fs) {
    std::vector<std::vector<Rational>> out;
    for (const auto& f : fs) {
      std::vector<Rational> v(coords.size(), Rational(0));
      for (const auto& [e, c] : f.terms()) v[coords.at(e)] = c;
      out.push_back(std::move(v));
    }
    return canonical_span(out);
  };
  return vectors(a) == vectors(b);
}

}  // namespace poisson_forge
