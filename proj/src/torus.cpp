#include "poisson_forge/torus.hpp"

#include <map>

#include "json_util.hpp"
#include "poisson_forge/expr.hpp"

namespace poisson_forge {

TorusStructure TorusStructure::create(const RationalMatrix& lambda) {
  const std::size_t n = lambda.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (lambda[i].size() != n) throw Error(ErrorKind::kInvalidArgument, "lambda must be square");
    for (std::size_t j = 0; j < n; ++j) {
      if (lambda[i][j] != -lambda[j][i]) throw Error(ErrorKind::kInvalidArgument, "lambda must be antisymmetric");
    }
  }
  TorusStructure t;
  t.lambda_ = lambda;
  std::vector<VarContext::Variable> vars;
  for (std::size_t i = 0; i < n; ++i) vars.push_back({"t" + std::to_string(i + 1), true, false});
  t.context_ = VarContext::create(std::move(vars));
  t.structure_ = PoissonStructure::log_canonical(t.context_, lambda);
  return t;
}

Rational TorusStructure::pairing(const Exponents& g, const Exponents& h) const {
  Rational s = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (g[i] == 0) continue;
    for (std::size_t j = 0; j < rank(); ++j) {
      if (h[j] != 0) s += lambda_[i][j] * g[i] * h[j];
    }
  }
  return s;
}

bool TorusStructure::is_central(const Exponents& g) const {
  for (std::size_t j = 0; j < rank(); ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < rank(); ++i) s += lambda_[i][j] * g[i];
    if (s != 0) return false;
  }
  return true;
}

IntegerMatrix central_lattice(const TorusStructure& t) { return integer_left_kernel(t.lambda()); }

namespace {

Exponents unit(std::size_t n, std::size_t i) {
  Exponents e(n, 0);
  e[i] = 1;
  return e;
}

// a[g][i] = coefficient of g in D(t_i) t_i^-1
std::map<Exponents, std::vector<Rational>, MonomialOrder> coefficient_table(const DerivationSpec& d,
                                                                            const TorusStructure& t) {
  require_same_context(d.context(), t.context());
  const std::size_t n = t.rank();
  std::map<Exponents, std::vector<Rational>, MonomialOrder> a;
  for (std::size_t i = 0; i < n; ++i) {
    LaurentPoly shifted = d.image(i) * LaurentPoly::variable(t.context(), i, -1);
    for (const auto& [g, c] : shifted.terms()) {
      auto [it, inserted] = a.try_emplace(g, std::vector<Rational>(n, Rational(0)));
      it->second[i] = c;
    }
  }
  return a;
}

void check_compatibility(const Exponents& g, const std::vector<Rational>& ag, const TorusStructure& t) {
  const std::size_t n = t.rank();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      if (ag[x] * t.pairing(g, unit(n, y)) != ag[y] * t.pairing(g, unit(n, x))) {
        throw Error(ErrorKind::kInconsistent,
                    "not a Poisson derivation: a_g(x) lambda(g,y) != a_g(y) lambda(g,x) for g = " +
                        format_monomial(*t.context(), g) + ", x = t" + std::to_string(x + 1) + ", y = t" +
                        std::to_string(y + 1));
      }
    }
  }
}

}  // namespace

Decomposition decompose_derivation(const DerivationSpec& d, const TorusStructure& t, WitnessPolicy policy) {
  const std::size_t n = t.rank();
  Decomposition dec{LaurentPoly(t.context()), std::vector<LaurentPoly>(n, LaurentPoly(t.context()))};
  for (const auto& [g, ag] : coefficient_table(d, t)) {
    if (t.is_central(g)) {
      for (std::size_t i = 0; i < n; ++i) dec.theta[i].add_term(g, ag[i]);
      continue;
    }
    check_compatibility(g, ag, t);
    std::optional<std::size_t> y;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t idx = policy == WitnessPolicy::kSmallest ? k : n - 1 - k;
      if (t.pairing(g, unit(n, idx)) != 0) {
        y = idx;
        break;
      }
    }
    dec.gamma.add_term(g, ag[*y] / t.pairing(g, unit(n, *y)));
  }
  return dec;
}

std::optional<std::size_t> verify_decomposition(const DerivationSpec& d, const Decomposition& dec,
                                                const TorusStructure& t) {
  for (std::size_t i = 0; i < t.rank(); ++i) {
    LaurentPoly ti = LaurentPoly::variable(t.context(), i);
    LaurentPoly rebuilt = t.structure().bracket(dec.gamma, ti) + dec.theta.at(i) * ti;
    if (rebuilt != d.image(i)) return i;
  }
  return std::nullopt;
}

bool witness_independent(const DerivationSpec& d, const TorusStructure& t) {
  const std::size_t n = t.rank();
  for (const auto& [g, ag] : coefficient_table(d, t)) {
    if (t.is_central(g)) continue;
    std::optional<Rational> c;
    for (std::size_t y = 0; y < n; ++y) {
      Rational l = t.pairing(g, unit(n, y));
      if (l == 0) continue;
      Rational cy = ag[y] / l;
      if (c && *c != cy) return false;
      c = cy;
    }
  }
  return true;
}

TorusDerivationInput parse_torus_derivation_json(const std::string& text) {
  using detail::json;
  json root = detail::parse_json(text);
  if (!root.is_object()) detail::schema_error("top level must be an object");
  const json& rank = detail::require_field(root, "rank");
  if (!rank.is_number_integer() || rank.get<long long>() < 1) detail::schema_error("'rank' must be a positive integer");
  const std::size_t n = rank.get<std::size_t>();
  const json& lam = detail::require_field(root, "lambda");
  if (!lam.is_array() || lam.size() != n) detail::schema_error("'lambda' must have 'rank' rows");
  RationalMatrix lambda;
  for (const auto& row : lam) {
    if (!row.is_array() || row.size() != n) detail::schema_error("'lambda' must be square");
    std::vector<Rational> r;
    for (const auto& x : row) r.push_back(detail::json_rational(x, "lambda entry"));
    lambda.push_back(std::move(r));
  }
  std::optional<TorusStructure> torus;
  try {
    torus = TorusStructure::create(lambda);
  } catch (const Error& e) {
    detail::schema_error(e.what());
  }
  const json& images = detail::require_field(root, "images");
  if (!images.is_object()) detail::schema_error("'images' must be an object");
  std::map<std::size_t, LaurentPoly> parsed;
  for (const auto& [key, value] : images.items()) {
    auto idx = torus->context()->find(key);
    if (!idx) detail::schema_error("image for unknown generator '" + key + "'");
    parsed.emplace(*idx, parse_expr(detail::require_string(value, "image " + key), torus->context()));
  }
  if (parsed.size() != n) detail::schema_error("'images' needs one entry per generator");
  auto d = DerivationSpec::from_images(torus->context(), parsed);
  return TorusDerivationInput{*torus, d};
}

}  // namespace poisson_forge
