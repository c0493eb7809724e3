#include <doctest.h>
#include <json.hpp>

#include <set>

#include "poisson_forge/builtin.hpp"
#include "poisson_forge/error.hpp"
#include "support.hpp"

using namespace pf_test;

namespace {

const AlgebraDefinition& A() { return builtin_algebra(); }
const PoissonStructure& S() { return *builtin_algebra().structure; }
LaurentPoly PA(const std::string& t) { return P(A().context, t); }

ContextPtr localized_a() {
  std::vector<VarContext::Variable> v;
  for (std::size_t i = 0; i < A().context->size(); ++i) {
    auto var = A().context->variable(i);
    var.invertible = var.name == "X5" || var.name == "X6";
    v.push_back(var);
  }
  return VarContext::create(v);
}

LaurentPoly oracle_jacobiator(const PoissonStructure& s, std::size_t i, std::size_t j, std::size_t k) {
  auto v = [&](std::size_t n) { return LaurentPoly::variable(s.context(), n); };
  return oracle_bracket(v(i), oracle_bracket(v(j), v(k), s), s) + oracle_bracket(v(j), oracle_bracket(v(k), v(i), s), s) +
         oracle_bracket(v(k), oracle_bracket(v(i), v(j), s), s);
}

// Raw sigma/delta tables from the definition file, applied as derivations.
struct OreOracle {
  std::map<std::pair<int, int>, Rational> mu;
  std::map<std::pair<int, int>, LaurentPoly> delta;

  OreOracle() {
    auto root = nlohmann::json::parse(builtin_file("algebra_a"));
    for (const auto& [k, v] : root["sigma"].items()) {
      int i = std::stoi(k.substr(0, k.find(','))), j = std::stoi(k.substr(k.find(',') + 1));
      mu[{i, j}] = Rational(v.get<int>());
    }
    for (const auto& [k, v] : root["delta"].items()) {
      int i = std::stoi(k.substr(0, k.find(','))), j = std::stoi(k.substr(k.find(',') + 1));
      delta.emplace(std::make_pair(i, j), PA(v.get<std::string>()));
    }
  }
  LaurentPoly sigma(int i, const LaurentPoly& f) const {
    LaurentPoly out(f.context());
    for (int l = 1; l < i; ++l) out += partial_derivative(f, l - 1) * LaurentPoly::variable(f.context(), l - 1) * mu.at({i, l});
    return out;
  }
  LaurentPoly del(int i, const LaurentPoly& f) const {
    LaurentPoly out(f.context());
    for (int l = 1; l < i; ++l) {
      auto it = delta.find({i, l});
      if (it != delta.end()) out += partial_derivative(f, l - 1) * it->second;
    }
    return out;
  }
  // eta from the first j with delta_i(X_j) != 0, checked on all j.
  std::optional<Rational> eta(int i) const {
    std::optional<Rational> found;
    for (int j = 1; j < i; ++j) {
      LaurentPoly xj = LaurentPoly::variable(A().context, j - 1);
      LaurentPoly d = del(i, xj);
      if (d.is_zero()) continue;
      LaurentPoly lhs = del(i, sigma(i, xj)) - sigma(i, d);
      Rational ratio = lhs.terms().rbegin()->second / d.terms().rbegin()->second;
      if (lhs != d * ratio) return std::nullopt;
      if (found && *found != ratio) return std::nullopt;
      found = ratio;
    }
    return found;
  }
};

}  // namespace

TEST_SUITE("poisson_core") {
  TEST_CASE("bracket values") {
    CHECK(S().bracket(PA("X2"), PA("X1")) == PA("-3*X1*X2"));
    auto ctx = localized_a();
    PoissonStructure s = S().rebind(ctx);
    // {X6, X5^-1} = -X5^-2 {X6, X5} = -X5^-2 (-3 X5 X6)
    CHECK(s.bracket(P(ctx, "X6"), P(ctx, "X5^-1")) == P(ctx, "3*X5^-1*X6"));
    CHECK(s.bracket(P(ctx, "X6"), P(ctx, "X5*X5^-1")).is_zero());
    for (std::size_t j : A().context->generators()) {
      for (const auto& [name, omega] : A().casimirs) {
        CHECK(S().bracket(omega, LaurentPoly::variable(A().context, j)).is_zero());
      }
    }
  }

  TEST_CASE("table construction") {
    auto ctx = A().context;
    std::size_t x1 = ctx->index("X1"), x2 = ctx->index("X2"), a = ctx->index("alpha");
    CHECK_THROWS_AS(PoissonStructure::from_table(ctx, {{{x1, x1}, PA("X1")}}), Error);
    CHECK_THROWS_AS(PoissonStructure::from_table(ctx, {{{x1, a}, PA("X1")}}), Error);
    try {
      PoissonStructure::from_table(ctx, {{{x1, x2}, PA("X1")}, {{x2, x1}, PA("X1")}});
      FAIL("expected a conflict");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kInconsistent);
    }
    auto s = PoissonStructure::from_table(ctx, {{{x2, x1}, PA("-3*X1*X2")}});
    CHECK(s.generator_bracket(x1, x2) == PA("3*X1*X2"));
  }

  TEST_CASE("bracket matches the independent evaluator, antisymmetry and Leibniz") {
    auto ctx = localized_a();
    PoissonStructure s = S().rebind(ctx);
    std::mt19937_64 rng(23);
    for (int round = 0; round < 60; ++round) {
      LaurentPoly f = random_poly(rng, ctx, 3, 2), g = random_poly(rng, ctx, 3, 2), h = random_poly(rng, ctx, 3, 2);
      CHECK(s.bracket(f, g) == oracle_bracket(f, g, s));
      CHECK(s.bracket(f, f).is_zero());
      CHECK(s.bracket(f, g) == -s.bracket(g, f));
      CHECK(s.bracket(f, g * h) == s.bracket(f, g) * h + g * s.bracket(f, h));
    }
  }

  TEST_CASE("Jacobi on the table and under mutations") {
    CHECK(jacobi_triple_count(S()) == 20);
    CHECK_FALSE(check_jacobi(S()).has_value());
    auto ctx = A().context;
    std::size_t x1 = ctx->index("X1"), x3 = ctx->index("X3");
    // {X3,X1} = -X1X3 - 2X2, i.e. {X1,X3} = X1X3 + 2X2
    auto mutated = S().with_entry(x1, x3, PA("X1*X3 + 2*X2"));
    auto v = check_jacobi(mutated);
    REQUIRE(v.has_value());
    LaurentPoly expected = oracle_jacobiator(mutated, v->i, v->j, v->k);
    CHECK_FALSE(expected.is_zero());
    CHECK(v->residue == expected);
    // every earlier triple satisfies Jacobi under the oracle
    auto gens = ctx->generators();
    for (std::size_t a = 0; a < gens.size(); ++a)
      for (std::size_t b = a + 1; b < gens.size(); ++b)
        for (std::size_t c = b + 1; c < gens.size(); ++c) {
          if (std::make_tuple(a, b, c) >= std::make_tuple(v->i, v->j, v->k)) continue;
          CHECK(oracle_jacobiator(mutated, a, b, c).is_zero());
        }
    // every single-coefficient +1 perturbation breaks Jacobi
    int mutations = 0;
    for (const auto& [key, value] : S().table()) {
      for (const auto& [e, c] : value.terms()) {
        auto m = S().with_entry(key.first, key.second, value + LaurentPoly::monomial(ctx, e));
        CHECK(check_jacobi(m).has_value());
        ++mutations;
      }
    }
    CHECK(mutations == 23);
  }

  TEST_CASE("derivation checks") {
    auto ctx = A().context;
    std::map<std::size_t, LaurentPoly> images;
    for (std::size_t g : ctx->generators()) images.emplace(g, LaurentPoly(ctx));
    images.at(0) = PA("X1");
    auto d = DerivationSpec::from_images(ctx, images);
    // (X2,X1): D(-3X1X2) = -3X1X2 = {X2, D X1}, so that pair is fine.
    LaurentPoly x1 = PA("X1"), x2 = PA("X2"), x3 = PA("X3");
    CHECK((d.apply(S().bracket(x2, x1)) - S().bracket(d.apply(x2), x1) - S().bracket(x2, d.apply(x1))).is_zero());
    // (X1,X3): D(X1X3 + X2) - {X1, X3} = X1X3 - X1X3 - X2
    auto v = check_poisson_derivation(d, S());
    REQUIRE(v.has_value());
    CHECK(v->i == 0);
    CHECK(v->j == 2);
    CHECK(v->residue == PA("-X2"));

    CHECK_FALSE(check_poisson_derivation(DerivationSpec::zero(ctx), S()).has_value());
    std::mt19937_64 rng(29);
    for (int round = 0; round < 30; ++round) {
      LaurentPoly f = random_poly(rng, ctx, 3, 2);
      CHECK_FALSE(check_poisson_derivation(hamiltonian_derivation(f, S()), S()).has_value());
    }
    CHECK_THROWS_AS(DerivationSpec::from_images(ctx, {{0, x1}}), Error);
  }

  TEST_CASE("Ore data and eta") {
    const auto& o = *A().ore;
    CHECK_FALSE(check_ore_consistency(o, S()).has_value());
    OreOracle oracle;
    std::map<int, Rational> expected = {{3, 2}, {4, 6}, {5, 2}, {6, 6}};
    for (const auto& [i, eta] : expected) {
      CHECK(oracle.eta(i) == eta);
      CHECK(compute_eta(o, i - 1) == eta);
    }
    CHECK_FALSE(oracle.eta(2).has_value());
    try {
      compute_eta(o, 1);
      FAIL("eta_2 should be undefined");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kUndefined);
    }
    for (std::size_t i = 1; i < 6; ++i) {
      for (std::size_t j = 0; j < i; ++j) CHECK(nilpotency_index(o, i, j) <= 4);
    }
    CHECK(o.apply_sigma(3, PA("X1*X2")) == PA("-3*X1*X2"));
    CHECK(o.apply_delta(5, PA("X4")) == PA("-4*X5^3"));
    CHECK_THROWS_AS(o.apply_delta(2, PA("X3")), Error);

    auto broken2 = S().with_entry(A().context->index("X1"), A().context->index("X3"), PA("X1*X3 + 2*X2"));
    auto v = check_ore_consistency(o, broken2);
    REQUIRE(v.has_value());
    CHECK(v->residue == PA("-X2"));
  }

  TEST_CASE("grading") {
    const auto& w = *A().weights;
    CHECK_FALSE(check_grading(S(), w).has_value());
    auto weight_of = [&](const LaurentPoly& f) {
      std::set<std::vector<int>> seen;
      for (const auto& [e, c] : f.terms()) {
        std::vector<int> s(2, 0);
        for (std::size_t i = 0; i < 6; ++i) {
          s[0] += e[i] * w[i][0];
          s[1] += e[i] * w[i][1];
        }
        seen.insert(s);
      }
      return seen;
    };
    CHECK(weight_of(A().casimirs[0].second) == std::set<std::vector<int>>{{4, 2}});
    CHECK(weight_of(A().casimirs[1].second) == std::set<std::vector<int>>{{6, 4}});
    CHECK(homogeneous_weight(A().casimirs[0].second, w) == std::vector<int>{4, 2});
    CHECK(homogeneous_weight(A().casimirs[1].second, w) == std::vector<int>{6, 4});

    WeightVector wrong = w;
    wrong[0] = {2, 0};
    auto v = check_grading(S(), wrong);
    REQUIRE(v.has_value());
    CHECK(monomial_weight(v->offending, wrong) != v->expected);
    CHECK_FALSE(homogeneous_weight(PA("X1 + X2"), w).has_value());
  }
}
