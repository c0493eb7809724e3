#include <doctest.h>

#include "poisson_forge/builtin.hpp"
#include "poisson_forge/error.hpp"
#include "support.hpp"

using namespace pf_test;

namespace {

const Chain& C() { return builtin_chain(); }

}  // namespace

TEST_SUITE("pdda") {
  TEST_CASE("eta values recorded by the chain") {
    std::map<std::size_t, Rational> expected = {{2, 2}, {3, 6}, {4, 2}, {5, 6}};
    CHECK(C().eta == expected);
    CHECK(C().stages.size() == 6);
    CHECK(C().stages.front().level == 7);
    CHECK(C().final_stage().level == 2);
  }

  TEST_CASE("level 6 against a direct series evaluation") {
    // X_{i,6} = sum_k delta_6^k(X_i) X6^-k / (6^k k!), delta_6 applied to
    // polynomials through its table on X1..X5.
    const auto& ctx = C().context;
    std::map<std::size_t, LaurentPoly> d6 = {{0, P(ctx, "-3*X5")},
                                             {1, P(ctx, "9*X4 - 18*X3*X5")},
                                             {2, P(ctx, "-6*X5^2")},
                                             {3, P(ctx, "-4*X5^3")}};
    auto delta = [&](const LaurentPoly& f) {
      LaurentPoly out(ctx);
      for (const auto& [v, img] : d6) out += partial_derivative(f, v) * img;
      return out;
    };
    const Rational eta = 6;
    for (std::size_t i = 0; i < 5; ++i) {
      LaurentPoly term = LaurentPoly::variable(ctx, i), sum = term;
      Rational scale = 1;
      for (int k = 1; k < 8; ++k) {
        term = delta(term);
        if (term.is_zero()) break;
        scale /= eta * k;
        sum += term * LaurentPoly::variable(ctx, 5, -k) * scale;
      }
      const FractionElement& got = C().level(6).generators[i];
      CHECK(got.is_polynomial());
      CHECK(got.numerator() == sum);
    }
    CHECK(C().level(6).generators[0].numerator() == P(ctx, "X1 - 1/2*X5*X6^-1"));
  }

  TEST_CASE("explicit chain formulas") {
    const auto& ref = reference_data();
    CHECK(ref.chain_formulas.size() == 10);
    CHECK(ref.final_generators.size() == 6);
    for (const auto* list : {&ref.chain_formulas, &ref.final_generators}) {
      for (const auto& eq : *list) {
        CAPTURE(eq.lhs);
        CHECK(equal(evaluate_in_chain(C(), eq.lhs), evaluate_in_chain(C(), eq.rhs)));
      }
    }
    CHECK_FALSE(equal(evaluate_in_chain(C(), "X16"), evaluate_in_chain(C(), "X1 + 1/2*X5*X6^-1")));
  }

  TEST_CASE("target torus and a mutated chain") {
    const auto& m = *builtin_algebra().torus_matrix;
    CHECK_FALSE(verify_target_torus(C().final_stage(), m, *C().structure).has_value());

    // Dropping -1/2*X5*X6^-1 from X16 shifts X15, X14 and X13 by +1/2*X5*X6^-1
    // through the explicit formulas, each linear in X16 with coefficient 1.
    ChainStage mutated = C().final_stage();
    mutated.generators[0] = mutated.generators[0] + FractionElement(P(C().context, "1/2*X5*X6^-1"));
    auto v = verify_target_torus(mutated, m, *C().structure);
    REQUIRE(v.has_value());
    CHECK(v->i == 0);
  }

  TEST_CASE("toral bracket contract at each level") {
    const auto& o = *builtin_algebra().ore;
    for (const auto& stage : C().stages) {
      if (stage.level > 6) continue;
      const auto& g = stage.generators;
      for (std::size_t i = static_cast<std::size_t>(stage.level - 1); i < g.size(); ++i) {
        for (std::size_t l = i + 1; l < g.size(); ++l) {
          CAPTURE(stage.level);
          CAPTURE(i);
          CAPTURE(l);
          CHECK(equal(fraction_bracket(g[i], g[l], *C().structure), g[i] * g[l] * o.mu(i, l)));
        }
      }
    }
  }

  TEST_CASE("series terms stay sigma-homogeneous") {
    CHECK_FALSE(C().trace.empty());
    for (const auto& c : C().trace) {
      CHECK(c.homogeneous);
      CHECK(c.agrees);
      CHECK(c.sigma_weight == builtin_algebra().ore->mu(c.level - 1, c.i) - C().eta.at(c.level - 1) * c.k);
    }
  }

  TEST_CASE("a step with vanishing delta is the identity") {
    const ChainStage& three = C().level(3);
    ChainStage again = pdda_step(three, *builtin_algebra().ore, *C().structure);
    CHECK(again.level == 2);
    for (std::size_t i = 0; i < three.generators.size(); ++i) CHECK(equal(again.generators[i], three.generators[i]));
  }

  TEST_CASE("nilpotency bound is enforced") {
    CHECK_THROWS_AS(run_chain(*builtin_algebra().structure, *builtin_algebra().ore, 1), Error);
  }

  TEST_CASE("fractions") {
    auto ctx = VarContext::create({{"a", false, false}, {"b", true, false}});
    FractionElement f{P(ctx, "a + b")};
    FractionElement g = f.inverse();
    CHECK(equal(f * g, FractionElement{LaurentPoly::constant(ctx, 1)}));
    CHECK((g * FractionElement{P(ctx, "a^2 - b^2")}).is_polynomial());
    CHECK(equal(g * FractionElement{P(ctx, "a^2 - b^2")}, FractionElement{P(ctx, "a - b")}));
    CHECK(FractionElement{P(ctx, "b^2")}.inverse().is_polynomial());
    CHECK_THROWS_AS(FractionElement{LaurentPoly(ctx)}.inverse(), Error);
    CHECK(equal(f.pow(-2), g * g));
  }

  TEST_CASE("chain dump") {
    auto lines = dump_chain(C());
    CHECK(lines.size() == 36);
    CHECK(lines.front() == "X17 = X1");
    CHECK(lines[6] == "X16 = -1/2*X5*X6^-1 + X1");
  }
}
