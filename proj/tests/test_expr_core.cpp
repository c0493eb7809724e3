#include <doctest.h>

#include "poisson_forge/error.hpp"
#include "support.hpp"

using namespace pf_test;

namespace {

ContextPtr big_x(bool x5_x6_invertible) {
  std::vector<VarContext::Variable> v;
  for (int i = 1; i <= 6; ++i) v.push_back({"X" + std::to_string(i), x5_x6_invertible && i >= 5, false});
  v.push_back({"alpha", false, true});
  return VarContext::create(v);
}

ContextPtr small_x() {
  std::vector<VarContext::Variable> v;
  for (int i = 1; i <= 6; ++i) v.push_back({"x" + std::to_string(i), i >= 5, false});
  v.push_back({"alpha", false, true});
  return VarContext::create(v);
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::kInvalidArgument;
}

}  // namespace

TEST_SUITE("expr_core") {
  TEST_CASE("rational parsing") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-4") == Rational(-4));
    CHECK(to_string(parse_rational("-10/4")) == "-5/2");
    CHECK(kind_of([] { parse_rational("1/0"); }) == ErrorKind::kParse);
    CHECK(kind_of([] { parse_rational("x"); }) == ErrorKind::kParse);
  }

  TEST_CASE("context validation") {
    CHECK(kind_of([] { VarContext::create({{"a", false, false}, {"a", false, false}}); }) ==
          ErrorKind::kInvalidArgument);
    CHECK(kind_of([] { VarContext::create({{"p", true, true}}); }) == ErrorKind::kInvalidArgument);
    auto ctx = big_x(false);
    CHECK(ctx->generators().size() == 6);
    CHECK(kind_of([&] { ctx->index("X7"); }) == ErrorKind::kUnknownIdentifier);
  }

  TEST_CASE("addition") {
    auto x = small_x();
    auto X = big_x(false);
    CHECK((P(X, "X1") + P(X, "-X1")).is_zero());
    CHECK(P(x, "2*alpha + 3*x1*x4") + P(x, "x2*x5 - 2*x1*x3*x5") == P(x, "2*alpha + 3*x1*x4 + x2*x5 - 2*x1*x3*x5"));
    CHECK(P(X, "1/2*X3^2") + P(X, "1/2*X3^2") == P(X, "X3^2"));
    CHECK(kind_of([&] { (void)(P(X, "X1") + P(x, "x1")); }) == ErrorKind::kContextMismatch);
  }

  TEST_CASE("multiplication and the invertibility mask") {
    auto inv = big_x(true);
    auto plain = big_x(false);
    CHECK(P(inv, "X5") * P(inv, "X5^-1") == LaurentPoly::constant(inv, 1));
    CHECK(kind_of([&] { LaurentPoly::variable(plain, "X5", -1); }) == ErrorKind::kInvertibility);
    CHECK(kind_of([&] { P(plain, "X5^-1"); }) == ErrorKind::kInvertibility);
    CHECK(kind_of([&] { P(inv, "(X5 + X6)^-1"); }) == ErrorKind::kInvertibility);
    auto t = VarContext::create({{"T1", true, false}, {"T3", true, false}, {"T5", true, false}});
    LaurentPoly omega = P(t, "T1") * P(t, "T3") * P(t, "T5");
    CHECK(omega.is_monomial());
    CHECK(format_expr(omega) == "T1*T3*T5");
  }

  TEST_CASE("partial derivatives") {
    auto X = big_x(true);
    CHECK(partial_derivative(P(X, "X1*X3*X5"), "X3") == P(X, "X1*X5"));
    CHECK(partial_derivative(P(X, "X6^-1"), "X6") == P(X, "-X6^-2"));
    CHECK(partial_derivative(P(X, "7/3"), "X2").is_zero());
  }

  TEST_CASE("substitution") {
    auto X = big_x(false);
    auto x = small_x();
    LaurentPoly img = P(x, "x1 - 1/2*x5*x6^-1");
    std::map<std::size_t, LaurentPoly> images;
    for (std::size_t i = 0; i < 6; ++i) images.emplace(i, LaurentPoly::variable(x, i));
    images.at(0) = img;
    CHECK(substitute(P(X, "X1"), images, x) == img);

    auto inv = big_x(true);
    LaurentPoly f = P(inv, "X1*X6^-2 + 3*X2 - alpha");
    CHECK(substitute(f, {}) == f);
    CHECK(substitute(P(inv, "X6^-1"), {{5, P(inv, "X5*X6")}}) == P(inv, "X5^-1*X6^-1"));
    CHECK(kind_of([&] { substitute(P(inv, "X6^-1"), {{5, P(inv, "X5 + X6")}}); }) == ErrorKind::kInvertibility);
  }

  TEST_CASE("parsing and errors") {
    auto X = big_x(true);
    CHECK(P(X, "-3*X1*X2") == LaurentPoly::monomial(X, {1, 1, 0, 0, 0, 0, 0}, -3));
    CHECK(P(X, "X5^-1") == LaurentPoly::variable(X, 4, -1));
    CHECK(P(X, "2*(X1 - X2)^2") == P(X, "2*X1^2 - 4*X1*X2 + 2*X2^2"));
    CHECK(P(X, "-(X1)") == P(X, "-1*X1"));
    CHECK(kind_of([&] { P(X, "X7"); }) == ErrorKind::kUnknownIdentifier);
    try {
      P(X, "X1 + * X2");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.position() == 5);
    }
    CHECK(kind_of([&] { P(X, "X1 +"); }) == ErrorKind::kParse);
    CHECK(kind_of([&] { P(X, "(X1"); }) == ErrorKind::kParse);
  }

  TEST_CASE("formatting") {
    auto x = small_x();
    CHECK(format_expr(P(x, "x2*x5 - 2*x1*x3*x5 + 2*alpha + 3*x1*x4")) == "2*alpha + 3*x1*x4 + x2*x5 - 2*x1*x3*x5");
    CHECK(format_expr(P(x, "1/3 - x5^-2*x6")) == "-x5^-2*x6 + 1/3");
    CHECK(format_expr(LaurentPoly(x)) == "0");
  }

  TEST_CASE("ring axioms on random triples") {
    auto ctx = xyz_context();
    std::mt19937_64 rng(7);
    for (int round = 0; round < 200; ++round) {
      LaurentPoly f = random_poly(rng, ctx), g = random_poly(rng, ctx), h = random_poly(rng, ctx);
      CHECK((f * g) * h == f * (g * h));
      CHECK(f * (g + h) == f * g + f * h);
      CHECK(f * g == g * f);
      CHECK(f + g == g + f);
      CHECK((f + g) + h == f + (g + h));
    }
  }

  TEST_CASE("Leibniz rule for partial derivatives") {
    auto ctx = xyz_context();
    std::mt19937_64 rng(11);
    for (int round = 0; round < 200; ++round) {
      LaurentPoly f = random_poly(rng, ctx), g = random_poly(rng, ctx);
      for (std::size_t v = 0; v < ctx->size(); ++v) {
        CHECK(partial_derivative(f * g, v) == partial_derivative(f, v) * g + f * partial_derivative(g, v));
      }
    }
  }

  TEST_CASE("parse of format is the identity") {
    auto ctx = xyz_context();
    std::mt19937_64 rng(13);
    for (int round = 0; round < 300; ++round) {
      LaurentPoly f = random_poly(rng, ctx, 6, 3);
      CHECK(parse_expr(format_expr(f), ctx) == f);
    }
  }

  TEST_CASE("substitution is a ring homomorphism") {
    auto ctx = xyz_context();
    std::mt19937_64 rng(17);
    for (int round = 0; round < 100; ++round) {
      // y may be negative, so its image must be an invertible monomial.
      std::map<std::size_t, LaurentPoly> images = {
          {0, random_poly(rng, ctx)},
          {1, LaurentPoly::monomial(ctx, {0, std::uniform_int_distribution<int>(-2, 2)(rng), 0, 0}, Rational(2, 3))},
          {2, random_poly(rng, ctx)}};
      LaurentPoly f = random_poly(rng, ctx), g = random_poly(rng, ctx);
      CHECK(substitute(f + g, images) == substitute(f, images) + substitute(g, images));
      CHECK(substitute(f * g, images) == substitute(f, images) * substitute(g, images));
    }
  }

  TEST_CASE("exact division") {
    auto ctx = xyz_context();
    std::mt19937_64 rng(19);
    for (int round = 0; round < 100; ++round) {
      LaurentPoly f = random_poly(rng, ctx), g = random_poly(rng, ctx);
      if (g.is_zero()) continue;
      auto q = divide_exact(f * g, g);
      REQUIRE(q.has_value());
      CHECK(*q == f);
    }
    CHECK_FALSE(divide_exact(P(ctx, "x^2 + 1"), P(ctx, "x + 1")).has_value());
  }
}
