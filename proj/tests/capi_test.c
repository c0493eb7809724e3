#include <stdio.h>
#include <string.h>

#include "poisson_forge/poisson_forge.h"

static int failures = 0;

#define EXPECT(cond)                                             \
  do {                                                           \
    if (!(cond)) {                                               \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                \
    }                                                            \
  } while (0)

static void expect_string(pf_status s, char** slot, const char* want) {
  char* got = *slot;
  *slot = NULL;
  EXPECT(s == PF_OK);
  EXPECT(got && strcmp(got, want) == 0);
  if (got && strcmp(got, want) != 0) fprintf(stderr, "  got '%s', want '%s'\n", got, want);
  pf_string_free(got);
}

int main(void) {
  const char* names[] = {"x", "y", "a"};
  const char* inv[] = {"y"};
  const char* par[] = {"a"};
  pf_context* ctx = NULL;
  EXPECT(pf_context_create(names, 3, inv, 1, par, 1, &ctx) == PF_OK);

  pf_poly *f = NULL, *g = NULL, *h = NULL, *d = NULL;
  EXPECT(pf_poly_parse(ctx, "x + y^-1", &f) == PF_OK);
  EXPECT(pf_poly_parse(ctx, "x - y^-1", &g) == PF_OK);
  EXPECT(pf_poly_mul(f, g, &h) == PF_OK);
  char* out = NULL;
  expect_string(pf_poly_format(h, &out), &out, "-y^-2 + x^2");
  out = NULL;
  EXPECT(pf_poly_derivative(h, "y", &d) == PF_OK);
  expect_string(pf_poly_format(d, &out), &out, "2*y^-3");
  int eq = -1;
  EXPECT(pf_poly_equal(f, f, &eq) == PF_OK && eq == 1);
  pf_poly* sum = NULL;
  EXPECT(pf_poly_add(f, g, &sum) == PF_OK);
  expect_string(pf_poly_format(sum, &out), &out, "2*x");

  pf_poly* bad = NULL;
  EXPECT(pf_poly_parse(ctx, "x^-1", &bad) == PF_ERR_INVERTIBILITY);
  EXPECT(pf_poly_parse(ctx, "z", &bad) == PF_ERR_UNKNOWN_IDENTIFIER);
  EXPECT(strstr(pf_last_error(), "z") != NULL);
  EXPECT(pf_poly_parse(ctx, "x +", &bad) == PF_ERR_PARSE);
  EXPECT(bad == NULL);
  EXPECT(pf_poly_parse(NULL, "x", &bad) == PF_ERR_INVALID_ARGUMENT);

  pf_algebra* a = NULL;
  EXPECT(pf_algebra_builtin(&a) == PF_OK);
  size_t n = 0;
  EXPECT(pf_algebra_generator_count(a, &n) == PF_OK && n == 6);
  expect_string(pf_algebra_bracket(a, "X2", "X1", &out), &out, "-3*X1*X2");
  int passed = 0;
  char* detail = NULL;
  EXPECT(pf_algebra_check_jacobi(a, &passed, &detail) == PF_OK && passed == 1);
  pf_string_free(detail);
  out = NULL;
  EXPECT(pf_algebra_eta(a, 2, &out) == PF_ERR_UNDEFINED);
  expect_string(pf_algebra_eta(a, 4, &out), &out, "6");
  out = NULL;
  EXPECT(pf_algebra_chain_dump(a, &out) == PF_OK);
  EXPECT(out && strncmp(out, "X17 = X1\n", 9) == 0);
  pf_string_free(out);
  pf_algebra* missing = NULL;
  EXPECT(pf_algebra_load("/nonexistent/algebra.json", &missing) == PF_ERR_IO);

  expect_string(pf_quotient_normal_form("X3^2", "a", NULL, &out), &out, "2*alpha + 3*x1*x4 + x2*x5 - 2*x1*x3*x5");
  expect_string(pf_quotient_normal_form("x3^2", "1", "0", &out), &out, "2 + 3*x1*x4 + x2*x5 - 2*x1*x3*x5");
  out = NULL;
  EXPECT(pf_quotient_normal_form("x3^2", "nope", NULL, &out) == PF_ERR_PARSE);

  pf_report* r = NULL;
  EXPECT(pf_run_verify("casimir", 1, &r) == PF_OK);
  EXPECT(pf_report_passed(r) == 1);
  EXPECT(pf_report_item_count(r) == 12);
  const char* label = NULL;
  const char* residue = NULL;
  EXPECT(pf_report_item(r, 0, &label, &passed, &residue) == PF_OK);
  EXPECT(strcmp(label, "{Omega1,X1} = 0") == 0 && passed == 1 && residue[0] == '\0');
  EXPECT(pf_report_item(r, 12, &label, &passed, &residue) == PF_ERR_INVALID_ARGUMENT);
  out = NULL;
  EXPECT(pf_report_json(r, 0, &out) == PF_OK && strstr(out, "\"passed\": true") != NULL);
  pf_string_free(out);
  pf_report_free(r);
  EXPECT(pf_run_verify("nope", 1, &r) == PF_ERR_INVALID_ARGUMENT);

  pf_poly_free(f);
  pf_poly_free(g);
  pf_poly_free(h);
  pf_poly_free(d);
  pf_poly_free(sum);
  pf_algebra_free(a);
  pf_context_free(ctx);
  if (failures) fprintf(stderr, "%d failures\n", failures);
  return failures ? 1 : 0;
}
