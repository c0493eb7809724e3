#ifndef POISSON_FORGE_H
#define POISSON_FORGE_H

#include <stddef.h>
#include <stdint.h>

#if defined(PF_BUILDING_LIBRARY)
#define PF_API __attribute__((visibility("default")))
#else
#define PF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pf_status {
  PF_OK = 0,
  PF_ERR_INVALID_ARGUMENT = 1,
  PF_ERR_PARSE = 2,
  PF_ERR_UNKNOWN_IDENTIFIER = 3,
  PF_ERR_CONTEXT_MISMATCH = 4,
  PF_ERR_INVERTIBILITY = 5,
  PF_ERR_SCHEMA = 6,
  PF_ERR_IO = 7,
  PF_ERR_UNDEFINED = 8,
  PF_ERR_NOT_NILPOTENT = 9,
  PF_ERR_INCONSISTENT = 10,
  PF_ERR_INTERNAL = 11
} pf_status;

typedef enum pf_witness { PF_WITNESS_SMALLEST = 0, PF_WITNESS_LARGEST = 1 } pf_witness;

typedef struct pf_context pf_context;
typedef struct pf_poly pf_poly;
typedef struct pf_algebra pf_algebra;
typedef struct pf_report pf_report;

PF_API const char* pf_version(void);
/* Message of the last failing call on this thread; "" after a success. */
PF_API const char* pf_last_error(void);
/* Frees strings returned through char** out-parameters. */
PF_API void pf_string_free(char* s);

/* Variables in order; `invertible` and `parameters` name subsets of them.
   Any array may be NULL when its count is 0. */
PF_API pf_status pf_context_create(const char* const* names, size_t count, const char* const* invertible,
                                   size_t invertible_count, const char* const* parameters, size_t parameter_count,
                                   pf_context** out);
PF_API void pf_context_free(pf_context* ctx);

PF_API pf_status pf_poly_parse(const pf_context* ctx, const char* text, pf_poly** out);
PF_API pf_status pf_poly_format(const pf_poly* p, char** out);
PF_API pf_status pf_poly_add(const pf_poly* a, const pf_poly* b, pf_poly** out);
PF_API pf_status pf_poly_mul(const pf_poly* a, const pf_poly* b, pf_poly** out);
PF_API pf_status pf_poly_derivative(const pf_poly* p, const char* var, pf_poly** out);
PF_API pf_status pf_poly_equal(const pf_poly* a, const pf_poly* b, int* out);
PF_API void pf_poly_free(pf_poly* p);

/* The embedded six-generator algebra, or a definition file on disk. */
PF_API pf_status pf_algebra_builtin(pf_algebra** out);
PF_API pf_status pf_algebra_load(const char* path, pf_algebra** out);
PF_API void pf_algebra_free(pf_algebra* a);
PF_API pf_status pf_algebra_generator_count(const pf_algebra* a, size_t* out);
PF_API pf_status pf_algebra_bracket(const pf_algebra* a, const char* f, const char* g, char** out);
/* *passed = 1 when every generator triple satisfies Jacobi; otherwise
   *detail (may be NULL) receives the first failing triple and residue. */
PF_API pf_status pf_algebra_check_jacobi(const pf_algebra* a, int* passed, char** detail);
/* 1-based generator index; PF_ERR_UNDEFINED when delta_i vanishes. */
PF_API pf_status pf_algebra_eta(const pf_algebra* a, size_t index, char** out);
/* One "X<i><j> = expr" line per chain element. */
PF_API pf_status pf_algebra_chain_dump(const pf_algebra* a, char** out);

/* Normal form in the built-in quotient. alpha/beta: NULL or "symbolic" keeps
   the parameter, otherwise a rational "p/q". */
PF_API pf_status pf_quotient_normal_form(const char* expr, const char* alpha, const char* beta, char** out);

/* Torus decomposition of a derivation file; *out receives
   {"gamma": expr, "theta": [expr, ...]} as JSON. */
PF_API pf_status pf_decompose_file(const char* path, pf_witness policy, char** out);

/* Runs a suite ("all" for every suite) on the built-in data. */
PF_API pf_status pf_run_verify(const char* suite, uint64_t seed, pf_report** out);
PF_API void pf_report_free(pf_report* r);
PF_API int pf_report_passed(const pf_report* r);
PF_API size_t pf_report_item_count(const pf_report* r);
/* Pointers stay valid until pf_report_free; residue is "" for passing items. */
PF_API pf_status pf_report_item(const pf_report* r, size_t index, const char** label, int* passed,
                                const char** residue);
PF_API pf_status pf_report_text(const pf_report* r, int timing, char** out);
PF_API pf_status pf_report_json(const pf_report* r, int timing, char** out);

#ifdef __cplusplus
}
#endif

#endif
