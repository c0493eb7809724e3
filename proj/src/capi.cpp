#include "poisson_forge/poisson_forge.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "json_util.hpp"
#include "poisson_forge/builtin.hpp"
#include "poisson_forge/expr.hpp"
#include "poisson_forge/suites.hpp"
#include "poisson_forge/torus.hpp"

using namespace poisson_forge;

struct pf_context {
  ContextPtr ctx;
};

struct pf_poly {
  LaurentPoly value;
};

struct pf_algebra {
  AlgebraDefinition def;
  bool builtin = false;
};

struct pf_report {
  std::vector<Report> reports;
  std::vector<const ReportItem*> flat;
};

namespace {

thread_local std::string last_error;

pf_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kContextMismatch: return PF_ERR_CONTEXT_MISMATCH;
    case ErrorKind::kInvertibility: return PF_ERR_INVERTIBILITY;
    case ErrorKind::kParse: return PF_ERR_PARSE;
    case ErrorKind::kUnknownIdentifier: return PF_ERR_UNKNOWN_IDENTIFIER;
    case ErrorKind::kSchema: return PF_ERR_SCHEMA;
    case ErrorKind::kIo: return PF_ERR_IO;
    case ErrorKind::kUndefined: return PF_ERR_UNDEFINED;
    case ErrorKind::kNotNilpotent: return PF_ERR_NOT_NILPOTENT;
    case ErrorKind::kInconsistent: return PF_ERR_INCONSISTENT;
    case ErrorKind::kInvalidArgument: return PF_ERR_INVALID_ARGUMENT;
  }
  return PF_ERR_INTERNAL;
}

template <class F>
pf_status guard(F&& f) {
  last_error.clear();
  try {
    f();
    return PF_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return PF_ERR_INTERNAL;
}

void require(const void* p, const char* what) {
  if (!p) throw Error(ErrorKind::kInvalidArgument, std::string(what) + " must not be null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

const PoissonStructure& structure_of(const pf_algebra* a) {
  require(a, "algebra");
  if (!a->def.structure) throw Error(ErrorKind::kInvalidArgument, "algebra has no bracket table");
  return *a->def.structure;
}

}  // namespace

extern "C" {

const char* pf_version(void) { return "0.1.0"; }

const char* pf_last_error(void) { return last_error.c_str(); }

void pf_string_free(char* s) { std::free(s); }

pf_status pf_context_create(const char* const* names, size_t count, const char* const* invertible,
                            size_t invertible_count, const char* const* parameters, size_t parameter_count,
                            pf_context** out) {
  return guard([&] {
    require(out, "out");
    if (count) require(names, "names");
    if (invertible_count) require(invertible, "invertible");
    if (parameter_count) require(parameters, "parameters");
    std::vector<VarContext::Variable> vars;
    for (size_t i = 0; i < count; ++i) vars.push_back({names[i], false, false});
    auto mark = [&](const char* const* list, size_t n, bool VarContext::Variable::*flag) {
      for (size_t k = 0; k < n; ++k) {
        auto it = std::find_if(vars.begin(), vars.end(), [&](const auto& v) { return v.name == list[k]; });
        if (it == vars.end()) throw Error(ErrorKind::kUnknownIdentifier, std::string("unknown variable '") + list[k] + "'");
        (*it).*flag = true;
      }
    };
    mark(invertible, invertible_count, &VarContext::Variable::invertible);
    mark(parameters, parameter_count, &VarContext::Variable::parameter);
    *out = new pf_context{VarContext::create(std::move(vars))};
  });
}

void pf_context_free(pf_context* ctx) { delete ctx; }

pf_status pf_poly_parse(const pf_context* ctx, const char* text, pf_poly** out) {
  return guard([&] {
    require(ctx, "context");
    require(text, "text");
    require(out, "out");
    *out = new pf_poly{parse_expr(text, ctx->ctx)};
  });
}

pf_status pf_poly_format(const pf_poly* p, char** out) {
  return guard([&] {
    require(p, "poly");
    require(out, "out");
    *out = dup(format_expr(p->value));
  });
}

pf_status pf_poly_add(const pf_poly* a, const pf_poly* b, pf_poly** out) {
  return guard([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    *out = new pf_poly{add(a->value, b->value)};
  });
}

pf_status pf_poly_mul(const pf_poly* a, const pf_poly* b, pf_poly** out) {
  return guard([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    *out = new pf_poly{multiply(a->value, b->value)};
  });
}

pf_status pf_poly_derivative(const pf_poly* p, const char* var, pf_poly** out) {
  return guard([&] {
    require(p, "poly");
    require(var, "var");
    require(out, "out");
    *out = new pf_poly{partial_derivative(p->value, var)};
  });
}

pf_status pf_poly_equal(const pf_poly* a, const pf_poly* b, int* out) {
  return guard([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    require_same_context(a->value, b->value);
    *out = a->value == b->value ? 1 : 0;
  });
}

void pf_poly_free(pf_poly* p) { delete p; }

pf_status pf_algebra_builtin(pf_algebra** out) {
  return guard([&] {
    require(out, "out");
    *out = new pf_algebra{builtin_algebra(), true};
  });
}

pf_status pf_algebra_load(const char* path, pf_algebra** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new pf_algebra{load_algebra_file(path), false};
  });
}

void pf_algebra_free(pf_algebra* a) { delete a; }

pf_status pf_algebra_generator_count(const pf_algebra* a, size_t* out) {
  return guard([&] {
    require(a, "algebra");
    require(out, "out");
    *out = a->def.context->generators().size();
  });
}

pf_status pf_algebra_bracket(const pf_algebra* a, const char* f, const char* g, char** out) {
  return guard([&] {
    const auto& s = structure_of(a);
    require(f, "f");
    require(g, "g");
    require(out, "out");
    *out = dup(format_expr(s.bracket(parse_expr(f, s.context()), parse_expr(g, s.context()))));
  });
}

pf_status pf_algebra_check_jacobi(const pf_algebra* a, int* passed, char** detail) {
  return guard([&] {
    const auto& s = structure_of(a);
    require(passed, "passed");
    auto v = check_jacobi(s);
    *passed = v ? 0 : 1;
    if (detail) {
      const auto& ctx = *s.context();
      *detail = dup(v ? "(" + ctx.name(v->i) + "," + ctx.name(v->j) + "," + ctx.name(v->k) +
                            "): " + format_expr(v->residue)
                      : std::string());
    }
  });
}

pf_status pf_algebra_eta(const pf_algebra* a, size_t index, char** out) {
  return guard([&] {
    require(a, "algebra");
    require(out, "out");
    if (!a->def.ore) throw Error(ErrorKind::kInvalidArgument, "algebra has no sigma/delta tables");
    if (index < 1 || index > a->def.ore->rank()) throw Error(ErrorKind::kInvalidArgument, "index out of range");
    *out = dup(to_string(compute_eta(*a->def.ore, index - 1)));
  });
}

pf_status pf_algebra_chain_dump(const pf_algebra* a, char** out) {
  return guard([&] {
    const auto& s = structure_of(a);
    require(out, "out");
    if (!a->def.ore) throw Error(ErrorKind::kInvalidArgument, "algebra has no sigma/delta tables");
    std::string text;
    auto emit = [&](const Chain& chain) {
      for (const auto& line : dump_chain(chain)) text += line + "\n";
    };
    if (a->builtin) {
      emit(builtin_chain());
    } else {
      emit(run_chain(s, *a->def.ore));
    }
    *out = dup(text);
  });
}

pf_status pf_quotient_normal_form(const char* expr, const char* alpha, const char* beta, char** out) {
  return guard([&] {
    require(expr, "expr");
    require(out, "out");
    const auto& q = builtin_quotient();
    Specialization s;
    if (alpha) s.alpha = parse_parameter_value(alpha, "alpha");
    if (beta) s.beta = parse_parameter_value(beta, "beta");
    *out = dup(format_expr(normal_form(q, q.parse(expr), s)));
  });
}

pf_status pf_decompose_file(const char* path, pf_witness policy, char** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    auto input = parse_torus_derivation_json(read_text_file(path));
    auto dec = decompose_derivation(input.derivation, input.torus,
                                    policy == PF_WITNESS_LARGEST ? WitnessPolicy::kLargest : WitnessPolicy::kSmallest);
    detail::json theta = detail::json::array();
    for (const auto& t : dec.theta) theta.push_back(format_expr(t));
    detail::json root = {{"gamma", format_expr(dec.gamma)}, {"theta", std::move(theta)}};
    *out = dup(root.dump());
  });
}

pf_status pf_run_verify(const char* suite, uint64_t seed, pf_report** out) {
  return guard([&] {
    require(suite, "suite");
    require(out, "out");
    auto r = std::make_unique<pf_report>();
    r->reports = run_verify(suite, seed);
    for (const auto& rep : r->reports) {
      for (const auto& i : rep.items) r->flat.push_back(&i);
    }
    *out = r.release();
  });
}

void pf_report_free(pf_report* r) { delete r; }

int pf_report_passed(const pf_report* r) {
  if (!r) return 0;
  for (const auto& rep : r->reports) {
    if (!rep.passed()) return 0;
  }
  return 1;
}

size_t pf_report_item_count(const pf_report* r) { return r ? r->flat.size() : 0; }

pf_status pf_report_item(const pf_report* r, size_t index, const char** label, int* passed, const char** residue) {
  return guard([&] {
    require(r, "report");
    if (index >= r->flat.size()) throw Error(ErrorKind::kInvalidArgument, "item index out of range");
    const ReportItem& i = *r->flat[index];
    if (label) *label = i.label.c_str();
    if (passed) *passed = i.passed ? 1 : 0;
    if (residue) *residue = i.residue.c_str();
  });
}

pf_status pf_report_text(const pf_report* r, int timing, char** out) {
  return guard([&] {
    require(r, "report");
    require(out, "out");
    *out = dup(to_text(r->reports, timing != 0));
  });
}

pf_status pf_report_json(const pf_report* r, int timing, char** out) {
  return guard([&] {
    require(r, "report");
    require(out, "out");
    *out = dup(to_json(r->reports, timing != 0));
  });
}

}  // extern "C"
