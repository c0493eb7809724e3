#include "poisson_forge/suites.hpp"

#include <chrono>
#include <cstdio>
#include <random>

#include "poisson_forge/builtin.hpp"
#include "poisson_forge/error.hpp"
#include "poisson_forge/expr.hpp"
#include "poisson_forge/torus.hpp"

namespace poisson_forge {

namespace {

ReportItem item(std::string label, const LaurentPoly& residue) {
  bool ok = residue.is_zero();
  return ReportItem{std::move(label), ok, ok ? "" : format_expr(residue)};
}

ReportItem verdict(std::string label, bool ok, std::string detail = {}) {
  return ReportItem{std::move(label), ok, ok ? "" : std::move(detail)};
}

std::string padded(std::size_t n, int width = 3) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*zu", width, n);
  return buf;
}

std::string weight_string(const std::optional<std::vector<int>>& w) {
  if (!w) return "not homogeneous";
  std::string s = "(";
  for (std::size_t i = 0; i < w->size(); ++i) s += (i ? "," : "") + std::to_string((*w)[i]);
  return s + ")";
}

std::vector<ItemTask> jacobi_tasks() {
  const auto& def = builtin_algebra();
  const auto& s = *def.structure;
  const auto& ctx = def.context;
  std::vector<ItemTask> tasks;
  tasks.push_back([&s, &ctx] {
    std::vector<ReportItem> out;
    auto g = ctx->generators();
    for (std::size_t a = 0; a < g.size(); ++a) {
      for (std::size_t b = a + 1; b < g.size(); ++b) {
        for (std::size_t c = b + 1; c < g.size(); ++c) {
          auto v = [&](std::size_t i) { return LaurentPoly::variable(ctx, g[i]); };
          out.push_back(item("triple (" + ctx->name(g[a]) + "," + ctx->name(g[b]) + "," + ctx->name(g[c]) + ")",
                             jacobiator(s, v(a), v(b), v(c))));
        }
      }
    }
    return out;
  });
  std::size_t counter = 0;
  for (const auto& [key, value] : s.table()) {
    for (const auto& [e, c] : value.terms()) {
      std::size_t id = ++counter;
      IndexPair k = key;
      Exponents mon = e;
      tasks.push_back([&s, &ctx, k, mon, id] {
        LaurentPoly mutated = s.generator_bracket(k.first, k.second) + LaurentPoly::monomial(ctx, mon);
        auto violation = check_jacobi(s.with_entry(k.first, k.second, mutated));
        std::string label = "mutation " + padded(id, 2) + " {" + ctx->name(k.first) + "," + ctx->name(k.second) +
                            "} coefficient of " + format_monomial(*ctx, mon) + " +1 detected";
        return std::vector<ReportItem>{verdict(label, violation.has_value(), "Jacobi still holds")};
      });
    }
  }
  return tasks;
}

std::vector<ItemTask> casimir_tasks() {
  const auto& def = builtin_algebra();
  std::vector<ItemTask> tasks;
  for (const auto& [name, omega] : def.casimirs) {
    for (std::size_t j : def.context->generators()) {
      tasks.push_back([&def, &name, &omega, j] {
        return std::vector<ReportItem>{item("{" + name + "," + def.context->name(j) + "} = 0",
                                            def.structure->bracket(omega, LaurentPoly::variable(def.context, j)))};
      });
    }
  }
  return tasks;
}

std::vector<ItemTask> pdda_tasks() {
  const auto& def = builtin_algebra();
  const auto& ref = reference_data();
  const auto& chain = builtin_chain();
  std::vector<ItemTask> tasks;
  tasks.push_back([&def, &ref] {
    std::vector<ReportItem> out;
    for (const auto& [i, expected] : ref.eta) {
      std::string label = "eta_" + std::to_string(i + 1) + " = " + expected;
      try {
        Rational eta = compute_eta(*def.ore, i);
        out.push_back(verdict(label, expected != "undefined" && eta == parse_rational(expected), to_string(eta)));
      } catch (const Error& e) {
        out.push_back(verdict(label, expected == "undefined" && e.kind() == ErrorKind::kUndefined, e.what()));
      }
    }
    return out;
  });
  auto equations = [&](const std::vector<Equation>& eqs) {
    for (const auto& eq : eqs) {
      tasks.push_back([&chain, &eq] {
        LaurentPoly r = cleared_difference(evaluate_in_chain(chain, eq.lhs), evaluate_in_chain(chain, eq.rhs));
        return std::vector<ReportItem>{item("formula " + eq.lhs + " = " + eq.rhs, r)};
      });
    }
  };
  equations(ref.chain_formulas);
  equations(ref.final_generators);
  tasks.push_back([&chain] {
    std::vector<ReportItem> out;
    for (const auto& c : chain.trace) {
      std::string label = "series X" + std::to_string(c.i + 1) + "," + std::to_string(c.level) + " term " +
                          std::to_string(c.k) + " sigma-weight " + to_string(c.sigma_weight);
      out.push_back(verdict(label, c.homogeneous && c.agrees,
                            std::string(c.homogeneous ? "" : "not sigma-homogeneous ") +
                                (c.agrees ? "" : "disagrees with composed delta")));
    }
    return out;
  });
  const auto& t = chain.final_stage().generators;
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      tasks.push_back([&chain, &def, &t, i, j] {
        const Rational& m = (*def.torus_matrix)[i][j];
        FractionElement lhs = fraction_bracket(t[i], t[j], *chain.structure);
        std::string label = "{T" + std::to_string(i + 1) + ",T" + std::to_string(j + 1) + "} = " + to_string(m) +
                            "*T" + std::to_string(i + 1) + "*T" + std::to_string(j + 1);
        return std::vector<ReportItem>{item(label, cleared_difference(lhs, t[i] * t[j] * m))};
      });
    }
  }
  return tasks;
}

std::vector<ItemTask> pullback_tasks() {
  const auto& chain = builtin_chain();
  std::vector<ItemTask> tasks;
  for (const auto& ladder : reference_data().ladders) {
    tasks.push_back([&chain, &ladder] {
      PullbackResult r = pull_central_chain(chain, {ladder});
      std::vector<ReportItem> out;
      std::size_t nontrivial = 0;
      for (const auto& l : r.lines) {
        nontrivial += !l.trivial;
        out.push_back(item(l.name + " level " + std::to_string(l.level) + (l.trivial ? " (product)" : ""), l.residue));
      }
      for (const auto& c : r.central) {
        out.push_back(item(c.name + " central against " + chain.context->name(c.j), c.residue));
      }
      LaurentPoly last = parse_expr(ladder.lines.back().expr, chain.symbols);
      bool original = true;
      for (const auto& [e, c] : last.terms()) {
        for (std::size_t v = 0; v < e.size(); ++v) {
          if (e[v] != 0 && !chain.context->find(chain.symbols->name(v))) original = false;
        }
      }
      int degree = last.degree();
      out.push_back(verdict(ladder.name + " ends at degree " + std::to_string(ladder.degree) + " in the generators after " +
                                std::to_string(ladder.steps) + " non-product lines",
                            original && degree == ladder.degree && static_cast<int>(nontrivial) == ladder.steps,
                            "degree " + std::to_string(degree) + ", " + std::to_string(nontrivial) + " lines"));
      return out;
    });
  }
  return tasks;
}

std::vector<ItemTask> pl2_tasks() {
  const auto& q = builtin_quotient();
  std::vector<ItemTask> tasks;
  tasks.push_back([&q] {
    std::vector<ReportItem> out;
    for (const auto& c : check_casimirs(q, reference_data().identities)) out.push_back(item(c.label, c.residue));
    RewriteStats stats;
    for (const auto& id : reference_data().identities) normal_form(q, q.parse(id.lhs), &stats);
    out.push_back(verdict("rewrite depth within 2a+3b", stats.within_bound,
                          "max depth " + std::to_string(stats.max_depth)));
    return out;
  });
  tasks.push_back([&q] {
    std::vector<ReportItem> out;
    const auto& ctx = q.context();
    auto g = ctx->generators();
    for (std::size_t a = 0; a < g.size(); ++a) {
      for (std::size_t b = a + 1; b < g.size(); ++b) {
        for (std::size_t c = b + 1; c < g.size(); ++c) {
          auto v = [&](std::size_t i) { return LaurentPoly::variable(ctx, g[i]); };
          LaurentPoly j = jacobiator(q.structure(), v(a), v(b), v(c));
          out.push_back(item("quotient triple (" + ctx->name(g[a]) + "," + ctx->name(g[b]) + "," + ctx->name(g[c]) +
                                 ")",
                             normal_form(q, j)));
        }
      }
    }
    return out;
  });
  return tasks;
}

std::vector<ItemTask> localization_tasks() {
  const auto& chain = builtin_chain();
  const auto& q = builtin_quotient();
  std::vector<ItemTask> tasks;
  for (const auto& id : reference_data().localization) {
    tasks.push_back([&chain, &q, &id] {
      LaurentPoly r = cleared_difference(evaluate_in_chain(chain, id.lhs), evaluate_in_chain(chain, id.rhs));
      return std::vector<ReportItem>{item(id.label, normal_form(q, r.rebind(q.context())))};
    });
  }
  return tasks;
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(1, 9), den(1, 4), sign(0, 1);
  Rational r(num(rng) * (sign(rng) ? 1 : -1), den(rng));
  r.canonicalize();
  return r;
}

std::vector<ReportItem> torus_roundtrip(const TorusStructure& t, const IntegerMatrix& lattice, std::uint64_t seed,
                                        std::size_t index) {
  std::mt19937_64 rng(seed + index);
  const std::size_t n = t.rank();
  const auto& ctx = t.context();
  std::uniform_int_distribution<int> expo(-2, 2), count(1, 4), small(-1, 1), theta_count(0, 2);
  LaurentPoly gamma(ctx);
  for (int k = count(rng); k > 0;) {
    Exponents g(n);
    for (auto& x : g) x = expo(rng);
    if (t.is_central(g)) continue;
    gamma.add_term(g, random_rational(rng));
    --k;
  }
  std::vector<LaurentPoly> theta;
  for (std::size_t i = 0; i < n; ++i) {
    LaurentPoly th(ctx);
    for (int k = theta_count(rng); k > 0; --k) {
      Exponents g(n, 0);
      for (const auto& row : lattice) {
        int a = small(rng);
        for (std::size_t c = 0; c < n; ++c) g[c] += a * static_cast<int>(row[c].get_si());
      }
      th.add_term(g, random_rational(rng));
    }
    theta.push_back(std::move(th));
  }
  std::map<std::size_t, LaurentPoly> images;
  for (std::size_t i = 0; i < n; ++i) {
    LaurentPoly ti = LaurentPoly::variable(ctx, i);
    images.emplace(i, t.structure().bracket(gamma, ti) + theta[i] * ti);
  }
  DerivationSpec d = DerivationSpec::from_images(ctx, images);
  std::string tag = "roundtrip " + padded(index);
  std::vector<ReportItem> out;
  for (auto policy : {WitnessPolicy::kSmallest, WitnessPolicy::kLargest}) {
    std::string label = tag + (policy == WitnessPolicy::kSmallest ? " smallest witness" : " largest witness");
    try {
      Decomposition dec = decompose_derivation(d, t, policy);
      bool ok = dec.gamma == gamma && dec.theta == theta;
      out.push_back(verdict(label, ok, "recovered gamma = " + format_expr(dec.gamma)));
    } catch (const Error& e) {
      out.push_back(verdict(label, false, e.what()));
    }
  }
  out.push_back(verdict(tag + " witness independence", witness_independent(d, t)));
  return out;
}

std::vector<ItemTask> torus_tasks(std::uint64_t seed) {
  static const TorusStructure t = TorusStructure::create(*builtin_algebra().torus_matrix);
  static const IntegerMatrix lattice = central_lattice(t);
  std::vector<ItemTask> tasks;
  tasks.push_back([] {
    IntegerMatrix expected = {{1, 0, 1, 0, 1, 0}, {0, 1, 0, 1, 0, 1}};
    std::string got;
    for (const auto& row : lattice) {
      got += "(";
      for (std::size_t c = 0; c < row.size(); ++c) got += (c ? "," : "") + row[c].get_str();
      got += ")";
    }
    return std::vector<ReportItem>{verdict("central lattice <(1,0,1,0,1,0),(0,1,0,1,0,1)>", lattice == expected, got)};
  });
  for (int k = 0; k < kTorusRoundtrips; ++k) {
    tasks.push_back([seed, k] { return torus_roundtrip(t, lattice, seed, static_cast<std::size_t>(k)); });
  }
  return tasks;
}

DerivationCheck run_derivation(const std::string& file, Specialization s) {
  const auto& q = builtin_quotient();
  auto input = parse_quotient_derivation_json(q, builtin_file(file));
  return check_quotient_derivation(q, input.derivation, s);
}

std::vector<ItemTask> derivation_tasks() {
  const auto& q = builtin_quotient();
  std::vector<ItemTask> tasks;
  auto declared = [](const std::string& file) {
    return [file] {
      const auto& q = builtin_quotient();
      auto input = parse_quotient_derivation_json(q, builtin_file(file));
      auto check = check_quotient_derivation(q, input.derivation, input.specialization);
      std::vector<ReportItem> out;
      for (const auto& c : check.items) out.push_back(item(file + " " + c.label, c.residue));
      return out;
    };
  };
  tasks.push_back(declared("theta"));
  tasks.push_back(declared("theta_tilde"));
  tasks.push_back([&q] {
    DerivationCheck check = run_derivation("theta", {});
    LaurentPoly two_beta = LaurentPoly::variable(q.context(), q.beta_index()) * Rational(2);
    bool shape = !check.passed;
    std::string detail;
    for (const auto& c : check.items) {
      bool expect_fail = c.label == "D(Omega2 - beta)";
      if (expect_fail ? c.residue != two_beta : !c.passed) {
        shape = false;
        detail += c.label + ": " + format_expr(c.residue) + "; ";
      }
    }
    return std::vector<ReportItem>{verdict("theta on symbolic beta fails with residue 2*beta", shape, detail)};
  });
  tasks.push_back([&q] {
    auto input = parse_quotient_derivation_json(q, builtin_file("theta"));
    auto x = bounded_inner_search(q, input.derivation, 4, Specialization{Rational(1), Rational(0)});
    return std::vector<ReportItem>{
        verdict("theta not inner up to degree 4 at alpha=1, beta=0", !x.has_value(), x ? format_expr(*x) : "")};
  });
  tasks.push_back([&q] {
    LaurentPoly x3 = LaurentPoly::variable(q.context(), "x3");
    DerivationSpec ham = hamiltonian_derivation(x3, q.structure());
    auto x = bounded_inner_search(q, ham, 2, Specialization{Rational(1), Rational(1)});
    bool ok = x && (*x - x3).is_constant();
    return std::vector<ReportItem>{
        verdict("ham_x3 recovered up to degree 2 at alpha=1, beta=1", ok, x ? format_expr(*x) : "none")};
  });
  return tasks;
}

std::string span_string(const std::vector<LaurentPoly>& basis) {
  std::string s = "span{";
  for (std::size_t i = 0; i < basis.size(); ++i) s += (i ? ", " : "") + format_expr(basis[i]);
  return s + "}";
}

std::vector<ItemTask> centre_tasks() {
  const auto& def = builtin_algebra();
  std::vector<ItemTask> tasks;
  const LaurentPoly one = LaurentPoly::constant(def.context, 1);
  const LaurentPoly& o1 = def.casimirs.at(0).second;
  const LaurentPoly& o2 = def.casimirs.at(1).second;
  std::vector<std::pair<int, std::vector<LaurentPoly>>> ambient = {{2, {one}}, {3, {one, o1}}, {4, {one, o1, o2}}};
  for (const auto& [d, expected] : ambient) {
    tasks.push_back([&def, d, expected] {
      auto got = bounded_centre(*def.structure, d);
      return std::vector<ReportItem>{verdict("ambient centre degree " + std::to_string(d) + " = " +
                                                 span_string(expected),
                                             same_span(got, expected), span_string(got))};
    });
  }
  tasks.push_back([] {
    const auto& q = builtin_quotient();
    auto got = bounded_centre(q, 4, Specialization{Rational(1), Rational(1)});
    std::vector<LaurentPoly> expected = {LaurentPoly::constant(q.context(), 1)};
    return std::vector<ReportItem>{
        verdict("quotient centre degree 4 at alpha=1, beta=1 = span{1}", same_span(got, expected), span_string(got))};
  });
  return tasks;
}

std::vector<ItemTask> grading_tasks() {
  const auto& def = builtin_algebra();
  const auto& w = *def.weights;
  std::vector<ItemTask> tasks;
  tasks.push_back([&def, &w] {
    auto v = check_grading(*def.structure, w);
    std::string detail;
    if (v) detail = "{" + def.context->name(v->i) + "," + def.context->name(v->j) + "} term " +
                    format_monomial(*def.context, v->offending);
    return std::vector<ReportItem>{verdict("bracket table graded", !v.has_value(), detail)};
  });
  std::vector<std::vector<int>> expected = {{4, 2}, {6, 4}};
  for (std::size_t k = 0; k < def.casimirs.size() && k < expected.size(); ++k) {
    tasks.push_back([&def, &w, k, e = expected[k]] {
      auto got = homogeneous_weight(def.casimirs[k].second, w);
      return std::vector<ReportItem>{
          verdict(def.casimirs[k].first + " homogeneous of weight " + weight_string(e), got == e, weight_string(got))};
    });
  }
  tasks.push_back([&w] {
    const auto& chain = builtin_chain();
    std::vector<ReportItem> out;
    for (const auto& stage : chain.stages) {
      for (std::size_t i = 0; i < stage.generators.size(); ++i) {
        auto got = fraction_weight(stage.generators[i], w);
        out.push_back(verdict("chain " + chain_symbol(chain, i, stage.level) + " homogeneous of weight " +
                                  weight_string(w[i]),
                              got == w[i], weight_string(got)));
      }
    }
    return out;
  });
  return tasks;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"jacobi",       "casimir", "pdda",        "pullback", "pl2",
                                                 "localization", "torus",   "derivations", "centre",   "grading"};
  return names;
}

Report run_suite(const std::string& name, std::uint64_t seed) {
  std::string key = name == "quotient" ? "pl2" : name;
  std::vector<ItemTask> tasks;
  auto start = std::chrono::steady_clock::now();
  if (key == "jacobi") {
    tasks = jacobi_tasks();
  } else if (key == "casimir") {
    tasks = casimir_tasks();
  } else if (key == "pdda") {
    tasks = pdda_tasks();
  } else if (key == "pullback") {
    tasks = pullback_tasks();
  } else if (key == "pl2") {
    tasks = pl2_tasks();
  } else if (key == "localization") {
    tasks = localization_tasks();
  } else if (key == "torus") {
    tasks = torus_tasks(seed);
  } else if (key == "derivations") {
    tasks = derivation_tasks();
  } else if (key == "centre") {
    tasks = centre_tasks();
  } else if (key == "grading") {
    tasks = grading_tasks();
  } else {
    throw Error(ErrorKind::kInvalidArgument, "unknown suite '" + name + "'");
  }
  Report r{key, run_tasks(tasks), 0};
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<Report> run_verify(const std::string& name, std::uint64_t seed) {
  if (name != "all") return {run_suite(name, seed)};
  std::vector<Report> out;
  for (const auto& n : suite_names()) out.push_back(run_suite(n, seed));
  return out;
}

}  // namespace poisson_forge
