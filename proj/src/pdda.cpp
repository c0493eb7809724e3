#include "poisson_forge/pdda.hpp"

#include "poisson_forge/error.hpp"
#include "poisson_forge/expr.hpp"

namespace poisson_forge {

ChainStage pdda_step(const ChainStage& next, const PoissonOreData& o, const PoissonStructure& ambient, int bound,
                     std::vector<SeriesCheck>* trace) {
  const int j = next.level - 1;
  if (j < 1 || static_cast<std::size_t>(j) > o.rank() || next.generators.size() != o.rank()) {
    throw Error(ErrorKind::kInvalidArgument, "stage does not match the Ore data");
  }
  const std::size_t jj = static_cast<std::size_t>(j - 1);
  ChainStage stage{j, next.generators};
  if (o.delta_is_zero(jj)) return stage;

  const Rational eta = compute_eta(o, jj);
  const ContextPtr& ctx = next.generators[jj].context();
  const FractionElement& p = next.generators[jj];
  const FractionElement p_inv = p.inverse();

  std::map<std::size_t, FractionElement> images;
  for (std::size_t l = 0; l < jj; ++l) images.emplace(l, next.generators[l]);

  for (std::size_t i = 0; i < jj; ++i) {
    FractionElement d = next.generators[i];
    FractionElement sum = d;
    FractionElement p_pow{LaurentPoly::constant(ctx, 1)};
    Rational scale = 1;
    LaurentPoly formal = LaurentPoly::variable(o.context(), i);
    for (int k = 0;; ++k) {
      if (k >= bound) {
        throw Error(ErrorKind::kNotNilpotent, "series for X" + std::to_string(i + 1) + "," + std::to_string(j) +
                                                  " does not truncate within " + std::to_string(bound) + " terms");
      }
      // {X_jj, a} = sigma(a) X_jj + delta(a), and sigma acts on delta^k(X_i)
      // by mu_ji - k eta.
      Rational w = o.mu(jj, i) - eta * k;
      FractionElement d_next = fraction_bracket(p, d, ambient) - d * p * w;
      if (trace) {
        LaurentPoly formal_next = o.apply_delta(jj, formal);
        Rational w_next = w - eta;
        SeriesCheck check{j, i, k + 1, w_next, false, false};
        check.homogeneous = o.apply_sigma(jj, formal_next) == formal_next * w_next;
        check.agrees = equal(evaluate(formal_next, images, ctx), d_next);
        trace->push_back(check);
        formal = std::move(formal_next);
      }
      if (d_next.is_zero()) break;
      scale /= eta * (k + 1);
      p_pow = p_pow * p_inv;
      sum = sum + d_next * p_pow * scale;
      d = std::move(d_next);
    }
    stage.generators[i] = std::move(sum);
  }
  return stage;
}

const ChainStage& Chain::level(int j) const {
  for (const auto& s : stages) {
    if (s.level == j) return s;
  }
  throw Error(ErrorKind::kInvalidArgument, "no chain stage at level " + std::to_string(j));
}

std::string chain_symbol(const Chain& chain, std::size_t i, int level) {
  return chain.context->name(i) + std::to_string(level);
}

namespace {

ContextPtr with_invertible(const ContextPtr& ctx, std::size_t pos) {
  std::vector<VarContext::Variable> vars;
  for (std::size_t i = 0; i < ctx->size(); ++i) vars.push_back(ctx->variable(i));
  vars[pos].invertible = true;
  return VarContext::create(std::move(vars));
}

std::optional<std::size_t> bare_variable(const FractionElement& f) {
  if (!f.is_polynomial() || !f.numerator().is_monomial()) return std::nullopt;
  const auto& [e, c] = *f.numerator().terms().begin();
  if (c != 1) return std::nullopt;
  std::optional<std::size_t> pos;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (e[i] != 1 || pos) return std::nullopt;
    pos = i;
  }
  return pos;
}

ContextPtr make_symbols(const Chain& chain) {
  const auto& ctx = *chain.context;
  auto gens = ctx.generators();
  std::vector<VarContext::Variable> vars;
  for (const auto& stage : chain.stages) {
    for (std::size_t i : gens) vars.push_back({ctx.name(i) + std::to_string(stage.level), true, false});
  }
  for (std::size_t a = 0; a < gens.size(); ++a) vars.push_back({"T" + std::to_string(a + 1), true, false});
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    vars.push_back({ctx.name(i), !ctx.parameter(i), ctx.parameter(i)});
  }
  // Names that collide with generator names lose their chain meaning.
  std::vector<VarContext::Variable> unique;
  std::map<std::string, std::size_t> seen;
  for (auto& v : vars) {
    auto it = seen.find(v.name);
    if (it != seen.end()) {
      unique[it->second] = v;
      continue;
    }
    seen.emplace(v.name, unique.size());
    unique.push_back(v);
  }
  return VarContext::create(std::move(unique));
}

}  // namespace

Chain run_chain(const PoissonStructure& s, const PoissonOreData& o, int bound) {
  require_same_context(s.context(), o.context());
  Chain chain;
  chain.context = s.context();
  chain.structure = s;
  const int n = static_cast<int>(o.rank());
  ChainStage top{n + 1, {}};
  for (std::size_t i = 0; i < o.rank(); ++i) {
    top.generators.emplace_back(LaurentPoly::variable(chain.context, i));
  }
  chain.stages.push_back(top);

  for (int j = n; j >= 2; --j) {
    const std::size_t jj = static_cast<std::size_t>(j - 1);
    const ChainStage& current = chain.stages.back();
    auto pos = bare_variable(current.generators[jj]);
    if (pos && !chain.context->invertible(*pos)) {
      chain.context = with_invertible(chain.context, *pos);
      chain.structure = chain.structure->rebind(chain.context);
      for (auto& stage : chain.stages) {
        for (auto& g : stage.generators) g = g.rebind(chain.context);
      }
    }
    if (!o.delta_is_zero(jj)) chain.eta.emplace(jj, compute_eta(o, jj));
    chain.stages.push_back(pdda_step(chain.stages.back(), o, *chain.structure, bound, &chain.trace));
  }
  chain.symbols = make_symbols(chain);
  return chain;
}

FractionElement evaluate_in_chain(const Chain& chain, const std::string& text) {
  LaurentPoly f = parse_expr(text, chain.symbols);
  const auto& ctx = *chain.context;
  auto gens = ctx.generators();
  std::map<std::size_t, FractionElement> images;
  for (std::size_t v = 0; v < chain.symbols->size(); ++v) {
    const std::string& name = chain.symbols->name(v);
    if (auto direct = ctx.find(name)) {
      if (!ctx.parameter(*direct)) images.emplace(v, FractionElement(LaurentPoly::variable(chain.context, *direct)));
      continue;
    }
    if (name.size() > 1 && name[0] == 'T') {
      std::size_t a = std::stoul(name.substr(1)) - 1;
      images.emplace(v, chain.final_stage().generators.at(a));
      continue;
    }
    for (const auto& stage : chain.stages) {
      for (std::size_t a = 0; a < gens.size(); ++a) {
        if (ctx.name(gens[a]) + std::to_string(stage.level) == name) images.emplace(v, stage.generators[a]);
      }
    }
  }
  return evaluate(f, images, chain.context);
}

std::optional<PairViolation> verify_target_torus(const ChainStage& final_stage, const RationalMatrix& m,
                                                 const PoissonStructure& ambient) {
  const auto& t = final_stage.generators;
  if (m.size() != t.size()) throw Error(ErrorKind::kInvalidArgument, "matrix size does not match the chain");
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      FractionElement lhs = fraction_bracket(t[i], t[j], ambient);
      FractionElement rhs = t[i] * t[j] * m[i][j];
      LaurentPoly r = cleared_difference(lhs, rhs);
      if (!r.is_zero()) return PairViolation{i, j, r};
    }
  }
  return std::nullopt;
}

bool PullbackResult::passed() const {
  for (const auto& l : lines) {
    if (!l.passed) return false;
  }
  for (const auto& c : central) {
    if (!c.passed) return false;
  }
  return true;
}

PullbackResult pull_central_chain(const Chain& chain, const std::vector<Ladder>& ladders) {
  PullbackResult result;
  const auto& s = *chain.structure;
  for (const auto& ladder : ladders) {
    if (ladder.lines.empty()) continue;
    FractionElement ref = evaluate_in_chain(chain, ladder.lines.front().expr);
    for (std::size_t k = 1; k < ladder.lines.size(); ++k) {
      const auto& line = ladder.lines[k];
      FractionElement value = evaluate_in_chain(chain, line.expr);
      LadderCheck check{ladder.name, line.level, parse_expr(line.expr, chain.symbols).is_monomial(), false,
                        cleared_difference(value, ref)};
      check.passed = check.residue.is_zero();
      result.lines.push_back(std::move(check));
    }
    FractionElement omega = evaluate_in_chain(chain, ladder.lines.back().expr);
    for (std::size_t j : chain.context->generators()) {
      FractionElement xj{LaurentPoly::variable(chain.context, j)};
      FractionElement b = fraction_bracket(omega, xj, s);
      CentralCheck c{ladder.name, j, b.is_zero(), b.numerator()};
      result.central.push_back(std::move(c));
    }
  }
  return result;
}

std::vector<std::string> dump_chain(const Chain& chain) {
  std::vector<std::string> out;
  for (const auto& stage : chain.stages) {
    for (std::size_t i = 0; i < stage.generators.size(); ++i) {
      out.push_back(chain_symbol(chain, i, stage.level) + " = " + stage.generators[i].to_string());
    }
  }
  return out;
}

}  // namespace poisson_forge
