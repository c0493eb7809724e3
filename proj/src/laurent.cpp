#include "poisson_forge/laurent.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "poisson_forge/error.hpp"

namespace poisson_forge {

// ---------------------------------------------------------------------------
// VarContext

VarContext::VarContext(std::vector<Variable> variables) : variables_(std::move(variables)) {
  for (std::size_t i = 0; i < variables_.size(); ++i) by_name_.emplace(variables_[i].name, i);
}

std::shared_ptr<const VarContext> VarContext::create(std::vector<Variable> variables) {
  std::unordered_map<std::string, std::size_t> seen;
  for (const auto& v : variables) {
    if (v.name.empty()) throw Error(ErrorKind::kInvalidArgument, "empty variable name");
    if (!seen.emplace(v.name, 0).second) {
      throw Error(ErrorKind::kInvalidArgument, "duplicate variable name '" + v.name + "'");
    }
    if (v.parameter && v.invertible) {
      throw Error(ErrorKind::kInvalidArgument, "parameter '" + v.name + "' cannot be invertible");
    }
  }
  return std::shared_ptr<const VarContext>(new VarContext(std::move(variables)));
}

std::optional<std::size_t> VarContext::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::size_t VarContext::index(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw Error(ErrorKind::kUnknownIdentifier, "unknown identifier '" + std::string(name) + "'");
}

std::vector<std::size_t> VarContext::generators() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (!variables_[i].parameter) out.push_back(i);
  }
  return out;
}

bool VarContext::same_layout(const VarContext& other) const {
  if (size() != other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    const auto& a = variables_[i];
    const auto& b = other.variables_[i];
    if (a.name != b.name || a.invertible != b.invertible || a.parameter != b.parameter) return false;
  }
  return true;
}

void require_same_context(const ContextPtr& a, const ContextPtr& b) {
  if (a == b) return;
  if (!a || !b || !a->same_layout(*b)) {
    throw Error(ErrorKind::kContextMismatch, "operands belong to different variable contexts");
  }
}

void require_same_context(const LaurentPoly& a, const LaurentPoly& b) {
  require_same_context(a.context(), b.context());
}

// ---------------------------------------------------------------------------
// Monomial order

int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool MonomialOrder::operator()(const Exponents& a, const Exponents& b) const {
  int da = total_degree(a);
  int db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

namespace {

void check_exponents(const VarContext& ctx, const Exponents& e) {
  if (e.size() != ctx.size()) {
    throw Error(ErrorKind::kInvalidArgument, "exponent vector does not match context size");
  }
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] < 0 && !ctx.invertible(i)) {
      throw Error(ErrorKind::kInvertibility,
                  "negative exponent on non-invertible variable '" + ctx.name(i) + "'");
    }
  }
}

void accumulate_term(LaurentPoly::TermMap& terms, const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

Exponents add_exponents(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// LaurentPoly

LaurentPoly::LaurentPoly(ContextPtr context) : context_(std::move(context)) {
  if (!context_) throw Error(ErrorKind::kInvalidArgument, "null variable context");
}

LaurentPoly LaurentPoly::constant(ContextPtr context, const Rational& c) {
  LaurentPoly p(std::move(context));
  p.add_term(Exponents(p.context_->size(), 0), c);
  return p;
}

LaurentPoly LaurentPoly::variable(ContextPtr context, std::size_t index, int power) {
  if (index >= context->size()) throw Error(ErrorKind::kInvalidArgument, "variable index out of range");
  Exponents e(context->size(), 0);
  e[index] = power;
  return monomial(std::move(context), std::move(e));
}

LaurentPoly LaurentPoly::variable(ContextPtr context, std::string_view name, int power) {
  std::size_t index = context->index(name);
  return variable(std::move(context), index, power);
}

LaurentPoly LaurentPoly::monomial(ContextPtr context, Exponents exponents, const Rational& c) {
  check_exponents(*context, exponents);
  LaurentPoly p(std::move(context));
  p.add_term(exponents, c);
  return p;
}

LaurentPoly LaurentPoly::from_terms(ContextPtr context, TermMap terms) {
  LaurentPoly p(std::move(context));
  for (auto& [e, c] : terms) {
    check_exponents(*p.context_, e);
    c.canonicalize();
    if (c != 0) p.terms_.emplace(e, c);
  }
  return p;
}

void LaurentPoly::add_term(const Exponents& e, const Rational& c) {
  check_exponents(*context_, e);
  Rational v = c;
  v.canonicalize();
  accumulate_term(terms_, e, v);
}

bool LaurentPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

std::optional<Rational> LaurentPoly::constant_value() const {
  if (!is_constant()) return std::nullopt;
  if (terms_.empty()) return Rational(0);
  return terms_.begin()->second;
}

Rational LaurentPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int LaurentPoly::degree() const {
  if (terms_.empty()) return 0;
  return total_degree(terms_.rbegin()->first);
}

int LaurentPoly::degree_in(std::size_t var) const {
  int best = 0;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first || e[var] > best) best = e[var];
    first = false;
  }
  return best;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out(*this);
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  require_same_context(*this, other);
  for (const auto& [e, c] : other.terms_) accumulate_term(terms_, e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
  require_same_context(*this, other);
  for (const auto& [e, c] : other.terms_) accumulate_term(terms_, e, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& other) {
  *this = multiply(*this, other);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

LaurentPoly LaurentPoly::pow(int n) const {
  if (n < 0) {
    if (!is_monomial()) {
      throw Error(ErrorKind::kInvertibility, "only single monomials can be raised to negative powers");
    }
    const auto& [e, c] = *terms_.begin();
    Exponents inv(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) inv[i] = -e[i];
    return monomial(context_, inv, Rational(1) / c).pow(-n);
  }
  LaurentPoly result = constant(context_, 1);
  LaurentPoly base = *this;
  while (n > 0) {
    if (n & 1) result = multiply(result, base);
    n >>= 1;
    if (n > 0) base = multiply(base, base);
  }
  return result;
}

LaurentPoly LaurentPoly::rebind(ContextPtr context) const {
  if (context->size() != context_->size()) {
    throw Error(ErrorKind::kContextMismatch, "cannot rebind between contexts of different sizes");
  }
  TermMap copy = terms_;
  return from_terms(std::move(context), std::move(copy));
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
  require_same_context(a, b);
  return a.terms_ == b.terms_;
}

LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) { return multiply(a, b); }
LaurentPoly operator*(LaurentPoly a, const Rational& c) { return a *= c; }
LaurentPoly operator*(const Rational& c, LaurentPoly a) { return a *= c; }

LaurentPoly add(const LaurentPoly& f, const LaurentPoly& g) { return f + g; }

LaurentPoly multiply(const LaurentPoly& f, const LaurentPoly& g) {
  require_same_context(f, g);
  const VarContext& ctx = *f.context();
  LaurentPoly::TermMap out;
  for (const auto& [ef, cf] : f.terms()) {
    for (const auto& [eg, cg] : g.terms()) {
      Exponents e = add_exponents(ef, eg);
      accumulate_term(out, e, cf * cg);
    }
  }
  for (const auto& [e, c] : out) check_exponents(ctx, e);
  LaurentPoly result(f.context());
  for (auto& [e, c] : out) result.add_term(e, c);
  return result;
}

LaurentPoly partial_derivative(const LaurentPoly& f, std::size_t var) {
  if (var >= f.context()->size()) throw Error(ErrorKind::kInvalidArgument, "variable index out of range");
  LaurentPoly out(f.context());
  for (const auto& [e, c] : f.terms()) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    out.add_term(d, c * e[var]);
  }
  return out;
}

LaurentPoly partial_derivative(const LaurentPoly& f, std::string_view var) {
  return partial_derivative(f, f.context()->index(var));
}

LaurentPoly substitute(const LaurentPoly& f, const std::map<std::size_t, LaurentPoly>& images,
                       const ContextPtr& target) {
  const VarContext& src = *f.context();
  for (const auto& [var, image] : images) {
    if (var >= src.size()) throw Error(ErrorKind::kInvalidArgument, "substitution for unknown variable");
    require_same_context(image.context(), target);
  }
  std::vector<std::optional<std::size_t>> carried(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (!images.count(i)) carried[i] = target->index(src.name(i));
  }

  std::map<std::pair<std::size_t, int>, LaurentPoly> powers;
  auto power_of = [&](std::size_t var, int n) -> const LaurentPoly& {
    auto key = std::make_pair(var, n);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    LaurentPoly value(target);
    if (carried[var]) {
      value = LaurentPoly::variable(target, *carried[var], n);
    } else {
      const LaurentPoly& image = images.at(var);
      if (n < 0 && !image.is_monomial()) {
        throw Error(ErrorKind::kInvertibility, "non-monomial image required at a negative exponent of '" +
                                                   src.name(var) + "'");
      }
      value = image.pow(n);
    }
    return powers.emplace(key, std::move(value)).first->second;
  };

  LaurentPoly result(target);
  for (const auto& [e, c] : f.terms()) {
    LaurentPoly term = LaurentPoly::constant(target, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) term = multiply(term, power_of(i, e[i]));
    }
    result += term;
  }
  return result;
}

LaurentPoly substitute(const LaurentPoly& f, const std::map<std::size_t, LaurentPoly>& images) {
  return substitute(f, images, f.context());
}

std::optional<LaurentPoly> divide_exact(const LaurentPoly& f, const LaurentPoly& a) {
  require_same_context(f, a);
  if (a.is_zero()) throw Error(ErrorKind::kInvalidArgument, "division by the zero polynomial");
  LaurentPoly quotient(f.context());
  if (f.is_zero()) return quotient;

  const VarContext& ctx = *f.context();
  const auto& [lead_e, lead_c] = *a.terms().rbegin();
  const Exponents& trail_a = a.terms().begin()->first;
  const Exponents& trail_f = f.terms().begin()->first;
  Exponents floor(trail_f.size());
  for (std::size_t i = 0; i < floor.size(); ++i) floor[i] = trail_f[i] - trail_a[i];

  MonomialOrder less;
  LaurentPoly::TermMap rem = f.terms();
  long budget = 8L * static_cast<long>(f.size() + 1) * static_cast<long>(a.size() + 1) + 64;
  while (!rem.empty()) {
    if (--budget < 0) return std::nullopt;
    const auto& [e, c] = *rem.rbegin();
    Exponents qe(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      qe[i] = e[i] - lead_e[i];
      if (qe[i] < 0 && !ctx.invertible(i)) return std::nullopt;
    }
    // Every quotient term lies between trail(f)/trail(a) and lead(f)/lead(a).
    if (less(qe, floor)) return std::nullopt;
    Rational qc = c / lead_c;
    quotient.add_term(qe, qc);
    for (const auto& [ae, ac] : a.terms()) accumulate_term(rem, add_exponents(ae, qe), -qc * ac);
  }
  return quotient;
}

int compare(const LaurentPoly& a, const LaurentPoly& b) {
  MonomialOrder less;
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
    if (less(ia->first, ib->first)) return -1;
    if (less(ib->first, ia->first)) return 1;
    int c = cmp(ia->second, ib->second);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  if (ia == a.terms().end() && ib == b.terms().end()) return 0;
  return ia == a.terms().end() ? -1 : 1;
}

}  // namespace poisson_forge
