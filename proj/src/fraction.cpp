#include "poisson_forge/fraction.hpp"

#include <algorithm>

#include "poisson_forge/error.hpp"
#include "poisson_forge/expr.hpp"

namespace poisson_forge {

namespace {

using Factor = FractionElement::Factor;

// Splits p = u * q with u = c * (monomial over invertible variables), q monic
// and free of invertible monomial content.
std::pair<LaurentPoly, LaurentPoly> split_unit(const LaurentPoly& p) {
  const auto& ctx = p.context();
  Exponents m(ctx->size(), 0);
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!ctx->invertible(i)) continue;
      m[i] = first ? e[i] : std::min(m[i], e[i]);
    }
    first = false;
  }
  LaurentPoly q = p * LaurentPoly::monomial(ctx, m).pow(-1);
  Rational lead = q.terms().rbegin()->second;
  q *= Rational(1) / lead;
  return {LaurentPoly::monomial(ctx, m, lead), q};
}

std::vector<Factor> merge(const std::vector<Factor>& a, const std::vector<Factor>& b, bool take_max) {
  std::vector<Factor> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c = i == a.size() ? 1 : j == b.size() ? -1 : compare(a[i].atom, b[j].atom);
    if (c < 0) {
      out.push_back(a[i++]);
    } else if (c > 0) {
      out.push_back(b[j++]);
    } else {
      int e = take_max ? std::max(a[i].exponent, b[j].exponent) : a[i].exponent + b[j].exponent;
      out.push_back({a[i].atom, e});
      ++i;
      ++j;
    }
  }
  return out;
}

// Numerator of x brought over the denominator `common`.
LaurentPoly lift(const FractionElement& x, const std::vector<Factor>& common) {
  LaurentPoly n = x.numerator();
  std::size_t i = 0;
  for (const auto& f : common) {
    int have = 0;
    if (i < x.denominator().size() && compare(x.denominator()[i].atom, f.atom) == 0) {
      have = x.denominator()[i].exponent;
      ++i;
    }
    if (f.exponent > have) n = n * f.atom.pow(f.exponent - have);
  }
  return n;
}

}  // namespace

FractionElement::FractionElement(LaurentPoly numerator) : numerator_(std::move(numerator)) {}

FractionElement FractionElement::from_parts(LaurentPoly numerator, std::vector<Factor> denominator) {
  for (const auto& f : denominator) {
    require_same_context(f.atom, numerator);
    if (f.atom.is_zero()) throw Error(ErrorKind::kInvalidArgument, "division by zero");
    if (f.exponent < 0) throw Error(ErrorKind::kInvalidArgument, "negative denominator exponent");
  }
  FractionElement out(std::move(numerator), std::move(denominator));
  out.normalize();
  return out;
}

void FractionElement::normalize() {
  if (numerator_.is_zero()) {
    denominator_.clear();
    return;
  }
  std::vector<Factor> atoms;
  for (auto& f : denominator_) {
    if (f.exponent == 0) continue;
    auto [unit, q] = split_unit(f.atom);
    numerator_ = numerator_ * unit.pow(-f.exponent);
    if (q.is_constant()) continue;
    atoms.push_back({std::move(q), f.exponent});
  }
  std::sort(atoms.begin(), atoms.end(), [](const Factor& a, const Factor& b) { return compare(a.atom, b.atom) < 0; });
  std::vector<Factor> merged;
  for (auto& f : atoms) {
    if (!merged.empty() && compare(merged.back().atom, f.atom) == 0) {
      merged.back().exponent += f.exponent;
    } else {
      merged.push_back(std::move(f));
    }
  }
  for (auto& f : merged) {
    while (f.exponent > 0) {
      auto q = divide_exact(numerator_, f.atom);
      if (!q) break;
      numerator_ = std::move(*q);
      --f.exponent;
    }
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(), [](const Factor& f) { return f.exponent == 0; }),
               merged.end());
  denominator_ = std::move(merged);
}

LaurentPoly FractionElement::denominator_product() const {
  LaurentPoly d = LaurentPoly::constant(context(), 1);
  for (const auto& f : denominator_) d = d * f.atom.pow(f.exponent);
  return d;
}

FractionElement FractionElement::operator-() const { return FractionElement(-numerator_, denominator_); }

FractionElement FractionElement::inverse() const {
  if (is_zero()) throw Error(ErrorKind::kInvertibility, "inverse of zero");
  return from_parts(denominator_product(), {{numerator_, 1}});
}

FractionElement FractionElement::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  std::vector<Factor> den = denominator_;
  for (auto& f : den) f.exponent *= n;
  return FractionElement(numerator_.pow(n), std::move(den));
}

FractionElement FractionElement::rebind(ContextPtr ctx) const {
  std::vector<Factor> den;
  for (const auto& f : denominator_) den.push_back({f.atom.rebind(ctx), f.exponent});
  return from_parts(numerator_.rebind(ctx), std::move(den));
}

FractionElement operator+(const FractionElement& a, const FractionElement& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  auto common = merge(a.denominator_, b.denominator_, true);
  return FractionElement::from_parts(lift(a, common) + lift(b, common), common);
}

FractionElement operator-(const FractionElement& a, const FractionElement& b) { return a + (-b); }

FractionElement operator*(const FractionElement& a, const FractionElement& b) {
  if (a.is_zero()) return a;
  if (b.is_zero()) return b;
  return FractionElement::from_parts(a.numerator_ * b.numerator_, merge(a.denominator_, b.denominator_, false));
}

FractionElement operator*(const FractionElement& a, const Rational& c) {
  if (c == 0) return FractionElement(LaurentPoly(a.context()));
  return FractionElement(a.numerator_ * c, a.denominator_);
}

std::string FractionElement::to_string() const {
  if (denominator_.empty()) return format_expr(numerator_);
  std::string out = "(" + format_expr(numerator_) + ")";
  for (const auto& f : denominator_) out += "*(" + format_expr(f.atom) + ")^" + std::to_string(-f.exponent);
  return out;
}

LaurentPoly cleared_difference(const FractionElement& a, const FractionElement& b) {
  require_same_context(a.context(), b.context());
  auto common = merge(a.denominator(), b.denominator(), true);
  return lift(a, common) - lift(b, common);
}

bool equal(const FractionElement& a, const FractionElement& b) { return cleared_difference(a, b).is_zero(); }

FractionElement fraction_bracket(const FractionElement& f, const FractionElement& g, const PoissonStructure& s) {
  const LaurentPoly& n = f.numerator();
  const LaurentPoly& m = g.numerator();
  auto base = merge(f.denominator(), g.denominator(), false);
  auto over = [&](const LaurentPoly& num, std::vector<Factor> extra) {
    std::sort(extra.begin(), extra.end(), [](const Factor& a, const Factor& b) { return compare(a.atom, b.atom) < 0; });
    return FractionElement::from_parts(num, merge(base, extra, false));
  };
  FractionElement result = over(s.bracket(n, m), {});
  for (const auto& a : f.denominator()) {
    result = result - over(n * s.bracket(a.atom, m) * Rational(a.exponent), {{a.atom, 1}});
  }
  for (const auto& b : g.denominator()) {
    result = result - over(m * s.bracket(n, b.atom) * Rational(b.exponent), {{b.atom, 1}});
  }
  for (const auto& a : f.denominator()) {
    for (const auto& b : g.denominator()) {
      LaurentPoly ab = s.bracket(a.atom, b.atom);
      if (ab.is_zero()) continue;
      std::vector<Factor> extra{{a.atom, 1}, {b.atom, 1}};
      result = result + over(n * m * ab * Rational(a.exponent * b.exponent), extra);
    }
  }
  return result;
}

FractionElement evaluate(const LaurentPoly& f, const std::map<std::size_t, FractionElement>& images,
                         const ContextPtr& target) {
  const VarContext& src = *f.context();
  std::map<std::pair<std::size_t, int>, FractionElement> powers;
  auto power_of = [&](std::size_t var, int n) -> const FractionElement& {
    auto key = std::make_pair(var, n);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    auto img = images.find(var);
    FractionElement value{LaurentPoly(target)};
    if (img != images.end()) {
      value = img->second.pow(n);
    } else {
      auto pos = target->find(src.name(var));
      if (!pos || !src.parameter(var)) {
        throw Error(ErrorKind::kInvalidArgument, "no image for '" + src.name(var) + "'");
      }
      value = FractionElement(LaurentPoly::variable(target, *pos, n));
    }
    return powers.emplace(key, std::move(value)).first->second;
  };
  FractionElement result{LaurentPoly(target)};
  for (const auto& [e, c] : f.terms()) {
    FractionElement term{LaurentPoly::constant(target, c)};
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) term = term * power_of(i, e[i]);
    }
    result = result + term;
  }
  return result;
}

std::optional<std::vector<int>> fraction_weight(const FractionElement& f, const WeightVector& w) {
  auto weight = homogeneous_weight(f.numerator(), w);
  if (!weight) return std::nullopt;
  for (const auto& a : f.denominator()) {
    auto wa = homogeneous_weight(a.atom, w);
    if (!wa) return std::nullopt;
    for (std::size_t k = 0; k < weight->size(); ++k) (*weight)[k] -= a.exponent * (*wa)[k];
  }
  return weight;
}

}  // namespace poisson_forge
