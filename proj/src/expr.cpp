#include "poisson_forge/expr.hpp"

#include <cctype>
#include <climits>

#include "poisson_forge/error.hpp"

namespace poisson_forge {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const ContextPtr& context) : text_(text), ctx_(context) {}

  LaurentPoly run() {
    skip();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
    LaurentPoly value = expr();
    skip();
    if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return value;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char ch) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  LaurentPoly expr() {
    LaurentPoly value = term();
    for (;;) {
      if (accept('+')) {
        value += term();
      } else if (accept('-')) {
        value -= term();
      } else {
        return value;
      }
    }
  }

  LaurentPoly term() {
    LaurentPoly value = factor();
    while (accept('*')) value = multiply(value, factor());
    return value;
  }

  LaurentPoly factor() {
    if (accept('-')) return -factor();
    std::size_t start = pos_;
    LaurentPoly value = base();
    if (accept('^')) {
      int n = signed_int();
      try {
        value = value.pow(n);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::kInvertibility) {
          throw Error(ErrorKind::kInvertibility, std::string(e.what()) + " at position " + std::to_string(start));
        }
        throw;
      }
    }
    return value;
  }

  BigInt digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected integer", start);
    return BigInt(std::string(text_.substr(start, pos_ - start)), 10);
  }

  int signed_int() {
    bool negative = false;
    if (accept('-')) {
      negative = true;
    } else {
      accept('+');
    }
    std::size_t start = pos_;
    BigInt n = digits();
    if (!n.fits_sint_p() || n > INT_MAX / 2) throw ParseError("exponent out of range", start);
    int v = static_cast<int>(n.get_si());
    return negative ? -v : v;
  }

  LaurentPoly base() {
    char ch = peek();
    if (ch == '(') {
      ++pos_;
      LaurentPoly value = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return value;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      BigInt num = digits();
      BigInt den = 1;
      if (accept('/')) {
        std::size_t at = pos_;
        den = digits();
        if (den == 0) throw ParseError("zero denominator", at);
      }
      Rational c(num, den);
      c.canonicalize();
      return LaurentPoly::constant(ctx_, c);
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      auto index = ctx_->find(name);
      if (!index) {
        throw Error(ErrorKind::kUnknownIdentifier,
                    "unknown identifier '" + std::string(name) + "' at position " + std::to_string(start));
      }
      return LaurentPoly::variable(ctx_, *index);
    }
    if (ch == '\0') throw ParseError("unexpected end of input", pos_);
    throw ParseError(std::string("unexpected '") + ch + "'", pos_);
  }

  std::string_view text_;
  const ContextPtr& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly parse_expr(std::string_view text, const ContextPtr& context) {
  return Parser(text, context).run();
}

std::string format_monomial(const VarContext& context, const Exponents& e) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += context.name(i);
    if (e[i] != 1) out += "^" + std::to_string(e[i]);
  }
  return out;
}

std::string format_expr(const LaurentPoly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    bool negative = sgn(c) < 0;
    Rational mag = abs(c);
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string mon = format_monomial(*f.context(), e);
    if (mon.empty()) {
      out += to_string(mag);
    } else if (mag == 1) {
      out += mon;
    } else {
      out += to_string(mag) + "*" + mon;
    }
  }
  return out;
}

}  // namespace poisson_forge
