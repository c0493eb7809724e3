#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "poisson_forge/laurent.hpp"
#include "poisson_forge/poisson.hpp"

namespace poisson_forge {

// numerator / prod(atom^exponent), with atoms monic, free of invertible
// monomial content and sorted. Monomials over invertible variables never
// appear as atoms: they are inverted inside the numerator.
class FractionElement {
 public:
  struct Factor {
    LaurentPoly atom;
    int exponent;
  };

  explicit FractionElement(LaurentPoly numerator);
  static FractionElement from_parts(LaurentPoly numerator, std::vector<Factor> denominator);

  const ContextPtr& context() const noexcept { return numerator_.context(); }
  const LaurentPoly& numerator() const noexcept { return numerator_; }
  const std::vector<Factor>& denominator() const noexcept { return denominator_; }
  LaurentPoly denominator_product() const;
  bool is_zero() const noexcept { return numerator_.is_zero(); }
  bool is_polynomial() const noexcept { return denominator_.empty(); }

  FractionElement operator-() const;
  FractionElement inverse() const;
  FractionElement pow(int n) const;
  FractionElement rebind(ContextPtr context) const;

  friend FractionElement operator+(const FractionElement& a, const FractionElement& b);
  friend FractionElement operator-(const FractionElement& a, const FractionElement& b);
  friend FractionElement operator*(const FractionElement& a, const FractionElement& b);
  friend FractionElement operator*(const FractionElement& a, const Rational& c);

  std::string to_string() const;

 private:
  FractionElement(LaurentPoly numerator, std::vector<Factor> denominator)
      : numerator_(std::move(numerator)), denominator_(std::move(denominator)) {}
  void normalize();

  LaurentPoly numerator_;
  std::vector<Factor> denominator_;
};

// Numerator of a - b over the smallest common denominator; zero iff a == b.
LaurentPoly cleared_difference(const FractionElement& a, const FractionElement& b);
bool equal(const FractionElement& a, const FractionElement& b);

// Quotient rule for the biderivation bracket.
FractionElement fraction_bracket(const FractionElement& f, const FractionElement& g, const PoissonStructure& s);

// Substitutes fractions for the variables of f's context by position; every
// variable occurring in f needs an image, parameters default to themselves in
// `target`.
FractionElement evaluate(const LaurentPoly& f, const std::map<std::size_t, FractionElement>& images,
                         const ContextPtr& target);

// Weight of numerator minus weights of the atoms; nullopt if any part is not
// homogeneous.
std::optional<std::vector<int>> fraction_weight(const FractionElement& f, const WeightVector& w);

}  // namespace poisson_forge
