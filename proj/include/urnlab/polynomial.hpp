#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "urnlab/rational.hpp"

namespace urnlab {

// Dense univariate polynomial over exact rationals. Index = monomial degree.
// All arithmetic is exact; there is no floating point anywhere in this type.
class RationalPolynomial {
public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<Rational> coefficients);
  RationalPolynomial(std::initializer_list<Rational> coefficients);

  static RationalPolynomial zero() { return RationalPolynomial(); }
  static RationalPolynomial constant(const Rational& c);
  // p(y) = c1*y + c0
  static RationalPolynomial linear(const Rational& c1, const Rational& c0);

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  // Coefficient of y^i; zero beyond the degree.
  const Rational& coefficient(size_t i) const;
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  const Rational& leading_coefficient() const;

  Rational eval(const Rational& y) const;
  double eval_double(double y) const;
  std::vector<double> double_coefficients() const;

  RationalPolynomial derivative() const;

  RationalPolynomial operator-() const;
  RationalPolynomial operator+(const RationalPolynomial& o) const;
  RationalPolynomial operator-(const RationalPolynomial& o) const;
  RationalPolynomial operator*(const RationalPolynomial& o) const;
  RationalPolynomial operator*(const Rational& s) const;
  bool operator==(const RationalPolynomial& o) const = default;

  // Quotient and remainder of exact polynomial long division.
  // Throws ValidationError when the divisor is zero.
  std::pair<RationalPolynomial, RationalPolynomial> divide(const RationalPolynomial& divisor) const;

  // p divided by its content: integer coefficients with gcd 1, sign kept.
  RationalPolynomial primitive_part() const;

  // p(c0 + c1*y), expanded.
  RationalPolynomial compose_affine(const Rational& c0, const Rational& c1) const;
  // p(1 - y).
  RationalPolynomial reflected() const { return compose_affine(1, -1); }

  // Exact division by (y - root); the remainder must vanish.
  RationalPolynomial deflate(const Rational& root) const;

  std::string to_string(const std::string& var = "y") const;

private:
  void normalize();
  std::vector<Rational> coeffs_;
};

// Primitive gcd with positive leading coefficient (constant 1 for coprime
// inputs, zero polynomial when both inputs are zero).
RationalPolynomial poly_gcd(const RationalPolynomial& a, const RationalPolynomial& b);

// p / gcd(p, p'): same roots, all simple. Returned primitive with positive
// leading coefficient.
RationalPolynomial square_free_part(const RationalPolynomial& p);

}  // namespace urnlab
