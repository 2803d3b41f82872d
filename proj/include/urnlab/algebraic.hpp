#pragma once

#include <optional>
#include <string>
#include <vector>

#include "urnlab/polynomial.hpp"
#include "urnlab/rational.hpp"

namespace urnlab {

// A real algebraic number, represented by a square-free polynomial that
// vanishes at the value together with an exact rational interval isolating
// exactly one root. Rational values are detected during isolation and carried
// exactly (degenerate interval [v, v]).
//
// Equality and ordering are decided exactly; the decimal rendering is for
// display only and never feeds back into a comparison.
class AlgebraicNumber {
public:
  static AlgebraicNumber from_rational(const Rational& value);

  const RationalPolynomial& polynomial() const { return poly_; }
  const Rational& lower() const { return lo_; }
  const Rational& upper() const { return hi_; }
  const std::optional<Rational>& exact() const { return exact_; }
  bool is_rational() const { return exact_.has_value(); }

  double to_double() const;
  std::string approx(int significant_digits = 30) const;

  // Copy with isolating interval narrowed to at most max_width.
  AlgebraicNumber refined(const Rational& max_width) const;

  // The algebraic number 1 - value.
  AlgebraicNumber reflected() const;

  bool equals(const AlgebraicNumber& other) const;
  friend bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    return a.equals(b);
  }

  // -1, 0, +1 by exact value comparison.
  int compare(const AlgebraicNumber& other) const;
  int compare(const Rational& v) const;

private:
  AlgebraicNumber(RationalPolynomial poly, Rational lo, Rational hi,
                  std::optional<Rational> exact);

  friend std::vector<AlgebraicNumber> roots_in_unit_interval(const RationalPolynomial&);

  RationalPolynomial poly_;
  Rational lo_, hi_;
  std::optional<Rational> exact_;
};

// All distinct real roots of p in [0, 1], ascending. Every root comes with a
// certified isolating interval; roots that are rational are returned exactly.
// Throws ZeroPolynomialError for the identically-zero polynomial.
std::vector<AlgebraicNumber> roots_in_unit_interval(const RationalPolynomial& p);

// Number of distinct real roots of p in the closed interval [a, b]
// (multiplicities ignored). Exact; intended for cross-checks.
int count_distinct_roots(const RationalPolynomial& p, const Rational& a, const Rational& b);

}  // namespace urnlab
