#include "urnlab/drift.hpp"

#include <cassert>

namespace urnlab {

RationalPolynomial drift_polynomial(const Rule& r) {
  const unsigned long k = static_cast<unsigned long>(r.k);
  std::vector<Rational> coeffs(k + 1, Rational(0));
  for (int i : r.black_counts) {
    const unsigned long ui = static_cast<unsigned long>(i);
    const Integer weight = Integer(static_cast<long>(k)) * binomial(k, ui);
    // k C(k,i) y^i (1-y)^{k-i}, expanded by the binomial theorem
    for (unsigned long j = 0; j + ui <= k; ++j) {
      Integer term = weight * binomial(k - ui, j);
      if (j % 2 == 1) term = -term;
      coeffs[ui + j] += Rational(term);
    }
  }
  coeffs[1] -= Rational(static_cast<long>(k));
  return RationalPolynomial(std::move(coeffs));
}

AlgebraicNumber computed_number(const Rule& r) {
  const RationalPolynomial b = drift_polynomial(r);
  const Rational half(1, 2);
  if (b.is_zero()) return AlgebraicNumber::from_rational(half);  // frozen chain
  const int side = sgn(b.eval(half));
  const auto roots = roots_in_unit_interval(b);
  if (side >= 0) {
    for (const auto& root : roots)
      if (root.compare(half) >= 0) return root;
  } else {
    for (auto it = roots.rbegin(); it != roots.rend(); ++it)
      if (it->compare(half) <= 0) return *it;
  }
  // Unreachable: b(0) >= 0 and b(1) <= 0 guarantee a root on the chosen side.
  assert(false);
  return AlgebraicNumber::from_rational(half);
}

}  // namespace urnlab
