#pragma once

#include "urnlab/algebraic.hpp"
#include "urnlab/polynomial.hpp"
#include "urnlab/rule.hpp"

namespace urnlab {

// Expected one-step change of the black count in the infinite-population
// limit: b(y) = sum_{i in E} k C(k,i) y^i (1-y)^{k-i} - k y, expanded exactly
// in the monomial basis. Integer coefficients, degree <= k.
RationalPolynomial drift_polynomial(const Rule& r);

// The number the rule computes: the root of b adjacent to 1/2 on the side
// the drift pushes toward. b(1/2) >= 0 selects the smallest root >= 1/2,
// b(1/2) < 0 the largest root <= 1/2; an identically-zero drift freezes the
// proportion at 1/2 exactly.
AlgebraicNumber computed_number(const Rule& r);

}  // namespace urnlab
