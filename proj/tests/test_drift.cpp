#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "urnlab/drift.hpp"
#include "urnlab/rng.hpp"

using namespace urnlab;

namespace {

Rational rat(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Rule random_rule(SplitMix64& rng, int k_max) {
  const int k = 1 + static_cast<int>(rng.next_below(static_cast<uint64_t>(k_max)));
  std::vector<int> e;
  for (int i = 0; i <= k; ++i)
    if (rng.next() & 1) e.push_back(i);
  return make_rule(k, std::move(e));
}

// Direct term-by-term drift evaluation, independent of the expansion.
Rational drift_direct(const Rule& r, const Rational& y) {
  const Rational one_minus = Rational(1) - y;
  Rational total = 0;
  for (int i : r.black_counts) {
    total += Rational(r.k) *
             Rational(binomial(static_cast<unsigned long>(r.k), static_cast<unsigned long>(i))) *
             pow(y, static_cast<unsigned long>(i)) *
             pow(one_minus, static_cast<unsigned long>(r.k - i));
  }
  return total - Rational(r.k) * y;
}

}  // namespace

TEST_CASE("drift polynomial worked examples") {
  CHECK(drift_polynomial(make_rule(2, {0, 1})) ==
        RationalPolynomial({rat(2), rat(-2), rat(-2)}));
  CHECK(drift_polynomial(make_rule(4, {})) == RationalPolynomial({rat(0), rat(-4)}));
  CHECK(drift_polynomial(make_rule(1, {1})).is_zero());
  CHECK(drift_polynomial(make_rule(1, {0})) == RationalPolynomial({rat(1), rat(-2)}));
  // 3(3y-1)(y-1) = 9y^2 - 12y + 3
  CHECK(drift_polynomial(make_rule(3, {0, 3})) ==
        RationalPolynomial({rat(3), rat(-12), rat(9)}));
}

TEST_CASE("expansion matches the direct binomial sum exactly") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    Rule r = random_rule(rng, 10);
    RationalPolynomial b = drift_polynomial(r);
    Rational y = rat(static_cast<long>(rng.next_below(1000)), 999);
    CHECK(b.eval(y) == drift_direct(r, y));
  }
}

TEST_CASE("endpoint signs: b(0) = k[0 in E] >= 0 and b(1) = k([k in E] - 1) <= 0") {
  SplitMix64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    Rule r = random_rule(rng, 10);
    RationalPolynomial b = drift_polynomial(r);
    CHECK(b.eval(rat(0)) == rat(r.recolors_black(0) ? r.k : 0));
    CHECK(b.eval(rat(1)) == rat(r.recolors_black(r.k) ? 0 : -r.k));
  }
}

TEST_CASE("dual identity: b_dual(y) = -b(1-y) exactly") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Rule r = random_rule(rng, 10);
    CHECK(drift_polynomial(r.dual()) == -drift_polynomial(r).reflected());
  }
}

TEST_CASE("canonical computed numbers are exact rationals") {
  CHECK(*computed_number(make_rule(1, {})).exact() == 0);
  CHECK(*computed_number(make_rule(1, {0, 1})).exact() == 1);
  CHECK(*computed_number(make_rule(2, {1})).exact() == rat(1, 2));
  CHECK(*computed_number(make_rule(3, {0, 3})).exact() == rat(1, 3));
  CHECK(*computed_number(make_rule(3, {1, 2})).exact() == rat(2, 3));
  // frozen chain: b identically zero
  CHECK(*computed_number(make_rule(1, {1})).exact() == rat(1, 2));
}

TEST_CASE("degree family (k,{1}) computes 1 - (1/k)^(1/(k-1))") {
  for (int k = 2; k <= 10; ++k) {
    const AlgebraicNumber alpha = computed_number(make_rule(k, {1}));
    const long double closed_form =
        1.0L - std::exp(-std::log(static_cast<long double>(k)) / (k - 1));
    CHECK(std::abs(alpha.to_double() - static_cast<double>(closed_form)) < 1e-15);
  }
}

TEST_CASE("(2,{0,1}) computes the golden-ratio conjugate") {
  const AlgebraicNumber alpha = computed_number(make_rule(2, {0, 1}));
  CHECK_FALSE(alpha.is_rational());
  CHECK(std::abs(alpha.to_double() - (std::sqrt(5.0) - 1.0) / 2.0) < 1e-15);
}

TEST_CASE("computed number is symmetric under duality") {
  SplitMix64 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    Rule r = random_rule(rng, 8);
    CHECK(computed_number(r.dual()) == computed_number(r).reflected());
  }
}

TEST_CASE("no root strictly between 1/2 and alpha") {
  SplitMix64 rng(9);
  const Rational half = rat(1, 2);
  for (int trial = 0; trial < 60; ++trial) {
    Rule r = random_rule(rng, 8);
    RationalPolynomial b = drift_polynomial(r);
    if (b.is_zero()) continue;
    AlgebraicNumber alpha = computed_number(r);
    // Interval between 1/2 and the near side of alpha's isolating interval.
    Rational near = alpha.compare(half) >= 0 ? alpha.lower() : alpha.upper();
    Rational lo = std::min(half, near);
    Rational hi = std::max(half, near);
    if (lo == hi) continue;  // alpha = 1/2 or interval touches it
    // No sign change inside: b keeps one sign on (lo, hi).
    const int s = sgn(b.eval((lo + hi) / 2));
    for (int j = 1; j < 16; ++j) {
      Rational y = lo + (hi - lo) * rat(j, 16);
      const int sy = sgn(b.eval(y));
      if (sy != 0) CHECK(sy == s);
    }
  }
}

TEST_CASE("computed roots are genuine roots of the drift") {
  SplitMix64 rng(10);
  for (int trial = 0; trial < 40; ++trial) {
    Rule r = random_rule(rng, 8);
    RationalPolynomial b = drift_polynomial(r);
    if (b.is_zero()) continue;
    for (const auto& root : roots_in_unit_interval(b)) {
      if (root.is_rational()) {
        CHECK(b.eval(*root.exact()) == 0);
      } else {
        CHECK(sgn(b.eval(root.lower())) != sgn(b.eval(root.upper())));
      }
    }
  }
}

TEST_CASE("root count matches the Sturm count of the square-free part on [0,1]") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    Rule r = random_rule(rng, 9);
    RationalPolynomial b = drift_polynomial(r);
    if (b.is_zero()) continue;
    CHECK(static_cast<int>(roots_in_unit_interval(b).size()) ==
          count_distinct_roots(b, rat(0), rat(1)));
  }
}
