#pragma once

#include <optional>
#include <vector>

#include "urnlab/algebraic.hpp"
#include "urnlab/errors.hpp"
#include "urnlab/rational.hpp"
#include "urnlab/rule.hpp"

namespace urnlab {

// The residue rule E_{a,b} for k draws: {i <= k : i mod b < a}.
// Requires 0 < a < b and k >= b.
Rule residue_rule(int a, int b, int k);

// Coupling bound (1 - x^b (1-x)^b)^floor(k/b) on the distance between
// P(Binomial(k,x) mod b < a) and a/b. Requires 0 < x < 1 and b >= 1; k < b
// yields the vacuous bound 1.
double coupling_bound(double x, int b, int k);

// P(Binomial(k,x) mod b < a), exact.
Rational binomial_residue_probability(int k, const Rational& x, int a, int b);

struct SynthesisResult {
  Rule rule;
  AlgebraicNumber alpha;
  Rational target;          // a/b
  Rational achieved_error;  // certified upper bound on |alpha - a/b|
  double lemma_bound;       // coupling bound at x = a/b (diagnostic)
};

// Thrown when no k <= k_max certifies; carries the best candidate seen.
class SynthesisFailure : public Error {
public:
  SynthesisFailure(std::string what, std::optional<SynthesisResult> best_candidate)
      : Error(std::move(what)), best(std::move(best_candidate)) {}
  std::optional<SynthesisResult> best;
};

// Walks k = b, 2b, ... <= k_max over residue rules and returns the first rule
// whose exactly-computed number is certified within epsilon of a/b. The
// acceptance test is the isolating interval, not the coupling bound; the
// bound is attached as a diagnostic. Requires 0 < a/b < 1 in lowest terms.
SynthesisResult synthesize(int a, int b, const Rational& epsilon, int k_max);

enum class Computability {
  kProvablyNotComputable,  // reduced denominator >= 4
  kKnownComputable,        // one of 0, 1, 1/2, 1/3, 2/3
  kUndecided,              // unreachable for rationals; kept for totality
};

struct ExclusionVerdict {
  Computability verdict = Computability::kUndecided;
  Rational value;             // p/q in lowest terms
  std::optional<Rule> rule;   // canonical rule when known computable
};

// Decides computability of the rational p/q (0 <= p <= q, q >= 1).
ExclusionVerdict exclusion_check(long p, long q);

struct CatalogEntry {
  std::vector<Rule> rules;  // every enumerated rule computing this number
  AlgebraicNumber alpha;
  std::optional<Rational> rational;  // engaged when alpha is rational
};

struct RationalRootViolation {
  Rule rule;
  Rational root;  // reduced rational root with denominator >= 4
};

struct SearchReport {
  std::vector<CatalogEntry> catalog;  // deduplicated, ascending by value
  std::vector<RationalRootViolation> violations;
};

// Enumerates every rule with k <= k_max. Catalogs the computed numbers
// (deduplicated by exact equality, keeping all rules per number) and tests
// each nonzero drift polynomial for rational roots p/q with gcd(p,q) = 1 and
// 4 <= q <= rational_q_max (expected: none). rational_q_max < 4 skips the
// root scan. Enumeration runs in parallel (capped by URNLAB_THREADS).
SearchReport exhaustive_search(int k_max, int rational_q_max);

}  // namespace urnlab
