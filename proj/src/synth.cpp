#include "urnlab/synth.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numeric>
#include <thread>

#include "urnlab/drift.hpp"
#include "urnlab/errors.hpp"
#include "urnlab/sim.hpp"

namespace urnlab {

Rule residue_rule(int a, int b, int k) {
  if (b < 1 || a <= 0 || a >= b)
    throw ValidationError("residue_rule: need 0 < a < b, got a = " + std::to_string(a) +
                          ", b = " + std::to_string(b));
  if (k < b)
    throw ValidationError("residue_rule: need k >= b, got k = " + std::to_string(k) +
                          ", b = " + std::to_string(b));
  std::vector<int> e;
  for (int i = 0; i <= k; ++i)
    if (i % b < a) e.push_back(i);
  return make_rule(k, std::move(e));
}

double coupling_bound(double x, int b, int k) {
  if (!(x > 0.0 && x < 1.0))
    throw ValidationError("coupling_bound: x must lie strictly inside (0, 1)");
  if (b < 1) throw ValidationError("coupling_bound: b must be >= 1");
  const int exponent = k / b;  // 0 for k < b: vacuous bound 1
  return std::pow(1.0 - std::pow(x * (1.0 - x), b), exponent);
}

Rational binomial_residue_probability(int k, const Rational& x, int a, int b) {
  if (x < 0 || x > 1)
    throw ValidationError("binomial_residue_probability: x must lie in [0, 1]");
  if (b < 1 || a <= 0 || a > b)
    throw ValidationError("binomial_residue_probability: need 0 < a <= b");
  Rational total = 0;
  const Rational one_minus = Rational(1) - x;
  for (int i = 0; i <= k; ++i) {
    if (i % b >= a) continue;
    total += Rational(binomial(static_cast<unsigned long>(k), static_cast<unsigned long>(i))) *
             pow(x, static_cast<unsigned long>(i)) *
             pow(one_minus, static_cast<unsigned long>(k - i));
  }
  return total;
}

SynthesisResult synthesize(int a, int b, const Rational& epsilon, int k_max) {
  if (b < 2 || a <= 0 || a >= b)
    throw ValidationError("synthesize: target must satisfy 0 < a/b < 1");
  if (std::gcd(a, b) != 1) throw ValidationError("synthesize: target a/b must be in lowest terms");
  if (epsilon <= 0) throw ValidationError("synthesize: epsilon must be positive");

  Rational target(a, b);
  target.canonicalize();
  std::optional<SynthesisResult> best;
  for (int k = b; k <= k_max; k += b) {
    const Rule rule = residue_rule(a, b, k);
    // Certify from the isolating interval: the interval must be narrow enough
    // that the worst endpoint distance is a faithful bound.
    AlgebraicNumber alpha = computed_number(rule).refined(epsilon / 16);
    Rational error;
    if (alpha.exact()) {
      error = abs(*alpha.exact() - target);
    } else {
      error = std::max(abs(alpha.lower() - target), abs(alpha.upper() - target));
    }
    SynthesisResult candidate{rule, std::move(alpha), target, error,
                              coupling_bound(to_double(target), b, k)};
    if (error <= epsilon) return candidate;
    if (!best || candidate.achieved_error < best->achieved_error) best = std::move(candidate);
  }
  throw SynthesisFailure("synthesize: no k <= " + std::to_string(k_max) +
                             " certifies |alpha - " + fraction_string(target) + "| <= " +
                             fraction_string(epsilon),
                         std::move(best));
}

ExclusionVerdict exclusion_check(long p, long q) {
  if (q == 0) throw ValidationError("exclusion_check: q must be nonzero");
  if (q < 0 || p < 0 || p > q)
    throw ValidationError("exclusion_check: need 0 <= p <= q with q >= 1");
  Rational value(p, q);
  value.canonicalize();
  ExclusionVerdict out;
  out.value = value;
  const Integer den = value.get_den();
  if (den >= 4) {
    out.verdict = Computability::kProvablyNotComputable;
    return out;
  }
  out.verdict = Computability::kKnownComputable;
  if (value == 0) {
    out.rule = make_rule(1, {});
  } else if (value == 1) {
    out.rule = make_rule(1, {0, 1});
  } else if (value == Rational(1, 2)) {
    out.rule = make_rule(2, {1});
  } else if (value == Rational(1, 3)) {
    out.rule = make_rule(3, {0, 3});
  } else if (value == Rational(2, 3)) {
    out.rule = make_rule(3, {1, 2});
  } else {
    out.verdict = Computability::kUndecided;  // unreachable: q <= 3 covers all cases
  }
  return out;
}

namespace {

struct RuleAnalysis {
  Rule rule;
  std::optional<AlgebraicNumber> alpha;
  std::vector<Rational> rational_roots;  // reduced roots with denominator in [4, q_max]
};

void analyze_rule(const Rule& rule, int q_max, RuleAnalysis& out) {
  out.rule = rule;
  out.alpha = computed_number(rule);
  if (q_max < 4) return;
  const RationalPolynomial b = drift_polynomial(rule);
  // The identically-zero drift freezes the chain at 1/2; it does not make the
  // rule compute any other rational, so it is excluded from the root scan.
  if (b.is_zero()) return;
  for (int q = 4; q <= q_max; ++q) {
    for (int p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      Rational x(p, q);
      if (b.eval(x) == 0) out.rational_roots.push_back(std::move(x));
    }
  }
}

void run_parallel(size_t jobs, const std::function<void(size_t)>& body) {
  const unsigned workers = std::min<size_t>(worker_threads(), jobs);
  if (workers <= 1) {
    for (size_t j = 0; j < jobs; ++j) body(j);
    return;
  }
  std::atomic<size_t> counter{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        size_t j = counter.fetch_add(1);
        if (j >= jobs) return;
        body(j);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

SearchReport exhaustive_search(int k_max, int rational_q_max) {
  if (k_max < 1) throw ValidationError("exhaustive_search: k_max must be >= 1");

  std::vector<Rule> rules;
  for (int k = 1; k <= k_max; ++k) {
    const uint64_t subsets = uint64_t{1} << (k + 1);
    for (uint64_t mask = 0; mask < subsets; ++mask) {
      std::vector<int> e;
      for (int i = 0; i <= k; ++i)
        if (mask & (uint64_t{1} << i)) e.push_back(i);
      rules.push_back(make_rule(k, std::move(e)));
    }
  }

  std::vector<RuleAnalysis> analyses(rules.size());
  run_parallel(rules.size(), [&](size_t j) { analyze_rule(rules[j], rational_q_max, analyses[j]); });

  SearchReport report;
  for (auto& analysis : analyses)
    for (auto& root : analysis.rational_roots)
      report.violations.push_back({analysis.rule, std::move(root)});

  // Merge into the catalog: sort by value, then group exactly. The merge is
  // associative and order-independent because grouping uses exact equality.
  std::vector<size_t> order(analyses.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return analyses[a].alpha->compare(*analyses[b].alpha) < 0;
  });
  for (size_t idx : order) {
    auto& analysis = analyses[idx];
    if (!report.catalog.empty() && report.catalog.back().alpha.equals(*analysis.alpha)) {
      report.catalog.back().rules.push_back(analysis.rule);
      continue;
    }
    CatalogEntry entry{{analysis.rule}, *analysis.alpha, std::nullopt};
    if (entry.alpha.is_rational()) entry.rational = *entry.alpha.exact();
    report.catalog.push_back(std::move(entry));
  }
  return report;
}

}  // namespace urnlab
