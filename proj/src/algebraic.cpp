#include "urnlab/algebraic.hpp"

#include <algorithm>
#include <cassert>

#include "urnlab/errors.hpp"

namespace urnlab {

namespace {

// Default isolating-interval width: 2^-80.
const Rational& default_width() {
  static const Rational w = [] {
    Integer d;
    mpz_ui_pow_ui(d.get_mpz_t(), 2, 80);
    return Rational(Integer(1), d);
  }();
  return w;
}

int sign_of(const Rational& v) { return sgn(v); }

// Sturm chain of a square-free primitive integer polynomial, each member
// scaled back to a primitive integer polynomial (positive scaling only, so
// sign variations are unchanged).
std::vector<RationalPolynomial> sturm_chain(const RationalPolynomial& q) {
  std::vector<RationalPolynomial> chain;
  chain.push_back(q);
  RationalPolynomial d = q.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(d.primitive_part());
  while (chain.back().degree() >= 1) {
    const RationalPolynomial& prev = chain[chain.size() - 2];
    auto [quot, rem] = prev.divide(chain.back());
    if (rem.is_zero()) break;  // only for non-square-free input
    chain.push_back((-rem).primitive_part());
  }
  return chain;
}

int sign_variations(const std::vector<RationalPolynomial>& chain, const Rational& x) {
  int variations = 0;
  int prev = 0;
  for (const auto& s : chain) {
    int sg = sign_of(s.eval(x));
    if (sg == 0) continue;
    if (prev != 0 && sg != prev) ++variations;
    prev = sg;
  }
  return variations;
}

// Distinct roots in the open interval (a, b); requires q(a) != 0 and q(b) != 0.
int count_open(const std::vector<RationalPolynomial>& chain, const Rational& a,
               const Rational& b) {
  return sign_variations(chain, a) - sign_variations(chain, b);
}

// Smallest-denominator rational in the closed interval [lo, hi].
Rational simplest_in(const Rational& lo, const Rational& hi) {
  Integer c = ceil(lo);
  if (Rational(c) <= hi) return Rational(c);
  Integer f = floor(lo);
  Rational a = lo - Rational(f);
  Rational b = hi - Rational(f);
  // 0 < a <= b < 1
  Rational inner = simplest_in(1 / b, 1 / a);
  return Rational(f) + 1 / inner;
}

}  // namespace

AlgebraicNumber::AlgebraicNumber(RationalPolynomial poly, Rational lo, Rational hi,
                                 std::optional<Rational> exact)
    : poly_(std::move(poly)), lo_(std::move(lo)), hi_(std::move(hi)), exact_(std::move(exact)) {}

AlgebraicNumber AlgebraicNumber::from_rational(const Rational& value) {
  RationalPolynomial p = RationalPolynomial::linear(1, -value).primitive_part();
  return AlgebraicNumber(std::move(p), value, value, value);
}

double AlgebraicNumber::to_double() const {
  if (exact_) return urnlab::to_double(*exact_);
  return urnlab::to_double((lo_ + hi_) / 2);
}

std::string AlgebraicNumber::approx(int significant_digits) const {
  if (exact_) return decimal_string(*exact_, significant_digits);
  Integer d;
  mpz_ui_pow_ui(d.get_mpz_t(), 10, static_cast<unsigned long>(significant_digits) + 5);
  AlgebraicNumber fine = refined(Rational(Integer(1), d));
  if (fine.exact_) return decimal_string(*fine.exact_, significant_digits);
  return decimal_string((fine.lo_ + fine.hi_) / 2, significant_digits);
}

AlgebraicNumber AlgebraicNumber::refined(const Rational& max_width) const {
  if (exact_ || hi_ - lo_ <= max_width) return *this;
  Rational a = lo_, b = hi_;
  const int sa = sign_of(poly_.eval(a));
  while (b - a > max_width) {
    Rational m = (a + b) / 2;
    int sm = sign_of(poly_.eval(m));
    if (sm == 0) return AlgebraicNumber(poly_, m, m, m);
    if (sm == sa) {
      a = std::move(m);
    } else {
      b = std::move(m);
    }
  }
  return AlgebraicNumber(poly_, a, b, std::nullopt);
}

AlgebraicNumber AlgebraicNumber::reflected() const {
  RationalPolynomial p = poly_.reflected().primitive_part();
  std::optional<Rational> ex;
  if (exact_) ex = Rational(1) - *exact_;
  return AlgebraicNumber(std::move(p), Rational(1) - hi_, Rational(1) - lo_, std::move(ex));
}

bool AlgebraicNumber::equals(const AlgebraicNumber& other) const {
  auto matches_rational = [](const AlgebraicNumber& a, const Rational& v) {
    if (a.exact_) return *a.exact_ == v;
    return a.lo_ < v && v < a.hi_ && a.poly_.eval(v) == 0;
  };
  if (exact_) return matches_rational(other, *exact_);
  if (other.exact_) return matches_rational(*this, *other.exact_);
  Rational c = std::max(lo_, other.lo_);
  Rational d = std::min(hi_, other.hi_);
  if (!(c < d)) return false;
  RationalPolynomial g = poly_gcd(poly_, other.poly_);
  if (g.degree() < 1) return false;
  // c and d are isolating-interval endpoints, hence non-roots of the
  // respective defining polynomial and therefore non-roots of g.
  return count_open(sturm_chain(g), c, d) >= 1;
}

int AlgebraicNumber::compare(const AlgebraicNumber& other) const {
  if (equals(other)) return 0;
  AlgebraicNumber a = *this;
  AlgebraicNumber b = other;
  if (a.exact_ && b.exact_) return *a.exact_ < *b.exact_ ? -1 : 1;
  while (true) {
    // value(a) <= upper(a), with equality only when exact; same for lower.
    const Rational& ua = a.exact_ ? *a.exact_ : a.hi_;
    const Rational& lb = b.exact_ ? *b.exact_ : b.lo_;
    if (ua < lb || (ua == lb && (!a.exact_ || !b.exact_))) return -1;
    const Rational& ub = b.exact_ ? *b.exact_ : b.hi_;
    const Rational& la = a.exact_ ? *a.exact_ : a.lo_;
    if (ub < la || (ub == la && (!a.exact_ || !b.exact_))) return 1;
    Rational wa = a.hi_ - a.lo_;
    Rational wb = b.hi_ - b.lo_;
    Rational w = std::max(wa, wb) / 2;
    a = a.refined(w);
    b = b.refined(w);
  }
}

int AlgebraicNumber::compare(const Rational& v) const {
  if (exact_) return *exact_ < v ? -1 : (*exact_ == v ? 0 : 1);
  AlgebraicNumber a = *this;
  while (true) {
    if (v <= a.lo_) return 1;
    if (v >= a.hi_) return -1;
    if (a.poly_.eval(v) == 0) return 0;  // the unique root in the interval
    a = a.refined((a.hi_ - a.lo_) / 4);
  }
}

std::vector<AlgebraicNumber> roots_in_unit_interval(const RationalPolynomial& p) {
  // Isolating cell -> AlgebraicNumber, with certified detection of rational
  // roots: any rational root p/q (lowest terms) of a primitive integer
  // polynomial has q dividing the leading coefficient L, so refining the cell
  // below 1/(2 L^2) leaves room for at most one rational with denominator
  // <= L; the smallest-denominator rational in the cell is the only candidate.
  auto finalize_cell = [](const RationalPolynomial& q, Rational a, Rational b) {
    Integer lead = abs(q.leading_coefficient().get_num());
    Rational cert_width(Integer(1), 2 * lead * lead);
    cert_width.canonicalize();
    Rational target = std::min(default_width(), cert_width);
    const int sa = sign_of(q.eval(a));
    while (b - a > target) {
      Rational m = (a + b) / 2;
      int sm = sign_of(q.eval(m));
      if (sm == 0) return AlgebraicNumber::from_rational(m);
      if (sm == sa) {
        a = std::move(m);
      } else {
        b = std::move(m);
      }
    }
    Rational candidate = simplest_in(a, b);
    if (candidate.get_den() <= lead && q.eval(candidate) == 0)
      return AlgebraicNumber::from_rational(candidate);
    return AlgebraicNumber(q, std::move(a), std::move(b), std::nullopt);
  };

  if (p.is_zero())
    throw ZeroPolynomialError("cannot isolate the roots of the zero polynomial");
  RationalPolynomial q = square_free_part(p);
  std::vector<Rational> exact_roots;
  auto extract = [&](const Rational& r) {
    if (q.degree() >= 1 && q.eval(r) == 0) {
      exact_roots.push_back(r);
      q = q.deflate(r).primitive_part();
    }
  };
  // Roots exactly at 0, 1 or 1/2 are common for drift polynomials; taking
  // them out first keeps every later probe point a non-root.
  extract(Rational(0));
  extract(Rational(1));
  extract(Rational(1, 2));

  std::vector<std::pair<Rational, Rational>> cells;
  while (q.degree() >= 1) {
    cells.clear();
    bool deflated = false;
    auto chain = sturm_chain(q);
    std::vector<std::pair<Rational, Rational>> stack{{Rational(0), Rational(1)}};
    while (!stack.empty()) {
      auto [a, b] = std::move(stack.back());
      stack.pop_back();
      int count = count_open(chain, a, b);
      if (count == 0) continue;
      if (count == 1) {
        cells.emplace_back(std::move(a), std::move(b));
        continue;
      }
      Rational m = (a + b) / 2;
      if (q.eval(m) == 0) {
        // Probe hit a rational root: take it out and isolate afresh.
        exact_roots.push_back(m);
        q = q.deflate(m).primitive_part();
        deflated = true;
        break;
      }
      stack.emplace_back(a, m);
      stack.emplace_back(m, b);
    }
    if (!deflated) break;
  }

  std::vector<AlgebraicNumber> roots;
  roots.reserve(exact_roots.size() + cells.size());
  for (const auto& r : exact_roots) roots.push_back(AlgebraicNumber::from_rational(r));
  for (auto& [a, b] : cells) roots.push_back(finalize_cell(q, std::move(a), std::move(b)));
  std::sort(roots.begin(), roots.end(),
            [](const AlgebraicNumber& x, const AlgebraicNumber& y) { return x.compare(y) < 0; });
  return roots;
}

int count_distinct_roots(const RationalPolynomial& p, const Rational& a, const Rational& b) {
  if (p.is_zero())
    throw ZeroPolynomialError("cannot count the roots of the zero polynomial");
  if (!(a <= b)) throw ValidationError("count_distinct_roots: interval is empty");
  RationalPolynomial q = square_free_part(p);
  int extra = 0;
  if (q.degree() >= 1 && q.eval(a) == 0) {
    ++extra;
    q = q.deflate(a).primitive_part();
  }
  if (a != b && q.degree() >= 1 && q.eval(b) == 0) {
    ++extra;
    q = q.deflate(b).primitive_part();
  }
  if (q.degree() < 1 || a == b) return extra;
  return extra + count_open(sturm_chain(q), a, b);
}

}  // namespace urnlab
