#include "urnlab/polynomial.hpp"

#include <sstream>

#include "urnlab/errors.hpp"

namespace urnlab {

namespace {
const Rational kZero = 0;
}

RationalPolynomial::RationalPolynomial(std::vector<Rational> coefficients)
    : coeffs_(std::move(coefficients)) {
  normalize();
}

RationalPolynomial::RationalPolynomial(std::initializer_list<Rational> coefficients)
    : coeffs_(coefficients) {
  normalize();
}

RationalPolynomial RationalPolynomial::constant(const Rational& c) {
  return RationalPolynomial({c});
}

RationalPolynomial RationalPolynomial::linear(const Rational& c1, const Rational& c0) {
  return RationalPolynomial({c0, c1});
}

void RationalPolynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const Rational& RationalPolynomial::coefficient(size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : kZero;
}

const Rational& RationalPolynomial::leading_coefficient() const {
  return coeffs_.empty() ? kZero : coeffs_.back();
}

Rational RationalPolynomial::eval(const Rational& y) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * y + *it;
  return acc;
}

double RationalPolynomial::eval_double(double y) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * y + it->get_d();
  return acc;
}

std::vector<double> RationalPolynomial::double_coefficients() const {
  std::vector<double> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.get_d());
  return out;
}

RationalPolynomial RationalPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return zero();
  std::vector<Rational> d(coeffs_.size() - 1);
  for (size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * Rational(static_cast<long>(i));
  return RationalPolynomial(std::move(d));
}

RationalPolynomial RationalPolynomial::operator-() const {
  std::vector<Rational> c(coeffs_);
  for (auto& v : c) v = -v;
  return RationalPolynomial(std::move(c));
}

RationalPolynomial RationalPolynomial::operator+(const RationalPolynomial& o) const {
  std::vector<Rational> c(std::max(coeffs_.size(), o.coeffs_.size()));
  for (size_t i = 0; i < c.size(); ++i) c[i] = coefficient(i) + o.coefficient(i);
  return RationalPolynomial(std::move(c));
}

RationalPolynomial RationalPolynomial::operator-(const RationalPolynomial& o) const {
  std::vector<Rational> c(std::max(coeffs_.size(), o.coeffs_.size()));
  for (size_t i = 0; i < c.size(); ++i) c[i] = coefficient(i) - o.coefficient(i);
  return RationalPolynomial(std::move(c));
}

RationalPolynomial RationalPolynomial::operator*(const RationalPolynomial& o) const {
  if (is_zero() || o.is_zero()) return zero();
  std::vector<Rational> c(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  return RationalPolynomial(std::move(c));
}

RationalPolynomial RationalPolynomial::operator*(const Rational& s) const {
  std::vector<Rational> c(coeffs_);
  for (auto& v : c) v *= s;
  return RationalPolynomial(std::move(c));
}

std::pair<RationalPolynomial, RationalPolynomial> RationalPolynomial::divide(
    const RationalPolynomial& divisor) const {
  if (divisor.is_zero()) throw ValidationError("polynomial division by zero");
  std::vector<Rational> rem(coeffs_);
  const int dd = divisor.degree();
  const int dn = degree();
  if (dn < dd) return {zero(), *this};
  std::vector<Rational> quot(static_cast<size_t>(dn - dd) + 1, Rational(0));
  const Rational& lead = divisor.leading_coefficient();
  for (int i = dn; i >= dd; --i) {
    Rational f = rem[static_cast<size_t>(i)] / lead;
    if (f == 0) continue;
    quot[static_cast<size_t>(i - dd)] = f;
    for (int j = 0; j <= dd; ++j)
      rem[static_cast<size_t>(i - dd + j)] -= f * divisor.coeffs_[static_cast<size_t>(j)];
  }
  return {RationalPolynomial(std::move(quot)), RationalPolynomial(std::move(rem))};
}

RationalPolynomial RationalPolynomial::primitive_part() const {
  if (is_zero()) return zero();
  Integer den_lcm = 1;
  for (const auto& c : coeffs_) {
    Integer g;
    mpz_lcm(g.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    den_lcm = g;
  }
  Integer num_gcd = 0;
  for (const auto& c : coeffs_) {
    Integer scaled = c.get_num() * (den_lcm / c.get_den());
    Integer g;
    mpz_gcd(g.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
    num_gcd = g;
  }
  Rational content(num_gcd, den_lcm);
  content.canonicalize();
  std::vector<Rational> c(coeffs_);
  for (auto& v : c) v /= content;  // content > 0, sign preserved
  return RationalPolynomial(std::move(c));
}

RationalPolynomial RationalPolynomial::compose_affine(const Rational& c0, const Rational& c1) const {
  // Horner on the affine argument.
  RationalPolynomial arg = linear(c1, c0);
  RationalPolynomial acc = zero();
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * arg + constant(*it);
  return acc;
}

RationalPolynomial RationalPolynomial::deflate(const Rational& root) const {
  auto [quot, rem] = divide(linear(1, -root));
  if (!rem.is_zero())
    throw ValidationError("deflate: " + fraction_string(root) + " is not a root");
  return quot;
}

std::string RationalPolynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[static_cast<size_t>(i)];
    if (c == 0) continue;
    Rational a = abs(c);
    if (first) {
      if (c < 0) out << "-";
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    const bool unit = a == 1 && i > 0;
    if (!unit) out << fraction_string(a);
    if (i > 0) {
      if (!unit) out << "*";
      out << var;
      if (i > 1) out << "^" << i;
    }
  }
  return out.str();
}

RationalPolynomial poly_gcd(const RationalPolynomial& a, const RationalPolynomial& b) {
  RationalPolynomial x = a.primitive_part();
  RationalPolynomial y = b.primitive_part();
  while (!y.is_zero()) {
    auto [q, r] = x.divide(y);
    x = std::move(y);
    y = r.primitive_part();
  }
  if (x.is_zero()) return x;
  if (x.leading_coefficient() < 0) return -x;
  return x;
}

RationalPolynomial square_free_part(const RationalPolynomial& p) {
  if (p.is_zero()) return p;
  if (p.degree() == 0) return RationalPolynomial::constant(1);
  RationalPolynomial g = poly_gcd(p, p.derivative());
  auto [q, r] = p.divide(g);
  // r == 0 by construction
  RationalPolynomial out = q.primitive_part();
  if (out.leading_coefficient() < 0) out = -out;
  return out;
}

}  // namespace urnlab
