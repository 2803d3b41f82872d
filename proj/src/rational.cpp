#include "urnlab/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "urnlab/errors.hpp"

namespace urnlab {

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  if (k > n) return 0;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Rational pow(const Rational& x, unsigned long e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), x.get_num().get_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), x.get_den().get_mpz_t(), e);
  return r;  // already canonical: powers of coprime values stay coprime
}

Rational parse_fraction(const std::string& text) {
  auto fail = [&] { throw ValidationError("malformed fraction: \"" + text + "\""); };
  if (text.empty()) fail();
  std::string body = text;
  const auto slash = body.find('/');
  std::string num = slash == std::string::npos ? body : body.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : body.substr(slash + 1);
  auto valid_int = [](const std::string& s) {
    if (s.empty()) return false;
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  if (!valid_int(num) || !valid_int(den)) fail();
  Integer n(num), d(den);
  if (d == 0) throw ValidationError("zero denominator in fraction: \"" + text + "\"");
  Rational r;
  r.get_num() = n;
  r.get_den() = d;
  r.canonicalize();
  return r;
}

std::string fraction_string(const Rational& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

std::string decimal_string(const Rational& v, int significant_digits) {
  if (v == 0) return "0";
  if (significant_digits < 1) significant_digits = 1;
  mpf_class f(v, static_cast<mp_bitcnt_t>(significant_digits) * 4 + 64);
  mp_exp_t exp = 0;
  std::string digits = f.get_str(exp, 10, significant_digits);
  std::string sign;
  if (!digits.empty() && digits[0] == '-') {
    sign = "-";
    digits.erase(digits.begin());
  }
  std::string out;
  if (exp <= 0) {
    out = "0." + std::string(static_cast<size_t>(-exp), '0') + digits;
  } else if (static_cast<size_t>(exp) >= digits.size()) {
    out = digits + std::string(static_cast<size_t>(exp) - digits.size(), '0');
  } else {
    out = digits.substr(0, static_cast<size_t>(exp)) + "." + digits.substr(static_cast<size_t>(exp));
  }
  return sign + out;
}

double to_double(const Rational& v) { return v.get_d(); }

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw ValidationError("non-finite value has no rational representation");
  Rational r;
  mpq_set_d(r.get_mpq_t(), x);
  return r;
}

Integer floor(const Rational& v) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
  return q;
}

Integer ceil(const Rational& v) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
  return q;
}

double round_sig15(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}

}  // namespace urnlab
