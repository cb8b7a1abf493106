// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ptsym {

/// Arbitrary-precision rational; the ground field of every exact tower.
using Rational = mpq_class;

/// n/d in canonical form.
inline Rational ratio(long n, long d) {
  if (d == 0) throw std::domain_error("ratio: zero denominator");
  Rational r{mpz_class(n), mpz_class(d)};
  r.canonicalize();
  return r;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(long double x) { return x == 0.0L; }
template <class T>
bool is_zero(const std::complex<T>& z) {
  return z.real() == T(0) && z.imag() == T(0);
}
inline int sign(const Rational& q) { return sgn(q); }
inline Rational conj(const Rational& q) { return q; }
inline double to_double(const Rational& q) { return q.get_d(); }
inline std::complex<double> to_complex(const Rational& q) { return {q.get_d(), 0.0}; }

/// Exact square root when both numerator and denominator are perfect squares.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0) {
    return std::nullopt;
  }
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

/// "p" or "p/q".
inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses "p", "p/q" or a decimal literal such as "-0.125" or "1e-3" exactly.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  if (s.find('/') != std::string::npos) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    r.canonicalize();
    return r;
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    try {
      exponent = std::stol(s.substr(e + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad exponent in literal: " + s);
    }
    s = s.substr(0, e);
  }
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s = s.substr(1);
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  for (char c : s) {
    if (c == '.') {
      if (seen_point) throw std::invalid_argument("bad decimal literal: " + std::string(text));
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_point) ++frac_digits;
    } else {
      throw std::invalid_argument("bad decimal literal: " + std::string(text));
    }
  }
  if (digits.empty()) throw std::invalid_argument("bad decimal literal: " + std::string(text));
  mpz_class num(digits, 10);
  if (negative) num = -num;
  exponent -= frac_digits;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  Rational r = exponent >= 0 ? Rational(num * scale) : Rational(num, scale);
  r.canonicalize();
  return r;
}

}  // namespace ptsym
