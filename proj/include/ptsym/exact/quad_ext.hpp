// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ptsym/exact/rational.hpp"

namespace ptsym {

template <class Base, int D>
class QuadExt;
template <class Base, int D>
bool is_zero(const QuadExt<Base, D>& x);

/**
 * Quadratic extension Base(√D) with elements a + b·√D.
 *
 * D must not be a square in Base. D = −1 adjoins the imaginary unit, so a
 * tower such as Q(√2)(√3)(i) is spelled QuadExt<QuadExt<QuadExt<Q,2>,3>,-1>.
 * Multiplication skips zero halves, which keeps elements that actually live
 * in a small subfield (the common case) nearly as cheap as the subfield.
 */
template <class Base, int D>
class QuadExt {
 public:
  using base_type = Base;
  static constexpr int radicand = D;

  QuadExt() : a_(0), b_(0) {}
  QuadExt(Base a, Base b) : a_(std::move(a)), b_(std::move(b)) {}

  template <class T>
    requires(!std::same_as<std::remove_cvref_t<T>, QuadExt> && std::constructible_from<Base, const T&>)
  QuadExt(const T& v) : a_(v), b_(0) {}  // NOLINT(google-explicit-constructor)

  /// √D as an element of this field.
  static QuadExt root() { return QuadExt(Base(0), Base(1)); }

  const Base& a() const { return a_; }
  const Base& b() const { return b_; }

  bool is_zero() const { return ptsym::is_zero(a_) && ptsym::is_zero(b_); }

  QuadExt operator-() const { return QuadExt(-a_, -b_); }

  QuadExt& operator+=(const QuadExt& y) {
    a_ += y.a_;
    b_ += y.b_;
    return *this;
  }
  QuadExt& operator-=(const QuadExt& y) {
    a_ -= y.a_;
    b_ -= y.b_;
    return *this;
  }
  QuadExt& operator*=(const QuadExt& y) { return *this = *this * y; }
  QuadExt& operator/=(const QuadExt& y) { return *this = *this / y; }

  friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
  friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }

  friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    const bool xb = ptsym::is_zero(x.b_);
    const bool yb = ptsym::is_zero(y.b_);
    if (xb && yb) return QuadExt(Base(x.a_ * y.a_), Base(0));
    if (xb) return QuadExt(Base(x.a_ * y.a_), Base(x.a_ * y.b_));
    if (yb) return QuadExt(Base(x.a_ * y.a_), Base(x.b_ * y.a_));
    const bool xa = ptsym::is_zero(x.a_);
    const bool ya = ptsym::is_zero(y.a_);
    if (xa && ya) return QuadExt(Base(Base(D) * Base(x.b_ * y.b_)), Base(0));
    Base bb = x.b_ * y.b_;
    Base ra = x.a_ * y.a_;
    ra += Base(D) * bb;
    Base rb = x.a_ * y.b_;
    rb += Base(x.b_ * y.a_);
    return QuadExt(std::move(ra), std::move(rb));
  }

  /// Multiplicative inverse (a − b√D)/(a² − D·b²).
  QuadExt inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in exact field");
    if (ptsym::is_zero(b_)) return QuadExt(Base(Base(1) / a_), Base(0));
    Base norm = Base(a_ * a_) - Base(Base(D) * Base(b_ * b_));
    return QuadExt(Base(a_ / norm), Base(-b_ / norm));
  }

  friend QuadExt operator/(const QuadExt& x, const QuadExt& y) {
    if (ptsym::is_zero(y.b_)) {
      if (ptsym::is_zero(y.a_)) throw std::domain_error("division by zero in exact field");
      return QuadExt(Base(x.a_ / y.a_), Base(x.b_ / y.a_));
    }
    return x * y.inverse();
  }

  friend bool operator==(const QuadExt& x, const QuadExt& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

 private:
  Base a_;
  Base b_;
};

template <class Base, int D>
bool is_zero(const QuadExt<Base, D>& x) {
  return x.is_zero();
}

/// Complex conjugation: flips √−1, leaves real radicals alone.
template <class Base, int D>
QuadExt<Base, D> conj(const QuadExt<Base, D>& x) {
  if constexpr (D < 0) {
    return QuadExt<Base, D>(conj(x.a()), -conj(x.b()));
  } else {
    return QuadExt<Base, D>(conj(x.a()), conj(x.b()));
  }
}

/// Sign of a real tower element, decided exactly.
template <class Base, int D>
  requires(D > 0)
int sign(const QuadExt<Base, D>& x) {
  const int sa = sign(x.a());
  const int sb = sign(x.b());
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  Base t = Base(x.a() * x.a()) - Base(Base(D) * Base(x.b() * x.b()));
  return sign(t) * sa;
}

template <class Base, int D>
std::complex<double> to_complex(const QuadExt<Base, D>& x) {
  if constexpr (D == -1) {
    return to_complex(x.a()) + std::complex<double>(0.0, 1.0) * to_complex(x.b());
  } else {
    return to_complex(x.a()) + std::sqrt(static_cast<double>(D)) * to_complex(x.b());
  }
}

template <class Base, int D>
  requires(D > 0)
double to_double(const QuadExt<Base, D>& x) {
  return to_double(x.a()) + std::sqrt(static_cast<double>(D)) * to_double(x.b());
}

/**
 * Square root inside the field, if one exists.
 *
 * (x + y√D)² = a + b√D gives x² + D y² = a and 2xy = b, so x² is a root of a
 * quadratic over Base and the search recurses down the tower. For real fields
 * the non-negative root is returned.
 */
template <class Base, int D>
std::optional<QuadExt<Base, D>> exact_sqrt(const QuadExt<Base, D>& v) {
  using Q = QuadExt<Base, D>;
  std::optional<Q> out;
  if (is_zero(v.b())) {
    if (auto r = exact_sqrt(v.a())) {
      out = Q(*r, Base(0));
    } else if (auto s = exact_sqrt(Base(v.a() / Base(D)))) {
      out = Q(Base(0), *s);
    }
  } else {
    Base disc = Base(v.a() * v.a()) - Base(Base(D) * Base(v.b() * v.b()));
    if (auto s = exact_sqrt(disc)) {
      for (int pm : {1, -1}) {
        Base x2 = Base(v.a() + Base(Base(pm) * *s)) / Base(2);
        if (auto x = exact_sqrt(x2); x && !is_zero(*x)) {
          out = Q(*x, Base(v.b() / Base(Base(2) * *x)));
          break;
        }
      }
    }
  }
  if constexpr (D > 0) {
    if (out && sign(*out) < 0) out = -*out;
  }
  return out;
}

namespace detail {

inline const char* radical_symbol(int d) {
  switch (d) {
    case -1:
      return "i";
    case 2:
      return "sqrt2";
    case 3:
      return "sqrt3";
    case 5:
      return "sqrt5";
    default:
      return "sqrt?";
  }
}

struct Term {
  Rational coeff;
  std::vector<int> radicals;  // outermost first
};

inline void collect_terms(const Rational& q, std::vector<int>& path, std::vector<Term>& out) {
  if (!is_zero(q)) out.push_back({q, path});
}

template <class Base, int D>
void collect_terms(const QuadExt<Base, D>& x, std::vector<int>& path, std::vector<Term>& out) {
  collect_terms(x.a(), path, out);
  path.push_back(D);
  collect_terms(x.b(), path, out);
  path.pop_back();
}

}  // namespace detail

/// Canonical text form, e.g. "1/2 - 3/4*sqrt2*i". Parsed back by parse_scalar.
template <class Base, int D>
std::string to_string(const QuadExt<Base, D>& x) {
  std::vector<detail::Term> terms;
  std::vector<int> path;
  detail::collect_terms(x, path, terms);
  if (terms.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : terms) {
    Rational c = t.coeff;
    if (!first) {
      s += sgn(c) < 0 ? " - " : " + ";
      if (sgn(c) < 0) c = -c;
    }
    first = false;
    s += c.get_str();
    for (auto it = t.radicals.rbegin(); it != t.radicals.rend(); ++it) {
      s += '*';
      s += detail::radical_symbol(*it);
    }
  }
  return s;
}

}  // namespace ptsym
