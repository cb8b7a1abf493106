// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cctype>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ptsym/exact/quad_ext.hpp"
#include "ptsym/exact/rational.hpp"

namespace ptsym {

/// Q(√2): every real ladder matrix element in the factorial-weighted basis.
using RealQ2 = QuadExt<Rational, 2>;
/// Q(√2, √3): adds the C₃ rotation entries.
using RealScalar = QuadExt<RealQ2, 3>;
/// Q(√2, √3, i): the exact scalar for Hamiltonians, vectors and series.
using ExactScalar = QuadExt<RealScalar, -1>;

inline const ExactScalar& imag_unit() {
  static const ExactScalar i = ExactScalar::root();
  return i;
}
inline ExactScalar sqrt2() { return ExactScalar(RealScalar(RealQ2::root())); }
inline ExactScalar sqrt3() { return ExactScalar(RealScalar::root()); }

inline const RealScalar& real_part(const ExactScalar& z) { return z.a(); }
inline const RealScalar& imag_part(const ExactScalar& z) { return z.b(); }
inline bool is_real(const ExactScalar& z) { return is_zero(z.b()); }

/// True when the element lies in Q (no radicals, no imaginary part).
inline bool is_rational(const ExactScalar& z) {
  return is_zero(z.b()) && is_zero(z.a().b()) && is_zero(z.a().a().b());
}
inline const Rational& rational_value(const ExactScalar& z) { return z.a().a().a(); }

/**
 * Parses the canonical text form written by to_string: a signed sum of
 * products of a rational literal and the symbols i, sqrt2, sqrt3, sqrt6.
 */
inline ExactScalar parse_scalar(std::string_view text) {
  auto factor_value = [&](std::string_view f) -> ExactScalar {
    if (f == "i") return imag_unit();
    if (f == "sqrt2") return sqrt2();
    if (f == "sqrt3") return sqrt3();
    if (f == "sqrt6") return sqrt2() * sqrt3();
    return ExactScalar(parse_rational(f));
  };
  auto term_value = [&](std::string_view t) -> ExactScalar {
    ExactScalar v(1);
    std::size_t start = 0;
    while (start <= t.size()) {
      std::size_t star = t.find('*', start);
      std::string_view f = t.substr(start, star == std::string_view::npos ? std::string_view::npos : star - start);
      if (f.empty()) throw std::invalid_argument("empty factor in scalar literal: " + std::string(text));
      v *= factor_value(f);
      if (star == std::string_view::npos) break;
      start = star + 1;
    }
    return v;
  };

  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  }
  if (compact.empty()) throw std::invalid_argument("empty scalar literal");
  ExactScalar total(0);
  std::size_t pos = 0;
  int sgn_next = 1;
  if (compact[0] == '+' || compact[0] == '-') {
    sgn_next = compact[0] == '-' ? -1 : 1;
    pos = 1;
  }
  std::size_t term_start = pos;
  for (std::size_t k = pos; k <= compact.size(); ++k) {
    const bool at_end = k == compact.size();
    const bool is_sep = !at_end && (compact[k] == '+' || compact[k] == '-') && k > term_start &&
                        !((compact[k - 1] == 'e' || compact[k - 1] == 'E') && k >= 2 &&
                          std::isdigit(static_cast<unsigned char>(compact[k - 2])));
    if (at_end || is_sep) {
      std::string_view term(compact.data() + term_start, k - term_start);
      if (term.empty()) throw std::invalid_argument("empty term in scalar literal: " + std::string(text));
      ExactScalar t = term_value(term);
      total += sgn_next > 0 ? t : -t;
      if (!at_end) sgn_next = compact[k] == '-' ? -1 : 1;
      term_start = k + 1;
    }
  }
  return total;
}

inline RealScalar parse_real_scalar(std::string_view text) {
  ExactScalar z = parse_scalar(text);
  if (!is_real(z)) throw std::invalid_argument("expected a real scalar: " + std::string(text));
  return z.a();
}

}  // namespace ptsym
