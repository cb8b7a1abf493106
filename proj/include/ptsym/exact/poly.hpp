// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ptsym/exact/rational.hpp"

namespace ptsym {

namespace detail {
template <class T>
bool coeff_is_zero(const T& c) {
  return is_zero(c);
}
}  // namespace detail

/// Dense univariate polynomial, coefficients stored low degree first.
template <class T>
class Poly {
 public:
  Poly() = default;
  Poly(T c) : coeffs_{std::move(c)} { trim(); }  // NOLINT(google-explicit-constructor)
  explicit Poly(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  /// The monomial c·t^k.
  static Poly monomial(T c, std::size_t k) {
    std::vector<T> v(k + 1, T(0));
    v[k] = std::move(c);
    return Poly(std::move(v));
  }

  /// Degree; −1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<T>& coeffs() const { return coeffs_; }

  T coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : T(0); }

  template <class U>
  U evaluate(const U& t) const {
    U acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + U(*it);
    return acc;
  }

  Poly& operator+=(const Poly& y) {
    if (y.coeffs_.size() > coeffs_.size()) coeffs_.resize(y.coeffs_.size(), T(0));
    for (std::size_t k = 0; k < y.coeffs_.size(); ++k) coeffs_[k] += y.coeffs_[k];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& y) {
    if (y.coeffs_.size() > coeffs_.size()) coeffs_.resize(y.coeffs_.size(), T(0));
    for (std::size_t k = 0; k < y.coeffs_.size(); ++k) coeffs_[k] -= y.coeffs_[k];
    trim();
    return *this;
  }
  Poly operator-() const {
    Poly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend Poly operator+(Poly x, const Poly& y) { return x += y; }
  friend Poly operator-(Poly x, const Poly& y) { return x -= y; }
  friend Poly operator*(const Poly& x, const Poly& y) {
    if (x.is_zero() || y.is_zero()) return Poly();
    std::vector<T> out(x.coeffs_.size() + y.coeffs_.size() - 1, T(0));
    for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
      if (detail::coeff_is_zero(x.coeffs_[i])) continue;
      for (std::size_t j = 0; j < y.coeffs_.size(); ++j) {
        if (detail::coeff_is_zero(y.coeffs_[j])) continue;
        out[i + j] += x.coeffs_[i] * y.coeffs_[j];
      }
    }
    return Poly(std::move(out));
  }
  Poly& operator*=(const Poly& y) { return *this = *this * y; }

  /// Multiplies every coefficient by a scalar.
  Poly scaled(const T& s) const {
    Poly r = *this;
    for (auto& c : r.coeffs_) c *= s;
    r.trim();
    return r;
  }

  friend bool operator==(const Poly& x, const Poly& y) { return x.coeffs_ == y.coeffs_; }

 private:
  void trim() {
    while (!coeffs_.empty() && detail::coeff_is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<T> coeffs_;
};

template <class T>
bool is_zero(const Poly<T>& p) {
  return p.is_zero();
}

/// Renders with the given variable name, highest degree first.
template <class T>
std::string to_string(const Poly<T>& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::string s;
  for (int k = p.degree(); k >= 0; --k) {
    const T& c = p.coeffs()[static_cast<std::size_t>(k)];
    if (is_zero(c)) continue;
    if (!s.empty()) s += " + ";
    s += "(" + to_string(c) + ")";
    if (k >= 1) s += "*" + var;
    if (k >= 2) s += "^" + std::to_string(k);
  }
  return s;
}

}  // namespace ptsym
