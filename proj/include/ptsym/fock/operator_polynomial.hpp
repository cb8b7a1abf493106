// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ptsym/exact/scalar.hpp"
#include "ptsym/fock/fock_state.hpp"

namespace ptsym {

/// coeff · Π_k q_k^{q[k]} p_k^{p[k]}; within one coordinate q stands left of p.
struct Monomial {
  ExactScalar coeff;
  std::array<int, kMaxDimension> q{};
  std::array<int, kMaxDimension> p{};

  int degree() const {
    int d = 0;
    for (int k = 0; k < kMaxDimension; ++k) d += q[static_cast<std::size_t>(k)] + p[static_cast<std::size_t>(k)];
    return d;
  }
  std::pair<std::array<int, kMaxDimension>, std::array<int, kMaxDimension>> powers() const { return {q, p}; }
};

/**
 * Polynomial in positions and momenta with exact coefficients.
 *
 * Kept canonical: monomials sorted by their power tuples, like terms merged,
 * zero terms dropped, so two equal operators compare equal syntactically.
 */
class OperatorPolynomial {
 public:
  OperatorPolynomial() = default;
  explicit OperatorPolynomial(int dimension) : dim_(dimension) {
    if (dimension < 1 || dimension > kMaxDimension) throw std::invalid_argument("OperatorPolynomial: dimension must be 1..3");
  }
  OperatorPolynomial(int dimension, std::vector<Monomial> terms) : OperatorPolynomial(dimension) {
    terms_ = std::move(terms);
    canonicalize();
  }

  static OperatorPolynomial constant(int dimension, const ExactScalar& c) {
    return OperatorPolynomial(dimension, {Monomial{c, {}, {}}});
  }
  static OperatorPolynomial position(int dimension, int axis, int power = 1) {
    check_axis(dimension, axis);
    Monomial m{ExactScalar(1), {}, {}};
    m.q[static_cast<std::size_t>(axis)] = power;
    return OperatorPolynomial(dimension, {m});
  }
  static OperatorPolynomial momentum(int dimension, int axis, int power = 1) {
    check_axis(dimension, axis);
    Monomial m{ExactScalar(1), {}, {}};
    m.p[static_cast<std::size_t>(axis)] = power;
    return OperatorPolynomial(dimension, {m});
  }

  int dimension() const { return dim_; }
  const std::vector<Monomial>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Highest total degree among the monomials; 0 for constants or the zero operator.
  int degree() const {
    int d = 0;
    for (const auto& m : terms_) d = std::max(d, m.degree());
    return d;
  }

  OperatorPolynomial& operator+=(const OperatorPolynomial& y) {
    check_same(y);
    terms_.insert(terms_.end(), y.terms_.begin(), y.terms_.end());
    canonicalize();
    return *this;
  }
  OperatorPolynomial& operator-=(const OperatorPolynomial& y) { return *this += y * ExactScalar(-1); }

  friend OperatorPolynomial operator+(OperatorPolynomial x, const OperatorPolynomial& y) { return x += y; }
  friend OperatorPolynomial operator-(OperatorPolynomial x, const OperatorPolynomial& y) { return x -= y; }

  friend OperatorPolynomial operator*(OperatorPolynomial x, const ExactScalar& c) {
    for (auto& m : x.terms_) m.coeff *= c;
    x.canonicalize();
    return x;
  }
  friend OperatorPolynomial operator*(const ExactScalar& c, OperatorPolynomial x) { return std::move(x) * c; }

  /**
   * Operator product. Only products that need no reordering are accepted:
   * per coordinate, a momentum power on the left may not meet a position power
   * on the right (that would need the commutator [q, p] = i).
   */
  friend OperatorPolynomial operator*(const OperatorPolynomial& x, const OperatorPolynomial& y) {
    x.check_same(y);
    std::vector<Monomial> out;
    for (const auto& mx : x.terms_) {
      for (const auto& my : y.terms_) {
        Monomial m{mx.coeff * my.coeff, {}, {}};
        for (std::size_t k = 0; k < kMaxDimension; ++k) {
          if (mx.p[k] > 0 && my.q[k] > 0) {
            throw std::invalid_argument("OperatorPolynomial: product needs reordering of p before q");
          }
          m.q[k] = mx.q[k] + my.q[k];
          m.p[k] = mx.p[k] + my.p[k];
        }
        out.push_back(std::move(m));
      }
    }
    return OperatorPolynomial(x.dim_, std::move(out));
  }

  /// Complex-conjugates every coefficient (not the operator adjoint).
  OperatorPolynomial conjugated_coefficients() const {
    OperatorPolynomial r = *this;
    for (auto& m : r.terms_) m.coeff = conj(m.coeff);
    return r;
  }

  /// T O T⁻¹ for complex conjugation T in the position representation: coefficients
  /// conjugated and p → −p.
  OperatorPolynomial time_reversed() const {
    OperatorPolynomial r = *this;
    for (auto& m : r.terms_) {
      int ptotal = 0;
      for (int x : m.p) ptotal += x;
      m.coeff = ptotal % 2 == 0 ? conj(m.coeff) : ExactScalar(-conj(m.coeff));
    }
    return r;
  }

  friend bool operator==(const OperatorPolynomial& x, const OperatorPolynomial& y) {
    if (x.dim_ != y.dim_ || x.terms_.size() != y.terms_.size()) return false;
    for (std::size_t k = 0; k < x.terms_.size(); ++k) {
      if (x.terms_[k].q != y.terms_[k].q || x.terms_[k].p != y.terms_[k].p || !(x.terms_[k].coeff == y.terms_[k].coeff)) {
        return false;
      }
    }
    return true;
  }

 private:
  static void check_axis(int dimension, int axis) {
    if (axis < 0 || axis >= dimension) throw std::invalid_argument("OperatorPolynomial: axis out of range");
  }
  void check_same(const OperatorPolynomial& y) const {
    if (dim_ != y.dim_) throw std::invalid_argument("OperatorPolynomial: dimension mismatch");
  }

  void canonicalize() {
    std::stable_sort(terms_.begin(), terms_.end(),
                     [](const Monomial& a, const Monomial& b) { return a.powers() < b.powers(); });
    std::vector<Monomial> merged;
    for (auto& m : terms_) {
      if (!merged.empty() && merged.back().powers() == m.powers()) {
        merged.back().coeff += m.coeff;
      } else {
        merged.push_back(std::move(m));
      }
    }
    std::erase_if(merged, [](const Monomial& m) { return is_zero(m.coeff); });
    terms_ = std::move(merged);
  }

  int dim_ = 0;
  std::vector<Monomial> terms_;
};

}  // namespace ptsym
