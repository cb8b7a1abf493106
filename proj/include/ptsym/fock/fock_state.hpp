// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptsym/exact/rational.hpp"

namespace ptsym {

inline constexpr int kMaxDimension = 3;

/**
 * Occupation numbers (n_x, n_y[, n_z]) of a product harmonic-oscillator state.
 *
 * Ordering is shell-major, then lexicographic in the occupations, which is the
 * fixed basis order used for every matrix in the library.
 */
class FockProduct {
 public:
  FockProduct() = default;
  FockProduct(std::initializer_list<int> occ) {
    if (occ.size() < 1 || occ.size() > kMaxDimension) throw std::invalid_argument("FockProduct: dimension must be 1..3");
    dim_ = static_cast<int>(occ.size());
    int k = 0;
    for (int n : occ) {
      if (n < 0) throw std::invalid_argument("FockProduct: negative occupation");
      occ_[static_cast<std::size_t>(k++)] = n;
    }
  }
  FockProduct(int dimension, const std::array<int, kMaxDimension>& occ) : occ_(occ), dim_(dimension) {
    if (dimension < 1 || dimension > kMaxDimension) throw std::invalid_argument("FockProduct: dimension must be 1..3");
    for (int k = dimension; k < kMaxDimension; ++k) occ_[static_cast<std::size_t>(k)] = 0;
  }

  int dimension() const { return dim_; }
  int operator[](int axis) const { return occ_[static_cast<std::size_t>(axis)]; }
  const std::array<int, kMaxDimension>& occupations() const { return occ_; }

  int shell() const {
    int m = 0;
    for (int k = 0; k < dim_; ++k) m += occ_[static_cast<std::size_t>(k)];
    return m;
  }

  FockProduct with(int axis, int value) const {
    FockProduct r = *this;
    r.occ_[static_cast<std::size_t>(axis)] = value;
    return r;
  }

  /// Π n_k!, the squared norm of the factorial-weighted state |n).
  Rational factorial_weight() const {
    mpz_class w = 1;
    for (int k = 0; k < dim_; ++k) {
      mpz_class f;
      mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(occ_[static_cast<std::size_t>(k)]));
      w *= f;
    }
    return Rational(w);
  }

  /// √(Π n_k!) in floating point.
  double sqrt_factorial() const {
    double r = 1.0;
    for (int k = 0; k < dim_; ++k) {
      for (int j = 2; j <= occ_[static_cast<std::size_t>(k)]; ++j) r *= std::sqrt(static_cast<double>(j));
    }
    return r;
  }

  friend std::strong_ordering operator<=>(const FockProduct& x, const FockProduct& y) {
    if (auto c = x.dim_ <=> y.dim_; c != 0) return c;
    if (auto c = x.shell() <=> y.shell(); c != 0) return c;
    return x.occ_ <=> y.occ_;
  }
  friend bool operator==(const FockProduct& x, const FockProduct& y) = default;

  friend std::ostream& operator<<(std::ostream& os, const FockProduct& s) {
    os << '|';
    for (int k = 0; k < s.dim_; ++k) os << (k ? "," : "") << s[k];
    return os << '>';
  }

 private:
  std::array<int, kMaxDimension> occ_{};
  int dim_ = 0;
};

/// √(target!/source!) in floating point; the factor converting a factorial-weighted
/// coefficient into a normalized-basis matrix element.
inline double normalization_ratio(const FockProduct& target, const FockProduct& source) {
  double r = 1.0;
  for (int k = 0; k < target.dimension(); ++k) {
    int hi = target[k], lo = source[k];
    const bool up = hi >= lo;
    if (!up) std::swap(hi, lo);
    double f = 1.0;
    for (int j = lo + 1; j <= hi; ++j) f *= std::sqrt(static_cast<double>(j));
    r = up ? r * f : r / f;
  }
  return r;
}

/// All states of one shell in lexicographic order.
inline std::vector<FockProduct> shell_states(int dimension, int shell) {
  if (shell < 0) throw std::invalid_argument("shell_states: negative shell");
  std::vector<FockProduct> out;
  std::array<int, kMaxDimension> occ{};
  if (dimension == 1) {
    occ[0] = shell;
    out.emplace_back(1, occ);
  } else if (dimension == 2) {
    for (int m = 0; m <= shell; ++m) {
      occ = {m, shell - m, 0};
      out.emplace_back(2, occ);
    }
  } else if (dimension == 3) {
    for (int m = 0; m <= shell; ++m) {
      for (int n = 0; n <= shell - m; ++n) {
        occ = {m, n, shell - m - n};
        out.emplace_back(3, occ);
      }
    }
  } else {
    throw std::invalid_argument("shell_states: dimension must be 1..3");
  }
  return out;
}

/// Every state with shell ≤ max_shell, shell-major then lexicographic.
inline std::vector<FockProduct> shell_basis(int dimension, int max_shell) {
  if (max_shell < 0) throw std::invalid_argument("shell_basis: max_shell must be >= 0");
  std::vector<FockProduct> out;
  for (int m = 0; m <= max_shell; ++m) {
    auto s = shell_states(dimension, m);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

/// Sparse vector over the factorial-weighted Fock basis, zeros never stored.
template <class S>
using StateVector = std::map<FockProduct, S>;

template <class S>
void add_term(StateVector<S>& dst, const FockProduct& state, const S& value) {
  if (is_zero(value)) return;
  auto [it, inserted] = dst.try_emplace(state, value);
  if (!inserted) {
    it->second += value;
    if (is_zero(it->second)) dst.erase(it);
  }
}

template <class S>
void add_scaled(StateVector<S>& dst, const StateVector<S>& src, const S& factor) {
  if (is_zero(factor)) return;
  for (const auto& [state, value] : src) add_term(dst, state, S(value * factor));
}

template <class S>
StateVector<S> scaled(const StateVector<S>& v, const S& factor) {
  StateVector<S> out;
  add_scaled(out, v, factor);
  return out;
}

}  // namespace ptsym
