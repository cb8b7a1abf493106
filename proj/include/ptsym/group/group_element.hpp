// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ptsym/exact/scalar.hpp"
#include "ptsym/fock/fock_state.hpp"

namespace ptsym {

using CoordMatrix = std::array<std::array<RealScalar, kMaxDimension>, kMaxDimension>;

/**
 * Orthogonal coordinate map r → M r, optionally followed by time reversal.
 *
 * On oscillator states the map acts as a†_i → Σ_j M_ji a†_j; time reversal
 * conjugates coefficients. Products compose as (M₁M₂, t₁ xor t₂).
 */
class GroupElement {
 public:
  GroupElement() = default;
  GroupElement(int dimension, const CoordMatrix& m, bool time_reversal = false, std::string name = {})
      : dim_(dimension), m_(m), time_reversal_(time_reversal), name_(std::move(name)) {
    if (dimension < 1 || dimension > kMaxDimension) throw std::invalid_argument("GroupElement: dimension must be 1..3");
    for (int i = 0; i < kMaxDimension; ++i) {
      for (int j = 0; j < kMaxDimension; ++j) {
        if ((i >= dimension || j >= dimension) && !is_zero(entry(i, j))) {
          throw std::invalid_argument("GroupElement: entries outside the dimension must vanish");
        }
      }
    }
    if (!is_orthogonal()) throw std::invalid_argument("GroupElement: coordinate map is not orthogonal");
  }

  /// Builds from integer-and-radical rows, e.g. {{"-1/2","-1/2*sqrt3"},{"1/2*sqrt3","-1/2"}}.
  static GroupElement from_rows(const std::vector<std::vector<std::string>>& rows, bool time_reversal = false,
                                std::string name = {}) {
    const int dim = static_cast<int>(rows.size());
    CoordMatrix m{};
    for (int i = 0; i < dim; ++i) {
      if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != dim) {
        throw std::invalid_argument("GroupElement: matrix must be square");
      }
      for (int j = 0; j < dim; ++j) {
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            parse_real_scalar(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      }
    }
    return GroupElement(dim, m, time_reversal, std::move(name));
  }

  static GroupElement identity(int dimension) {
    CoordMatrix m{};
    for (int k = 0; k < dimension; ++k) m[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] = RealScalar(1);
    return GroupElement(dimension, m, false, "E");
  }

  int dimension() const { return dim_; }
  bool time_reversal() const { return time_reversal_; }
  bool is_antiunitary() const { return time_reversal_; }
  const std::string& name() const { return name_; }
  const CoordMatrix& matrix() const { return m_; }
  const RealScalar& entry(int i, int j) const { return m_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }

  GroupElement named(std::string name) const {
    GroupElement g = *this;
    g.name_ = std::move(name);
    return g;
  }

  /// Same coordinate map with the time-reversal flag set.
  GroupElement with_time_reversal(std::string name = {}) const {
    GroupElement g = *this;
    g.time_reversal_ = !time_reversal_;
    g.name_ = std::move(name);
    return g;
  }

  RealScalar trace() const {
    RealScalar t(0);
    for (int k = 0; k < dim_; ++k) t += entry(k, k);
    return t;
  }

  RealScalar determinant() const {
    if (dim_ == 1) return entry(0, 0);
    if (dim_ == 2) return entry(0, 0) * entry(1, 1) - entry(0, 1) * entry(1, 0);
    return entry(0, 0) * (entry(1, 1) * entry(2, 2) - entry(1, 2) * entry(2, 1)) -
           entry(0, 1) * (entry(1, 0) * entry(2, 2) - entry(1, 2) * entry(2, 0)) +
           entry(0, 2) * (entry(1, 0) * entry(2, 1) - entry(1, 1) * entry(2, 0));
  }

  bool is_orthogonal() const {
    for (int i = 0; i < dim_; ++i) {
      for (int j = 0; j < dim_; ++j) {
        RealScalar s(0);
        for (int k = 0; k < dim_; ++k) s += entry(k, i) * entry(k, j);
        if (!(s == RealScalar(i == j ? 1 : 0))) return false;
      }
    }
    return true;
  }

  /// True when every row and column holds a single ±1.
  bool is_signed_permutation() const {
    for (int i = 0; i < dim_; ++i) {
      int nonzero = 0;
      for (int j = 0; j < dim_; ++j) {
        const RealScalar& e = entry(i, j);
        if (is_zero(e)) continue;
        if (!(e == RealScalar(1) || e == RealScalar(-1))) return false;
        ++nonzero;
      }
      if (nonzero != 1) return false;
    }
    return true;
  }

  GroupElement inverse() const {
    CoordMatrix t{};
    for (int i = 0; i < dim_; ++i) {
      for (int j = 0; j < dim_; ++j) t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = entry(j, i);
    }
    GroupElement g;
    g.dim_ = dim_;
    g.m_ = t;
    g.time_reversal_ = time_reversal_;
    return g;
  }

  /// (M₁,t₁)∘(M₂,t₂) = (M₁M₂, t₁ xor t₂).
  friend GroupElement compose(const GroupElement& x, const GroupElement& y) {
    if (x.dim_ != y.dim_) throw std::invalid_argument("compose: dimension mismatch");
    CoordMatrix r{};
    for (int i = 0; i < x.dim_; ++i) {
      for (int j = 0; j < x.dim_; ++j) {
        RealScalar s(0);
        for (int k = 0; k < x.dim_; ++k) {
          if (is_zero(x.entry(i, k)) || is_zero(y.entry(k, j))) continue;
          s += x.entry(i, k) * y.entry(k, j);
        }
        r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s;
      }
    }
    GroupElement g;
    g.dim_ = x.dim_;
    g.m_ = r;
    g.time_reversal_ = x.time_reversal_ != y.time_reversal_;
    return g;
  }
  friend GroupElement operator*(const GroupElement& x, const GroupElement& y) { return compose(x, y); }

  /// Equality of the action (names ignored).
  friend bool operator==(const GroupElement& x, const GroupElement& y) {
    return x.dim_ == y.dim_ && x.time_reversal_ == y.time_reversal_ && x.m_ == y.m_;
  }

  /// Canonical text key of the action, used for lookups.
  std::string key() const {
    std::string s = std::to_string(dim_) + (time_reversal_ ? "T" : "U");
    for (int i = 0; i < dim_; ++i) {
      for (int j = 0; j < dim_; ++j) s += "|" + to_string(entry(i, j));
    }
    return s;
  }

 private:
  int dim_ = 0;
  CoordMatrix m_{};
  bool time_reversal_ = false;
  std::string name_;
};

namespace detail {

using Monomial3 = std::array<int, kMaxDimension>;
using CreationPoly = std::map<Monomial3, RealScalar>;

inline CreationPoly multiply(const CreationPoly& x, const CreationPoly& y) {
  CreationPoly r;
  for (const auto& [mx, cx] : x) {
    for (const auto& [my, cy] : y) {
      Monomial3 m{};
      for (std::size_t k = 0; k < kMaxDimension; ++k) m[k] = mx[k] + my[k];
      auto [it, inserted] = r.try_emplace(m, cx * cy);
      if (!inserted) it->second += cx * cy;
    }
  }
  std::erase_if(r, [](const auto& kv) { return is_zero(kv.second); });
  return r;
}

/// Image of a†_axis: Σ_j M_j,axis a†_j.
inline CreationPoly image_of_creation(const GroupElement& g, int axis) {
  CreationPoly r;
  for (int j = 0; j < g.dimension(); ++j) {
    const RealScalar& c = g.entry(j, axis);
    if (is_zero(c)) continue;
    Monomial3 m{};
    m[static_cast<std::size_t>(j)] = 1;
    r.emplace(m, c);
  }
  return r;
}

}  // namespace detail

/**
 * g|state) in the factorial-weighted basis, where |n) = Π (a†_i)^{n_i}|0):
 * the image is the expanded product Π (Σ_j M_ji a†_j)^{n_i}.
 */
inline StateVector<ExactScalar> act_on_state(const GroupElement& g, const FockProduct& state) {
  if (g.dimension() != state.dimension()) throw std::invalid_argument("act_on_state: dimension mismatch");
  const int dim = g.dimension();
  StateVector<ExactScalar> out;
  if (g.is_signed_permutation()) {
    std::array<int, kMaxDimension> occ{};
    int sign = 1;
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        const RealScalar& c = g.entry(j, i);
        if (is_zero(c)) continue;
        occ[static_cast<std::size_t>(j)] = state[i];
        if (c == RealScalar(-1) && (state[i] % 2) != 0) sign = -sign;
      }
    }
    out.emplace(FockProduct(dim, occ), ExactScalar(sign));
    return out;
  }
  detail::CreationPoly acc{{detail::Monomial3{}, RealScalar(1)}};
  for (int i = 0; i < dim; ++i) {
    const auto image = detail::image_of_creation(g, i);
    for (int k = 0; k < state[i]; ++k) acc = detail::multiply(acc, image);
  }
  for (auto& [m, c] : acc) out.emplace(FockProduct(dim, m), ExactScalar(c));
  return out;
}

/// g applied to a factorial-weighted vector; antiunitary elements conjugate the input coefficients.
inline StateVector<ExactScalar> act_on_vector(const GroupElement& g, const StateVector<ExactScalar>& v) {
  StateVector<ExactScalar> out;
  for (const auto& [state, value] : v) {
    const ExactScalar c = g.time_reversal() ? conj(value) : value;
    for (const auto& [target, w] : act_on_state(g, state)) add_term(out, target, ExactScalar(c * w));
  }
  return out;
}

}  // namespace ptsym
