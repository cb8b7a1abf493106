// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Sparse>

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ptsym/exact/matrix.hpp"
#include "ptsym/exact/scalar.hpp"
#include "ptsym/fock/fock_state.hpp"
#include "ptsym/fock/operator_polynomial.hpp"

namespace ptsym {

/**
 * Ladder algebra in the factorial-weighted basis |n) = √(n!)|n⟩, where
 * a†|n) = |n+1) and a|n) = n|n−1). Every matrix element of a polynomial in
 * q = (a+a†)/√2 and p = i(a†−a)/√2 is then an integer times (1/√2)^deg·i^k,
 * so exact arithmetic stays inside Q(√2, i). The normalized-basis element is
 * recovered as coeff·√(target!/source!).
 */
namespace detail {

/// (level, integer coefficient) pairs of (a+a†)^qa (a†−a)^pb |n).
using Ladder1D = std::vector<std::pair<int, long>>;

inline Ladder1D ladder_1d_uncached(int qa, int pb, int n) {
  std::map<int, long> v{{n, 1}};
  auto step = [&](int raise_sign) {
    std::map<int, long> w;
    for (const auto& [m, c] : v) {
      w[m + 1] += c;                                   // a†
      if (m > 0) w[m - 1] += raise_sign * c * m;        // ±a
    }
    std::erase_if(w, [](const auto& kv) { return kv.second == 0; });
    v = std::move(w);
  };
  for (int k = 0; k < pb; ++k) step(-1);
  for (int k = 0; k < qa; ++k) step(+1);
  return {v.begin(), v.end()};
}

inline const Ladder1D& ladder_1d(int qa, int pb, int n) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, Ladder1D> cache;
  std::lock_guard lock(mu);
  auto key = std::make_tuple(qa, pb, n);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, ladder_1d_uncached(qa, pb, n)).first;
  return it->second;
}

/// (1/√2)^deg · i^k as an exact scalar.
inline ExactScalar monomial_prefactor(int deg, int momentum_powers) {
  ExactScalar f(1);
  const ExactScalar half_root = sqrt2() / ExactScalar(2);
  for (int k = 0; k < deg; ++k) f *= half_root;
  for (int k = 0; k < momentum_powers % 4; ++k) f *= imag_unit();
  return f;
}

inline double monomial_prefactor_real(int deg) { return std::pow(std::sqrt(0.5), deg); }

inline std::complex<double> i_power(int k) {
  switch (k % 4) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
  }
}

/// Visits every (target state, integer weight) of the monomial's ladder action.
template <class F>
void for_each_ladder_term(const Monomial& m, const FockProduct& state, F&& visit) {
  const int dim = state.dimension();
  std::array<const Ladder1D*, kMaxDimension> parts{};
  for (int k = 0; k < dim; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    parts[uk] = &ladder_1d(m.q[uk], m.p[uk], state[k]);
    if (parts[uk]->empty()) return;
  }
  std::array<std::size_t, kMaxDimension> idx{};
  while (true) {
    std::array<int, kMaxDimension> occ{};
    mpz_class weight = 1;
    for (int k = 0; k < dim; ++k) {
      const auto uk = static_cast<std::size_t>(k);
      const auto& [level, c] = (*parts[uk])[idx[uk]];
      occ[uk] = level;
      weight *= c;
    }
    visit(FockProduct(dim, occ), weight);
    int k = dim - 1;
    while (k >= 0) {
      const auto uk = static_cast<std::size_t>(k);
      if (++idx[uk] < parts[uk]->size()) break;
      idx[uk] = 0;
      --k;
    }
    if (k < 0) break;
  }
}

}  // namespace detail

/// One coefficient of a ladder expansion with its normalized-basis amplitude coeff·√radicand.
struct Amplitude {
  ExactScalar coeff;  // factorial-weighted basis
  Rational radicand;  // target!/source!

  std::complex<double> normalized() const { return to_complex(coeff) * std::sqrt(to_double(radicand)); }

  /// Exact normalized amplitude when √radicand lies in the field.
  std::optional<ExactScalar> normalized_exact() const {
    if (auto r = exact_sqrt(RealScalar(radicand))) return coeff * ExactScalar(*r);
    return std::nullopt;
  }
};

using LadderExpansion = std::map<FockProduct, Amplitude>;

/// Applies op to a factorial-weighted vector; drops states above max_shell when given.
inline StateVector<ExactScalar> apply_operator(const OperatorPolynomial& op, const StateVector<ExactScalar>& v,
                                               std::optional<int> max_shell = std::nullopt) {
  StateVector<ExactScalar> out;
  for (const auto& m : op.terms()) {
    int ptotal = 0;
    for (int x : m.p) ptotal += x;
    const ExactScalar factor = m.coeff * detail::monomial_prefactor(m.degree(), ptotal);
    for (const auto& [state, value] : v) {
      if (state.dimension() != op.dimension()) throw std::invalid_argument("apply: dimension mismatch");
      const ExactScalar fv = factor * value;
      detail::for_each_ladder_term(m, state, [&](const FockProduct& target, const mpz_class& w) {
        if (max_shell && target.shell() > *max_shell) return;
        add_term(out, target, ExactScalar(fv * ExactScalar(Rational(w))));
      });
    }
  }
  return out;
}

/// op|state⟩ with exact factorial-weighted coefficients and normalized amplitudes.
inline LadderExpansion ladder_apply(const OperatorPolynomial& op, const FockProduct& state) {
  StateVector<ExactScalar> v{{state, ExactScalar(1)}};
  LadderExpansion out;
  const Rational source_w = state.factorial_weight();
  for (auto& [target, coeff] : apply_operator(op, v)) {
    out.emplace(target, Amplitude{coeff, Rational(target.factorial_weight() / source_w)});
  }
  return out;
}

inline void check_unique_basis(const std::vector<FockProduct>& basis) {
  std::map<FockProduct, std::size_t> seen;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (!seen.emplace(basis[k], k).second) throw std::invalid_argument("assemble_matrix: duplicate basis state");
  }
}

/// Exact matrix (i,j) = (basis_i| op |basis_j) in the factorial-weighted basis; similar to
/// the normalized matrix via diag(√n!). Couplings leaving the basis are dropped.
inline DenseMatrix<ExactScalar> assemble_matrix(const OperatorPolynomial& op, const std::vector<FockProduct>& basis) {
  check_unique_basis(basis);
  std::map<FockProduct, std::size_t> index;
  for (std::size_t k = 0; k < basis.size(); ++k) index.emplace(basis[k], k);
  DenseMatrix<ExactScalar> h(basis.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    for (const auto& [target, c] : apply_operator(op, {{basis[j], ExactScalar(1)}})) {
      if (auto it = index.find(target); it != index.end()) h(it->second, j) = c;
    }
  }
  return h;
}

/// Normalized-basis matrix element ⟨basis_i| op |basis_j⟩ from the exact factorial-weighted matrix.
inline DenseMatrix<ExactScalar> normalized_exact(const DenseMatrix<ExactScalar>& h,
                                                 const std::vector<FockProduct>& basis) {
  DenseMatrix<ExactScalar> out(h.rows(), h.cols());
  for (std::size_t i = 0; i < h.rows(); ++i) {
    for (std::size_t j = 0; j < h.cols(); ++j) {
      if (is_zero(h(i, j))) continue;
      auto r = exact_sqrt(RealScalar(Rational(basis[i].factorial_weight() / basis[j].factorial_weight())));
      if (!r) throw std::domain_error("normalized_exact: radical outside the field");
      out(i, j) = h(i, j) * ExactScalar(*r);
    }
  }
  return out;
}

using SparseComplex = Eigen::SparseMatrix<std::complex<double>, Eigen::ColMajor>;

/// Floating-point matrix of op in the normalized Fock basis; out-of-basis couplings dropped.
inline SparseComplex assemble_normalized(const OperatorPolynomial& op, const std::vector<FockProduct>& basis) {
  check_unique_basis(basis);
  std::map<FockProduct, int> index;
  for (std::size_t k = 0; k < basis.size(); ++k) index.emplace(basis[k], static_cast<int>(k));
  std::vector<Eigen::Triplet<std::complex<double>>> triplets;
  for (const auto& m : op.terms()) {
    int ptotal = 0;
    for (int x : m.p) ptotal += x;
    const std::complex<double> factor =
        to_complex(m.coeff) * detail::monomial_prefactor_real(m.degree()) * detail::i_power(ptotal);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      detail::for_each_ladder_term(m, basis[j], [&](const FockProduct& target, const mpz_class& w) {
        auto it = index.find(target);
        if (it == index.end()) return;
        const double amp = w.get_d() * normalization_ratio(target, basis[j]);
        triplets.emplace_back(it->second, static_cast<int>(j), factor * amp);
      });
    }
  }
  const auto n = static_cast<Eigen::Index>(basis.size());
  SparseComplex h(n, n);
  h.setFromTriplets(triplets.begin(), triplets.end());
  h.prune(std::complex<double>(0.0, 0.0));
  return h;
}

}  // namespace ptsym
