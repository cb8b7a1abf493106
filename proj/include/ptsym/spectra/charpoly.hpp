// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ptsym/core/errors.hpp"
#include "ptsym/exact/poly.hpp"
#include "ptsym/fock/ladder.hpp"
#include "ptsym/models/catalog.hpp"
#include "ptsym/spectra/block.hpp"

namespace ptsym {

inline constexpr std::size_t kCharPolyCap = 120;

/**
 * det(E·1 − H0 − g·W) with g = i·a and W = −i·v, stored as coefficients of E^k,
 * each an exact polynomial in g. Computed in the factorial-weighted (or G-orthogonal
 * adapted) basis, which is similar to the orthonormal one.
 */
struct CharPoly {
  std::string model;
  std::string irrep;  // empty for the full basis
  int max_shell = 0;
  std::vector<Poly<ExactScalar>> coeffs;  // coeffs[k] multiplies E^k; coeffs[n] = 1

  std::size_t dimension() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }

  /// True when some coefficient has a nonzero odd power of g.
  bool has_odd_g() const {
    for (const auto& c : coeffs) {
      for (std::size_t j = 1; j < c.coeffs().size(); j += 2) {
        if (!is_zero(c.coeffs()[j])) return true;
      }
    }
    return false;
  }

  /// Number of (E power, g power) pairs with odd g power and nonzero coefficient.
  std::size_t odd_g_terms() const {
    std::size_t n = 0;
    for (const auto& c : coeffs) {
      for (std::size_t j = 1; j < c.coeffs().size(); j += 2) n += is_zero(c.coeffs()[j]) ? 0 : 1;
    }
    return n;
  }

  /// Value at (E, g) for spot checks.
  ExactScalar evaluate(const ExactScalar& e, const ExactScalar& g) const {
    ExactScalar s(0);
    for (std::size_t k = coeffs.size(); k-- > 0;) s = s * e + coeffs[k].evaluate(g);
    return s;
  }
};

/// Row-sparse exact pencil H0 + g·W.
struct ExactPencil {
  struct Entry {
    std::size_t col;
    ExactScalar h0;
    ExactScalar w;
  };
  std::vector<std::vector<Entry>> rows;

  std::size_t size() const { return rows.size(); }
};

namespace detail {

inline ExactPencil pencil_from_columns(const SparseColumns& h0, const SparseColumns& v) {
  const ExactScalar minus_i = -imag_unit();
  std::vector<std::map<std::size_t, std::pair<ExactScalar, ExactScalar>>> rows(h0.size());
  for (std::size_t j = 0; j < h0.size(); ++j) {
    for (const auto& [i, c] : h0[j]) rows[i][j].first = c;
    for (const auto& [i, c] : v[j]) rows[i][j].second = c * minus_i;
  }
  ExactPencil p;
  p.rows.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (auto& [j, hw] : rows[i]) p.rows[i].push_back({j, hw.first, hw.second});
  }
  return p;
}

inline SparseColumns basis_columns(const OperatorPolynomial& op, const std::vector<FockProduct>& basis, int max_shell) {
  std::map<FockProduct, std::size_t> index;
  for (std::size_t k = 0; k < basis.size(); ++k) index.emplace(basis[k], k);
  SparseColumns cols(basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    for (const auto& [s, c] : apply_operator(op, {{basis[j], ExactScalar(1)}}, max_shell)) {
      if (auto it = index.find(s); it != index.end()) cols[j].emplace(it->second, c);
    }
  }
  return cols;
}

using PolyEntry = std::vector<ExactScalar>;  // coefficients in g, low to high

inline void axpy(PolyEntry& y, const ExactScalar& s, const PolyEntry& x, std::size_t shift) {
  if (is_zero(s)) return;
  if (y.size() < x.size() + shift) y.resize(x.size() + shift, ExactScalar(0));
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!is_zero(x[k])) y[k + shift] += s * x[k];
  }
}

}  // namespace detail

/**
 * Faddeev–LeVerrier recurrence over the exact ring: M₁ = 1, c_{n−k} = −tr(A M_k)/k,
 * M_{k+1} = A M_k + c_{n−k}·1, with A = H0 + g·W kept sparse so that each product
 * only shifts and scales polynomial entries.
 */
inline std::vector<Poly<ExactScalar>> faddeev_leverrier(const ExactPencil& a, std::size_t cap = kCharPolyCap) {
  const std::size_t n = a.size();
  if (n > cap) {
    throw UsageError("char_poly_exact: dimension " + std::to_string(n) + " exceeds the exact-computation cap " +
                     std::to_string(cap));
  }
  std::vector<Poly<ExactScalar>> c(n + 1);
  c[n] = Poly<ExactScalar>({ExactScalar(1)});
  if (n == 0) return c;
  std::vector<detail::PolyEntry> m(n * n);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = {ExactScalar(1)};
  std::vector<detail::PolyEntry> am(n * n);
  for (std::size_t k = 1; k <= n; ++k) {
    for (auto& e : am) e.clear();
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& ent : a.rows[i]) {
        for (std::size_t j = 0; j < n; ++j) {
          const auto& src = m[ent.col * n + j];
          if (src.empty()) continue;
          detail::axpy(am[i * n + j], ent.h0, src, 0);
          detail::axpy(am[i * n + j], ent.w, src, 1);
        }
      }
    }
    detail::PolyEntry tr;
    for (std::size_t i = 0; i < n; ++i) detail::axpy(tr, ExactScalar(1), am[i * n + i], 0);
    const ExactScalar inv_k = ExactScalar(ratio(-1, static_cast<long>(k)));
    for (auto& t : tr) t *= inv_k;
    c[n - k] = Poly<ExactScalar>(tr);
    if (k == n) break;
    m.swap(am);
    for (std::size_t i = 0; i < n; ++i) detail::axpy(m[i * n + i], ExactScalar(1), tr, 0);
  }
  return c;
}

/// Characteristic polynomial of the full truncated basis (shells ≤ max_shell).
inline CharPoly char_poly_exact(const ModelSpec& model, int max_shell, std::size_t cap = kCharPolyCap) {
  const auto basis = shell_basis(model.dimension, max_shell);
  if (basis.size() > cap) {
    throw UsageError("char_poly_exact: dimension " + std::to_string(basis.size()) +
                     " exceeds the exact-computation cap " + std::to_string(cap));
  }
  const auto pencil = detail::pencil_from_columns(detail::basis_columns(model.h0, basis, max_shell),
                                                  detail::basis_columns(model.v, basis, max_shell));
  return CharPoly{model.name, "", max_shell, faddeev_leverrier(pencil, cap)};
}

/// Characteristic polynomial of one (irrep, row) block.
inline CharPoly char_poly_exact(const ModelSpec& model, const std::string& irrep, int row, int max_shell,
                                std::size_t cap = kCharPolyCap) {
  const auto b = exact_block(model, irrep, row, max_shell);
  if (b->size() > cap) {
    throw UsageError("char_poly_exact: dimension " + std::to_string(b->size()) +
                     " exceeds the exact-computation cap " + std::to_string(cap));
  }
  return CharPoly{model.name, irrep, max_shell, faddeev_leverrier(detail::pencil_from_columns(b->h0, b->v), cap)};
}

/// Renders the polynomial as Σ (poly in g)·E^k, highest power of E first.
inline std::string to_string(const CharPoly& p) {
  std::string s;
  for (std::size_t k = p.coeffs.size(); k-- > 0;) {
    if (p.coeffs[k].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "[" + to_string(p.coeffs[k], "g") + "]";
    if (k >= 1) s += "*E";
    if (k >= 2) s += "^" + std::to_string(k);
  }
  return s.empty() ? "0" : s;
}

}  // namespace ptsym
