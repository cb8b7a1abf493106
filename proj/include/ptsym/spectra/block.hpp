// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ptsym/core/errors.hpp"
#include "ptsym/fock/ladder.hpp"
#include "ptsym/group/projection.hpp"
#include "ptsym/models/catalog.hpp"

namespace ptsym {

/// Column-sparse exact matrix: columns[j] maps row index → entry.
using SparseColumns = std::vector<std::map<std::size_t, ExactScalar>>;

/**
 * One (irrep, row) block of H(a) = h0 + a·v over shells ≤ max_shell.
 *
 * Entries are taken in the G-orthogonal adapted basis u_j: column j holds the
 * coefficients of op·u_j on u_i, i.e. (u_i, op u_j)/(u_i, u_i). This matrix is
 * similar to the orthonormal-basis block through diag(√norm2).
 */
struct ExactBlock {
  std::string model_key;
  std::string irrep;
  int row = 0;
  int max_shell = 0;
  std::vector<SymmetryAdaptedVector> basis;
  SparseColumns h0;
  SparseColumns v;

  std::size_t size() const { return basis.size(); }

  /// True when h0 is diagonal in the block (isotropic unperturbed part).
  bool h0_diagonal() const {
    for (std::size_t j = 0; j < h0.size(); ++j) {
      for (const auto& [i, c] : h0[j]) {
        if (i != j && !is_zero(c)) return false;
      }
    }
    return true;
  }
};

namespace detail {

/// Coefficients of w on the adapted vectors, using the state → vector index for candidates.
inline std::map<std::size_t, ExactScalar> expand_in_basis(const StateVector<ExactScalar>& w,
                                                          const std::vector<SymmetryAdaptedVector>& basis,
                                                          const std::map<FockProduct, std::vector<std::size_t>>& owners) {
  std::set<std::size_t> candidates;
  for (const auto& [s, c] : w) {
    if (auto it = owners.find(s); it != owners.end()) candidates.insert(it->second.begin(), it->second.end());
  }
  std::map<std::size_t, ExactScalar> col;
  for (std::size_t i : candidates) {
    ExactScalar c = g_inner(basis[i].components, w);
    if (is_zero(c)) continue;
    col.emplace(i, c / basis[i].norm2);
  }
  return col;
}

inline SparseColumns block_columns(const OperatorPolynomial& op, const std::vector<SymmetryAdaptedVector>& basis,
                                   int max_shell) {
  std::map<FockProduct, std::vector<std::size_t>> owners;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (const auto& [s, c] : basis[i].components) owners[s].push_back(i);
  }
  SparseColumns cols(basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    cols[j] = expand_in_basis(apply_operator(op, basis[j].components, max_shell), basis, owners);
  }
  return cols;
}

}  // namespace detail

/// Exact block of a catalog model; cached per (model, shape, irrep, row, max_shell).
inline std::shared_ptr<const ExactBlock> exact_block(const ModelSpec& model, const std::string& irrep, int row,
                                                     int max_shell) {
  static std::mutex mu;
  static std::map<std::tuple<std::string, std::string, int, int>, std::shared_ptr<const ExactBlock>> cache;
  const auto key = std::make_tuple(model.key(), irrep, row, max_shell);
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const CharacterTable table = model.table();
  if (!table.has_irrep(irrep)) {
    throw UsageError("irrep '" + irrep + "' not in group " + table.name() + " of model " + model.name);
  }
  auto b = std::make_shared<ExactBlock>();
  b->model_key = model.key();
  b->irrep = irrep;
  b->row = row;
  b->max_shell = max_shell;
  b->basis = adapted_basis(table, irrep, row, max_shell);
  b->h0 = detail::block_columns(model.h0, b->basis, max_shell);
  b->v = detail::block_columns(model.v, b->basis, max_shell);
  std::lock_guard lock(mu);
  return cache.emplace(key, std::move(b)).first->second;
}

/// Orthonormal-basis float matrices B0, BV with B(a) = B0 + a·BV.
struct FloatBlock {
  Eigen::MatrixXcd b0;
  Eigen::MatrixXcd bv;

  Eigen::MatrixXcd at(double a) const { return b0 + a * bv; }
};

inline FloatBlock float_block(const ExactBlock& b) {
  const auto n = static_cast<Eigen::Index>(b.size());
  std::vector<double> norms(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) norms[k] = std::sqrt(to_complex(b.basis[k].norm2).real());
  FloatBlock f{Eigen::MatrixXcd::Zero(n, n), Eigen::MatrixXcd::Zero(n, n)};
  auto fill = [&](const SparseColumns& cols, Eigen::MatrixXcd& m) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      for (const auto& [i, c] : cols[j]) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_complex(c) * (norms[i] / norms[j]);
      }
    }
  };
  fill(b.h0, f.b0);
  fill(b.v, f.bv);
  return f;
}

/**
 * Checks that op maps every interior adapted vector of (irrep, row) into the same
 * (irrep, row) subspace exactly, i.e. matrix elements to every other irrep and row vanish.
 * Returns the number of vectors checked; throws on the first leak.
 */
inline std::size_t check_block_closure(const OperatorPolynomial& op, const CharacterTable& table,
                                       const std::string& irrep, int row, int max_shell) {
  std::size_t checked = 0;
  for (const auto& u : adapted_basis(table, irrep, row, max_shell - op.degree())) {
    auto w = apply_operator(op, u.components);
    if (!(apply_row_projector(table, irrep, row, w) == w)) {
      throw std::logic_error("check_block_closure: " + irrep + " row " + std::to_string(row) +
                             " vector in shell " + std::to_string(u.shell) + " leaks into other irreps");
    }
    ++checked;
  }
  return checked;
}

}  // namespace ptsym
