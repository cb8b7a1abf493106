// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ptsym/fock/ladder.hpp"
#include "ptsym/group/character_table.hpp"

namespace ptsym {

/// G-metric inner product (u, v) = Σ conj(u_k) v_k n_k! of factorial-weighted vectors,
/// equal to the ordinary inner product of the normalized states.
inline ExactScalar g_inner(const StateVector<ExactScalar>& u, const StateVector<ExactScalar>& v) {
  ExactScalar s(0);
  auto iu = u.begin();
  auto iv = v.begin();
  while (iu != u.end() && iv != v.end()) {
    if (iu->first < iv->first) {
      ++iu;
    } else if (iv->first < iu->first) {
      ++iv;
    } else {
      s += conj(iu->second) * iv->second * ExactScalar(iu->first.factorial_weight());
      ++iu;
      ++iv;
    }
  }
  return s;
}

inline ExactScalar g_norm2(const StateVector<ExactScalar>& v) { return g_inner(v, v); }

/// Normalized-basis components of a factorial-weighted vector (not renormalized).
inline std::vector<std::pair<FockProduct, std::complex<double>>> to_normalized_components(
    const StateVector<ExactScalar>& v) {
  std::vector<std::pair<FockProduct, std::complex<double>>> out;
  for (const auto& [s, c] : v) out.emplace_back(s, to_complex(c) * s.sqrt_factorial());
  return out;
}

/**
 * A vector of one shell transforming as one row of one irrep, stored with
 * factorial-weighted components. Unit normalization needs √norm2, so it is
 * applied in floating point; normalized_exact() reports whether it is exact.
 */
struct SymmetryAdaptedVector {
  std::string irrep;
  int row = 0;
  int shell = 0;
  StateVector<ExactScalar> components;
  ExactScalar norm2;

  /// Unit-normalized components in the normalized Fock basis.
  std::vector<std::pair<FockProduct, std::complex<double>>> normalized() const {
    auto out = to_normalized_components(components);
    const double n = std::sqrt(to_complex(norm2).real());
    for (auto& [s, c] : out) c /= n;
    return out;
  }

  /// Exact unit-normalized components when every radical lies in the field.
  std::optional<std::map<FockProduct, ExactScalar>> normalized_exact() const {
    auto inv = exact_sqrt(real_part(norm2));
    if (!inv) return std::nullopt;
    std::map<FockProduct, ExactScalar> out;
    for (const auto& [s, c] : components) {
      auto w = exact_sqrt(RealScalar(s.factorial_weight()));
      if (!w) return std::nullopt;
      out.emplace(s, c * ExactScalar(*w) / ExactScalar(*inv));
    }
    return out;
  }
};

/// P^S v = (d/|G|) Σ_R χ^S(R) R v.
inline StateVector<ExactScalar> apply_projector(const CharacterTable& table, const std::string& irrep,
                                                const StateVector<ExactScalar>& v) {
  const Irrep& ir = table.irrep(irrep);
  StateVector<ExactScalar> acc;
  for (std::size_t e = 0; e < table.elements().size(); ++e) {
    const int chi = table.character(irrep, e);
    if (chi == 0) continue;
    add_scaled(acc, act_on_vector(table.elements()[e], v), ExactScalar(chi));
  }
  return scaled(acc, ExactScalar(ratio(ir.dimension, table.order())));
}

/// Projector onto one row: P^S followed by Π (1 + s_k g_k)/2 over the row rule's involutions.
inline StateVector<ExactScalar> apply_row_projector(const CharacterTable& table, const std::string& irrep, int row,
                                                    const StateVector<ExactScalar>& v) {
  const Irrep& ir = table.irrep(irrep);
  if (row < 0 || row >= ir.dimension) throw std::invalid_argument("row index out of range for irrep " + irrep);
  StateVector<ExactScalar> out = apply_projector(table, irrep, v);
  if (ir.dimension == 1) return out;
  const RowRule* rule = table.row_rule(irrep);
  for (std::size_t k = 0; k < rule->involutions.size(); ++k) {
    const int s = rule->signs[static_cast<std::size_t>(row)][k];
    StateVector<ExactScalar> next = out;
    add_scaled(next, act_on_vector(rule->involutions[k], out), ExactScalar(s));
    out = scaled(next, ExactScalar(ratio(1, 2)));
  }
  return out;
}

/// P^S applied to one basis state; nullopt when the state has no component in the irrep.
inline std::optional<SymmetryAdaptedVector> project(const CharacterTable& table, const std::string& irrep,
                                                    const FockProduct& state, std::optional<int> row = std::nullopt) {
  StateVector<ExactScalar> v{{state, ExactScalar(1)}};
  auto p = row ? apply_row_projector(table, irrep, *row, v) : apply_projector(table, irrep, v);
  if (p.empty()) return std::nullopt;
  ExactScalar n2 = g_norm2(p);
  return SymmetryAdaptedVector{irrep, row.value_or(0), state.shell(), std::move(p), std::move(n2)};
}

/// Trace of an element on one shell (basis-independent, so the factorial basis serves).
inline ExactScalar shell_character(const GroupElement& g, int shell) {
  ExactScalar t(0);
  for (const auto& s : shell_states(g.dimension(), shell)) {
    auto img = act_on_state(g, s);
    if (auto it = img.find(s); it != img.end()) t += it->second;
  }
  return t;
}

/// Number of copies of the irrep in one shell, from characters.
inline int multiplicity(const CharacterTable& table, const std::string& irrep, int shell) {
  ExactScalar s(0);
  std::vector<std::optional<ExactScalar>> per_class(table.classes().size());
  for (std::size_t e = 0; e < table.elements().size(); ++e) {
    auto& slot = per_class[static_cast<std::size_t>(table.class_index(e))];
    if (!slot) slot = shell_character(table.elements()[e], shell);
    s += ExactScalar(table.character(irrep, e)) * *slot;
  }
  s = s / ExactScalar(table.order());
  if (!is_rational(s) || rational_value(s).get_den() != 1) {
    throw std::logic_error("multiplicity: non-integer result, table inconsistent with the action");
  }
  return static_cast<int>(rational_value(s).get_num().get_si());
}

namespace detail {

/// Removes from v its G-projections on the given vectors; makes the first coefficient 1.
inline StateVector<ExactScalar> orthogonalize(StateVector<ExactScalar> v,
                                              const std::vector<SymmetryAdaptedVector>& against) {
  for (const auto& u : against) {
    const ExactScalar c = g_inner(u.components, v) / u.norm2;
    if (!is_zero(c)) add_scaled(v, u.components, ExactScalar(-c));
  }
  if (!v.empty()) v = scaled(v, ExactScalar(ExactScalar(1) / v.begin()->second));
  return v;
}

inline std::vector<SymmetryAdaptedVector> build_shell_block(const CharacterTable& table, const std::string& irrep,
                                                            int row, int shell) {
  const int dim = table.irrep(irrep).dimension;
  const int want = multiplicity(table, irrep, shell);
  std::vector<SymmetryAdaptedVector> out;
  if (want == 0) return out;
  for (const auto& s : shell_states(table.dimension(), shell)) {
    auto p = apply_row_projector(table, irrep, row, {{s, ExactScalar(1)}});
    if (p.empty()) continue;
    p = orthogonalize(std::move(p), out);
    if (p.empty()) continue;
    ExactScalar n2 = g_norm2(p);
    out.push_back({irrep, row, shell, std::move(p), std::move(n2)});
    if (static_cast<int>(out.size()) == want) break;
  }
  if (static_cast<int>(out.size()) != want) {
    throw std::logic_error("adapted_basis: found " + std::to_string(out.size()) + " vectors of " + irrep +
                           " row " + std::to_string(row) + " in shell " + std::to_string(shell) + ", expected " +
                           std::to_string(want) + " (dimension " + std::to_string(dim) + ")");
  }
  return out;
}

}  // namespace detail

/// Orthogonal (irrep, row) vectors of one shell; cached, deterministic order.
inline const std::vector<SymmetryAdaptedVector>& adapted_shell(const CharacterTable& table, const std::string& irrep,
                                                               int row, int shell) {
  static std::mutex mu;
  static std::map<std::tuple<std::string, std::string, int, int>, std::vector<SymmetryAdaptedVector>> cache;
  auto key = std::make_tuple(table.fingerprint(), irrep, row, shell);
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto block = detail::build_shell_block(table, irrep, row, shell);
  std::lock_guard lock(mu);
  return cache.emplace(key, std::move(block)).first->second;
}

/// Orthogonal spanning set of the (irrep, row) subspace of all shells ≤ max_shell,
/// built shell by shell by projection and exact Gram–Schmidt in the G metric.
inline std::vector<SymmetryAdaptedVector> adapted_basis(const CharacterTable& table, const std::string& irrep, int row,
                                                        int max_shell) {
  if (max_shell < 0) throw std::invalid_argument("adapted_basis: max_shell must be >= 0");
  if (row < 0 || row >= table.irrep(irrep).dimension) throw std::invalid_argument("adapted_basis: row out of range");
  std::vector<SymmetryAdaptedVector> out;
  for (int m = 0; m <= max_shell; ++m) {
    const auto& b = adapted_shell(table, irrep, row, m);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

/// Irrep content of one shell, each label repeated by its multiplicity, counted as the
/// number of independent projected vectors in row 0.
inline std::vector<std::string> classify_shell(const CharacterTable& table, int shell) {
  std::vector<std::string> out;
  for (const auto& ir : table.irreps()) {
    const auto& b = adapted_shell(table, ir.label, 0, shell);
    for (std::size_t k = 0; k < b.size(); ++k) out.push_back(ir.label);
  }
  return out;
}

inline std::vector<std::string> classify_shell_3d(const CharacterTable& table, int shell) {
  if (table.dimension() != 3) throw std::invalid_argument("classify_shell_3d: table must act on three coordinates");
  if (shell < 0) throw std::invalid_argument("classify_shell_3d: shell must be >= 0");
  return classify_shell(table, shell);
}

struct InvarianceReport {
  double residual = 0.0;  // max |(g H g⁻¹ − H)_ij| in the normalized basis, interior columns
  bool exact_zero = true;
  std::size_t interior_states = 0;
};

/**
 * Compares g H g⁻¹ with H column by column on interior states (shell ≤ max_shell − degree),
 * where neither product is affected by truncation. For antiunitary g = R·T the middle factor
 * is T H T⁻¹.
 */
inline InvarianceReport verify_invariance(const OperatorPolynomial& h, int max_shell, const GroupElement& g) {
  if (g.dimension() != h.dimension()) throw std::invalid_argument("verify_invariance: dimension mismatch");
  const OperatorPolynomial hh = g.time_reversal() ? h.time_reversed() : h;
  GroupElement unitary_part = g.time_reversal() ? g.with_time_reversal() : g;
  const GroupElement inv = unitary_part.inverse();
  InvarianceReport rep;
  const int interior = max_shell - h.degree();
  for (int m = 0; m <= interior; ++m) {
    for (const auto& s : shell_states(h.dimension(), m)) {
      ++rep.interior_states;
      StateVector<ExactScalar> e{{s, ExactScalar(1)}};
      auto lhs = act_on_vector(unitary_part, apply_operator(hh, act_on_vector(inv, e)));
      add_scaled(lhs, apply_operator(h, e), ExactScalar(-1));
      for (const auto& [t, c] : lhs) {
        rep.exact_zero = false;
        rep.residual = std::max(rep.residual, std::abs(to_complex(c)) * normalization_ratio(t, s));
      }
    }
  }
  return rep;
}

}  // namespace ptsym
