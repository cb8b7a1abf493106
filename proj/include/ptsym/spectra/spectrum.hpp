// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ptsym/core/errors.hpp"
#include "ptsym/fock/ladder.hpp"
#include "ptsym/models/catalog.hpp"
#include "ptsym/spectra/block.hpp"

namespace ptsym {

using Complex = std::complex<double>;

inline constexpr double kDefaultRealityTol = 1e-9;
inline constexpr double kResidualContract = 1e-10;
inline constexpr int kDefaultShellCap = 60;

/// Real part first, then imaginary part.
inline bool spectral_less(const Complex& x, const Complex& y) {
  if (x.real() != y.real()) return x.real() < y.real();
  return x.imag() < y.imag();
}

/// |Im E| ≤ tol·(|Re E| + 1).
inline bool is_real_value(const Complex& e, double tol = kDefaultRealityTol) {
  return std::abs(e.imag()) <= tol * (std::abs(e.real()) + 1.0);
}

/**
 * Eigenvalues of a dense complex matrix (Hessenberg reduction + shifted QR via
 * Eigen), sorted by real then imaginary part. Every pair is checked against
 * ‖Hv − Ev‖ ≤ 1e−10·‖H‖_F.
 */
inline std::vector<Complex> eigenvalues_checked(const Eigen::MatrixXcd& h) {
  if (h.rows() == 0) return {};
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(h, true);
  if (es.info() != Eigen::Success) {
    throw NumericalError("eigensolver did not converge for a block of size " + std::to_string(h.rows()));
  }
  const double hn = h.norm();
  const auto& vals = es.eigenvalues();
  const auto& vecs = es.eigenvectors();
  for (Eigen::Index k = 0; k < vals.size(); ++k) {
    Eigen::VectorXcd v = vecs.col(k);
    v.normalize();
    const double r = (h * v - vals(k) * v).norm();
    if (r > kResidualContract * std::max(hn, 1.0)) {
      throw NumericalError("eigenpair residual " + std::to_string(r) + " exceeds contract for block of size " +
                           std::to_string(h.rows()));
    }
  }
  std::vector<Complex> out(vals.data(), vals.data() + vals.size());
  std::sort(out.begin(), out.end(), spectral_less);
  return out;
}

struct SpectrumResult {
  std::string model;
  ShapeParams shape;
  double a = 0.0;
  std::string irrep;  // empty for the full basis
  int row = 0;
  int max_shell = 0;
  std::vector<Complex> eigenvalues;  // sorted by real part, then imaginary part
  std::vector<double> deltas;        // change under the last shell increment; NaN when not measured
  std::vector<bool> converged;
  std::vector<bool> real;
  bool fully_converged = false;  // converge(): all requested levels within tol

  std::size_t size() const { return eigenvalues.size(); }
};

inline void flag_reality(SpectrumResult& r, double tol = kDefaultRealityTol) {
  r.real.resize(r.eigenvalues.size());
  for (std::size_t k = 0; k < r.eigenvalues.size(); ++k) r.real[k] = is_real_value(r.eigenvalues[k], tol);
}

/// Eigenvalues of one (irrep, row) block at fixed max_shell.
inline SpectrumResult block_spectrum(const ModelSpec& model, double a, const std::string& irrep, int row,
                                     int max_shell) {
  const auto b = exact_block(model, irrep, row, max_shell);
  SpectrumResult r;
  r.model = model.name;
  r.shape = model.shape;
  r.a = a;
  r.irrep = irrep;
  r.row = row;
  r.max_shell = max_shell;
  r.eigenvalues = eigenvalues_checked(float_block(*b).at(a));
  r.deltas.assign(r.size(), std::numeric_limits<double>::quiet_NaN());
  r.converged.assign(r.size(), false);
  flag_reality(r);
  return r;
}

/// Eigenvalues of the whole truncated basis (no symmetry blocking).
inline SpectrumResult full_spectrum(const ModelSpec& model, double a, int max_shell) {
  const auto basis = shell_basis(model.dimension, max_shell);
  const Eigen::MatrixXcd h0 = Eigen::MatrixXcd(assemble_normalized(model.h0, basis));
  const Eigen::MatrixXcd v = Eigen::MatrixXcd(assemble_normalized(model.v, basis));
  SpectrumResult r;
  r.model = model.name;
  r.shape = model.shape;
  r.a = a;
  r.max_shell = max_shell;
  r.eigenvalues = eigenvalues_checked(h0 + a * v);
  r.deltas.assign(r.size(), std::numeric_limits<double>::quiet_NaN());
  r.converged.assign(r.size(), false);
  flag_reality(r);
  return r;
}

/// Distance from each of the lowest n values of `now` to the nearest value of `before`.
inline std::vector<double> level_changes(const std::vector<Complex>& now, const std::vector<Complex>& before,
                                         std::size_t n) {
  std::vector<double> d(std::min(n, now.size()), std::numeric_limits<double>::infinity());
  for (std::size_t k = 0; k < d.size(); ++k) {
    for (const auto& e : before) d[k] = std::min(d[k], std::abs(now[k] - e));
  }
  return d;
}

struct ConvergeOptions {
  double tol = 1e-8;
  int shell_cap = kDefaultShellCap;
  int start_shell = -1;  // −1: smallest shell whose block holds levels + 2 vectors
  int step = 2;          // quadratic C2v models couple one shell parity only
};

namespace detail {

template <class Solve>
SpectrumResult converge_with(Solve&& solve, std::size_t levels, const ConvergeOptions& opt, int start) {
  SpectrumResult prev = solve(start);
  int shell = start;
  while (true) {
    const int next = shell + opt.step;
    if (next > opt.shell_cap) {
      prev.fully_converged = false;
      return prev;
    }
    SpectrumResult cur = solve(next);
    const auto d = level_changes(cur.eigenvalues, prev.eigenvalues, levels);
    cur.deltas.assign(cur.size(), std::numeric_limits<double>::quiet_NaN());
    cur.converged.assign(cur.size(), false);
    bool all = d.size() >= levels;
    for (std::size_t k = 0; k < d.size(); ++k) {
      cur.deltas[k] = d[k];
      cur.converged[k] = d[k] < opt.tol;
      all = all && cur.converged[k];
    }
    cur.fully_converged = all;
    if (all) return cur;
    prev = std::move(cur);
    shell = next;
  }
}

}  // namespace detail

/**
 * Raises max_shell in steps of two until each of the lowest `levels` eigenvalues moves
 * by less than tol. When the cap is reached the last result is returned with
 * fully_converged = false.
 */
inline SpectrumResult converge(const ModelSpec& model, double a, const std::string& irrep, int row,
                               std::size_t levels, const ConvergeOptions& opt = {}) {
  if (!(opt.tol > 0)) throw UsageError("converge: tol must be positive");
  int start = opt.start_shell;
  if (start < 0) {
    start = 0;
    while (start < opt.shell_cap && exact_block(model, irrep, row, start)->size() < levels + 2) ++start;
  }
  return detail::converge_with([&](int s) { return block_spectrum(model, a, irrep, row, s); }, levels, opt, start);
}

/// Full-basis analogue of converge().
inline SpectrumResult converge_full(const ModelSpec& model, double a, std::size_t levels,
                                    const ConvergeOptions& opt = {}) {
  int start = opt.start_shell;
  if (start < 0) {
    start = 0;
    while (shell_basis(model.dimension, start).size() < levels + 2) ++start;
  }
  return detail::converge_with([&](int s) { return full_spectrum(model, a, s); }, levels, opt, start);
}

struct RealityPartition {
  std::vector<std::size_t> real;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (Im < 0, Im > 0)
  std::vector<std::size_t> unpaired;                       // complex without a conjugate partner here
};

/// Splits eigenvalues into real ones, conjugate pairs and unpaired complex values.
inline RealityPartition reality_classify(const std::vector<Complex>& values, double tol = kDefaultRealityTol,
                                         double pair_tol = 1e-8) {
  RealityPartition p;
  std::vector<bool> used(values.size(), false);
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (is_real_value(values[k], tol)) {
      p.real.push_back(k);
      used[k] = true;
    }
  }
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (used[k]) continue;
    std::optional<std::size_t> best;
    double best_d = pair_tol * (std::abs(values[k]) + 1.0);
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (j == k || used[j]) continue;
      const double d = std::abs(values[k] - std::conj(values[j]));
      if (d <= best_d) {
        best_d = d;
        best = j;
      }
    }
    used[k] = true;
    if (best) {
      used[*best] = true;
      auto pr = values[k].imag() < 0 ? std::make_pair(k, *best) : std::make_pair(*best, k);
      p.pairs.push_back(pr);
    } else {
      p.unpaired.push_back(k);
    }
  }
  return p;
}

inline RealityPartition reality_classify(const SpectrumResult& r, double tol = kDefaultRealityTol,
                                         double pair_tol = 1e-8) {
  return reality_classify(r.eigenvalues, tol, pair_tol);
}

struct PairingReport {
  std::vector<std::pair<std::size_t, std::size_t>> matched;  // (index in first, index in second)
  std::vector<std::size_t> unmatched_first;
  std::vector<std::size_t> unmatched_second;
  double max_deviation = 0.0;

  bool complete() const { return unmatched_first.empty() && unmatched_second.empty(); }
};

/// Greedy matching of each value of `first` to an unused value of `second` with |E₁ − conj(E₂)| ≤ tol.
inline PairingReport conjugate_pairing(const std::vector<Complex>& first, const std::vector<Complex>& second,
                                       double tol) {
  if (first.size() != second.size()) {
    throw UsageError("conjugate_pairing: dimension mismatch (" + std::to_string(first.size()) + " vs " +
                     std::to_string(second.size()) + ")");
  }
  PairingReport rep;
  std::vector<bool> used(second.size(), false);
  for (std::size_t k = 0; k < first.size(); ++k) {
    std::optional<std::size_t> best;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < second.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(first[k] - std::conj(second[j]));
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    if (best && best_d <= tol) {
      used[*best] = true;
      rep.matched.emplace_back(k, *best);
      rep.max_deviation = std::max(rep.max_deviation, best_d);
    } else {
      rep.unmatched_first.push_back(k);
    }
  }
  for (std::size_t j = 0; j < second.size(); ++j) {
    if (!used[j]) rep.unmatched_second.push_back(j);
  }
  return rep;
}

inline PairingReport conjugate_pairing(const SpectrumResult& b1, const SpectrumResult& b2, double tol) {
  if (b1.model != b2.model || b1.a != b2.a || b1.max_shell != b2.max_shell) {
    throw UsageError("conjugate_pairing: results differ in model, a or shell");
  }
  return conjugate_pairing(b1.eigenvalues, b2.eigenvalues, tol);
}

/// Lowest n values of a result (sorted order).
inline std::vector<Complex> lowest(const SpectrumResult& r, std::size_t n) {
  return {r.eigenvalues.begin(), r.eigenvalues.begin() + static_cast<std::ptrdiff_t>(std::min(n, r.size()))};
}

}  // namespace ptsym
