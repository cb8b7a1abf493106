// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ptsym/core/errors.hpp"
#include "ptsym/spectra/record.hpp"
#include "ptsym/spectra/spectrum.hpp"

namespace ptsym {

struct TrackPoint {
  double a = 0;
  Complex value;
  bool converged = false;  // false marks the track broken at this a
  int shell = 0;
};

struct Track {
  std::string model;
  std::string irrep;
  int row = 0;
  std::size_t index = 0;  // position in the sorted spectrum at the first grid point
  std::vector<TrackPoint> points;

  bool broken() const {
    return std::any_of(points.begin(), points.end(), [](const TrackPoint& p) { return !p.converged; });
  }
};

/// Strictly increasing grid lo, lo+step, ... up to hi (hi included within step/1e6).
inline std::vector<double> make_grid(double lo, double hi, double step) {
  if (!(step > 0) || hi < lo) throw UsageError("grid: need step > 0 and hi >= lo");
  std::vector<double> g;
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-6));
  for (long k = 0; k <= n; ++k) g.push_back(lo + static_cast<double>(k) * step);
  return g;
}

namespace detail {

struct Continuation {
  const ModelSpec& model;
  const std::string& irrep;
  int row;
  std::size_t levels;
  ConvergeOptions opt;
  int max_depth = 3;
  int last_shell = -1;

  SpectrumResult solve(double a) {
    ConvergeOptions o = opt;
    if (last_shell >= 0 && o.start_shell < 0) o.start_shell = std::max(0, last_shell - 2 * o.step);
    auto r = converge(model, a, irrep, row, levels, o);
    last_shell = r.max_shell;
    return r;
  }

  static bool coincides(const std::vector<Complex>& prev, std::size_t t) {
    for (std::size_t u = 0; u < prev.size(); ++u) {
      if (u != t && std::abs(prev[u] - prev[t]) <= 1e-9 * (1.0 + std::abs(prev[t]))) return true;
    }
    return false;
  }

  /// Greedy nearest-neighbour assignment; returns false when some distinct track is ambiguous.
  static bool assign(const std::vector<Complex>& prev, const SpectrumResult& cur, std::vector<Complex>& out,
                     std::vector<bool>& conv) {
    const std::size_t n = prev.size();
    std::vector<bool> used(cur.size(), false);
    out.assign(n, Complex{});
    conv.assign(n, false);
    bool clear = true;
    for (std::size_t t = 0; t < n; ++t) {
      std::size_t best = cur.size();
      double d1 = std::numeric_limits<double>::infinity();
      double d2 = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < cur.size(); ++j) {
        if (used[j]) continue;
        const double d = std::abs(cur.eigenvalues[j] - prev[t]);
        if (d < d1) {
          d2 = d1;
          d1 = d;
          best = j;
        } else if (d < d2) {
          d2 = d;
        }
      }
      if (best == cur.size()) return false;
      used[best] = true;
      out[t] = cur.eigenvalues[best];
      conv[t] = best < cur.converged.size() && cur.converged[best];
      if (d2 < 2.0 * d1 && d1 > 1e-12 && !coincides(prev, t)) clear = false;
    }
    return clear;
  }

  /// Continues prev (at a0) to a1, halving the step while the assignment is ambiguous.
  std::pair<std::vector<Complex>, std::vector<bool>> advance(const std::vector<Complex>& prev, double a0, double a1,
                                                             int depth, int& shell) {
    const SpectrumResult cur = solve(a1);
    std::vector<Complex> out;
    std::vector<bool> conv;
    if (assign(prev, cur, out, conv) || depth >= max_depth) {
      shell = cur.max_shell;
      return {out, conv};
    }
    const double mid = 0.5 * (a0 + a1);
    int s = 0;
    auto half = advance(prev, a0, mid, depth + 1, s);
    return advance(half.first, mid, a1, depth + 1, shell);
  }
};

}  // namespace detail

/**
 * Lowest K eigenvalue tracks of one block over an increasing grid of a. Each grid
 * point is converged; values are continued by nearest neighbour in the complex plane,
 * halving the step (up to three times) when the nearest and next-nearest candidates
 * are within a factor 2.
 */
inline std::vector<Track> scan_tracks(const ModelSpec& model, const std::string& irrep, int row,
                                      const std::vector<double>& grid, std::size_t levels,
                                      const ConvergeOptions& opt = {}) {
  if (grid.empty()) throw UsageError("scan_tracks: empty grid");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) throw UsageError("scan_tracks: a grid must be strictly increasing");
  }
  if (levels == 0) throw UsageError("scan_tracks: need at least one level");
  // Extra levels give the continuation room to pick up crossing partners.
  detail::Continuation c{model, irrep, row, levels + 2, opt};
  const SpectrumResult first = c.solve(grid.front());
  const std::size_t k = std::min(levels, first.size());
  std::vector<Track> tracks(k);
  std::vector<Complex> prev(first.eigenvalues.begin(), first.eigenvalues.begin() + static_cast<std::ptrdiff_t>(k));
  for (std::size_t t = 0; t < k; ++t) {
    tracks[t] = {model.name, irrep, row, t, {{grid.front(), prev[t], bool(first.converged[t]), first.max_shell}}};
  }
  for (std::size_t g = 1; g < grid.size(); ++g) {
    int shell = 0;
    auto [vals, conv] = c.advance(prev, grid[g - 1], grid[g], 0, shell);
    for (std::size_t t = 0; t < k; ++t) tracks[t].points.push_back({grid[g], vals[t], bool(conv[t]), shell});
    prev = vals;
  }
  return tracks;
}

/// Columnar track file, schema "ptsym-tracks/1": a header line then "a re im converged" rows per track.
inline std::string format_tracks(const std::vector<Track>& tracks) {
  std::string s = "# schema=ptsym-tracks/1\n";
  for (const auto& t : tracks) {
    s += "# model=" + t.model + " irrep=" + t.irrep + " row=" + std::to_string(t.row) +
         " track=" + std::to_string(t.index) + "\n";
    for (const auto& p : t.points) {
      s += format_double(p.a) + " " + format_double(p.value.real()) + " " + format_double(p.value.imag()) + " " +
           (p.converged ? "1" : "0") + "\n";
    }
    s += "\n";
  }
  return s;
}

/// Imaginary-part threshold: reality tolerance, raised to 100·√ε times the local level spacing.
inline double complexification_threshold(const std::vector<Complex>& values, std::size_t k,
                                         double tol = kDefaultRealityTol) {
  double spacing = 1.0;
  if (values.size() >= 2) {
    const double span = values.back().real() - values.front().real();
    if (span > 0) spacing = span / static_cast<double>(values.size() - 1);
  }
  const double floor = 100.0 * std::sqrt(std::numeric_limits<double>::epsilon()) * spacing;
  return std::max(tol * (std::abs(values[k].real()) + 1.0), floor);
}

struct ExceptionalPoint {
  std::string model;
  std::string irrep;
  int row = 0;
  std::pair<std::size_t, std::size_t> levels{0, 1};
  double a_c = 0;
  double bracket_lo = 0;  // final bisection bracket
  double bracket_hi = 0;
  Complex value;           // pair mean at a_c
  double gap = 0;          // |E_i − E_j| at a_c
  bool complex_above = true;  // orientation: the complex side is a > a_c
  bool trivial = false;       // the real side is the Hermitian point a = 0 only
  int shell = 0;
};

namespace detail {

inline bool pair_is_complex(const SpectrumResult& r, std::pair<std::size_t, std::size_t> lv, double tol) {
  for (std::size_t k : {lv.first, lv.second}) {
    if (k >= r.size()) throw UsageError("find_exceptional_point: level index beyond block size");
    if (std::abs(r.eigenvalues[k].imag()) > complexification_threshold(r.eigenvalues, k, tol)) return true;
  }
  return false;
}

}  // namespace detail

struct ExceptionalPointOptions {
  double tol_a = 1e-6;
  int max_shell = -1;  // −1: shell from converge() at the bracket end with the larger |a|
  ConvergeOptions converge;
  double reality_tol = kDefaultRealityTol;
};

/**
 * Bisection on "level i or j has |Im E| above the complexification threshold" at a
 * fixed shell. Levels are indices in the sorted block spectrum. The bracket must have
 * exactly one complex end.
 */
inline ExceptionalPoint find_exceptional_point(const ModelSpec& model, const std::string& irrep, int row,
                                               std::pair<std::size_t, std::size_t> levels, double a_lo, double a_hi,
                                               const ExceptionalPointOptions& opt = {}) {
  if (!(a_hi > a_lo)) throw UsageError("find_exceptional_point: need a_lo < a_hi");
  if (!(opt.tol_a > 0)) throw UsageError("find_exceptional_point: tol_a must be positive");
  int shell = opt.max_shell;
  if (shell < 0) {
    const double a_far = std::abs(a_hi) >= std::abs(a_lo) ? a_hi : a_lo;
    shell = converge(model, a_far, irrep, row, std::max(levels.first, levels.second) + 1, opt.converge).max_shell;
  }
  auto complex_at = [&](double a) {
    return detail::pair_is_complex(block_spectrum(model, a, irrep, row, shell), levels, opt.reality_tol);
  };
  const bool lo_c = complex_at(a_lo);
  const bool hi_c = complex_at(a_hi);
  if (lo_c == hi_c) {
    throw UsageError("find_exceptional_point: bracket [" + format_double(a_lo) + ", " + format_double(a_hi) +
                     "] does not straddle a transition of levels " + std::to_string(levels.first) + "," +
                     std::to_string(levels.second) + " in " + irrep + " (both ends " +
                     (lo_c ? "complex" : "real") + ")");
  }
  double lo = a_lo;
  double hi = a_hi;
  while (hi - lo > opt.tol_a) {
    const double mid = 0.5 * (lo + hi);
    if (complex_at(mid) == lo_c) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  ExceptionalPoint ep;
  ep.model = model.name;
  ep.irrep = irrep;
  ep.row = row;
  ep.levels = levels;
  ep.a_c = 0.5 * (lo + hi);
  ep.bracket_lo = lo;
  ep.bracket_hi = hi;
  ep.complex_above = hi_c;
  ep.shell = shell;
  const auto r = block_spectrum(model, ep.a_c, irrep, row, shell);
  ep.value = 0.5 * (r.eigenvalues[levels.first] + r.eigenvalues[levels.second]);
  ep.gap = std::abs(r.eigenvalues[levels.first] - r.eigenvalues[levels.second]);
  ep.trivial = !lo_c && a_lo == 0.0 && ep.a_c <= opt.tol_a;
  return ep;
}

struct IrrepBoundary {
  std::string irrep;
  std::size_t levels = 0;           // levels of this block among the K examined
  std::optional<ExceptionalPoint> first;  // lowest-|a| complexification found
  bool complex_at_smallest_a = false;
  double exponent = std::numeric_limits<double>::quiet_NaN();  // fit of log|Im E| vs log a at the two smallest a
  bool partial = false;  // a level moved by more than tol between shell − step and shell where checked
  int shell = 0;
};

struct PhaseBoundary {
  std::string model;
  std::size_t levels = 0;
  double a_transition = std::numeric_limits<double>::infinity();  // infinity: no transition in the window
  bool trivial = false;
  bool found = false;
  double exponent = std::numeric_limits<double>::quiet_NaN();
  std::string trivial_irrep;
  std::vector<IrrepBoundary> per_irrep;
};

struct PhaseBoundaryOptions {
  std::vector<double> grid = make_grid(0.01, 1.0, 0.01);  // a > 0, increasing
  // Looser than the spectrum default: levels at a grid point on an exceptional point
  // are only √ε-accurate and never settle to 1e−8.
  ConvergeOptions converge{1e-6, 40, -1, 2};
  int max_shell = -1;  // −1: per block, the shell converge() reaches at the last grid point
  double tol_a = 1e-5;
  double reality_tol = kDefaultRealityTol;
};

/**
 * Splits the lowest K levels at a = 0 over the blocks (row 0 of each irrep), then walks
 * the grid per block. The first grid point where a converged level among the block's
 * lowest ones is complex is refined by bisection. A block already complex at the smallest
 * grid point marks the boundary trivial, with the growth exponent of |Im E| reported.
 */
inline PhaseBoundary phase_boundary(const ModelSpec& model, std::size_t levels, const PhaseBoundaryOptions& opt = {}) {
  if (levels == 0) throw UsageError("phase_boundary: need K >= 1");
  if (opt.grid.size() < 2 || !(opt.grid.front() > 0)) throw UsageError("phase_boundary: grid needs >= 2 points, all > 0");
  const CharacterTable table = model.table();
  PhaseBoundary pb;
  pb.model = model.name;
  pb.levels = levels;

  struct Tagged {
    double e;
    std::size_t irrep;
  };
  std::vector<Tagged> all;
  for (std::size_t q = 0; q < table.irreps().size(); ++q) {
    const auto r0 = converge(model, 0.0, table.irreps()[q].label, 0, levels, opt.converge);
    const int dim = table.irreps()[q].dimension;
    for (std::size_t k = 0; k < std::min(levels, r0.size()); ++k) {
      for (int d = 0; d < dim; ++d) all.push_back({r0.eigenvalues[k].real(), q});
    }
  }
  std::stable_sort(all.begin(), all.end(), [](const Tagged& x, const Tagged& y) { return x.e < y.e; });
  std::vector<std::size_t> per(table.irreps().size(), 0);
  for (std::size_t k = 0; k < std::min(levels, all.size()); ++k) per[all[k].irrep] += 1;

  for (std::size_t q = 0; q < table.irreps().size(); ++q) {
    const Irrep& ir = table.irreps()[q];
    IrrepBoundary ib;
    ib.irrep = ir.label;
    ib.levels = (per[q] + static_cast<std::size_t>(ir.dimension) - 1) / static_cast<std::size_t>(ir.dimension);
    if (ib.levels == 0) {
      pb.per_irrep.push_back(ib);
      continue;
    }
    ib.shell = opt.max_shell >= 0 ? opt.max_shell
                                  : converge(model, opt.grid.back(), ir.label, 0, ib.levels, opt.converge).max_shell;
    std::vector<double> im_small;
    double a_prev = 0.0;
    const int lower_shell = std::max(0, ib.shell - opt.converge.step);
    // Levels are compared with shell − step only where the answer matters: at grid points
    // showing a complex level, and at the last point visited (the largest a).
    auto mark_convergence = [&](SpectrumResult& r) {
      const auto before = block_spectrum(model, r.a, ir.label, 0, lower_shell);
      const auto d = level_changes(r.eigenvalues, before.eigenvalues, ib.levels);
      bool all = true;
      for (std::size_t k = 0; k < d.size(); ++k) {
        r.deltas[k] = d[k];
        r.converged[k] = d[k] < opt.converge.tol;
        all = all && r.converged[k];
      }
      return all;
    };
    auto complex_levels = [&](const SpectrumResult& r, bool need_converged) {
      std::vector<std::size_t> out;
      for (std::size_t k = 0; k < std::min(ib.levels, r.size()); ++k) {
        if (need_converged && !r.converged[k]) continue;
        if (std::abs(r.eigenvalues[k].imag()) > complexification_threshold(r.eigenvalues, k, opt.reality_tol)) {
          out.push_back(k);
        }
      }
      return out;
    };
    SpectrumResult last;
    bool last_checked = false;
    for (std::size_t g = 0; g < opt.grid.size(); ++g) {
      const double a = opt.grid[g];
      auto r = block_spectrum(model, a, ir.label, 0, ib.shell);
      bool checked = false;
      if (!complex_levels(r, false).empty()) {
        if (!mark_convergence(r)) ib.partial = true;
        checked = true;
      }
      std::optional<std::size_t> hit;
      double max_im = 0;
      for (std::size_t k : checked ? complex_levels(r, true) : std::vector<std::size_t>{}) {
        if (!hit) hit = k;
        max_im = std::max(max_im, std::abs(r.eigenvalues[k].imag()));
      }
      last = r;
      last_checked = checked;
      if (g < 2) im_small.push_back(max_im);
      if (hit) {
        if (g == 0) {
          ib.complex_at_smallest_a = true;
        } else if (!ib.first && !ib.complex_at_smallest_a) {
          const std::size_t k = *hit;
          ExceptionalPointOptions eo;
          eo.tol_a = opt.tol_a;
          eo.max_shell = ib.shell;
          eo.reality_tol = opt.reality_tol;
          // The partner is usually the neighbour in real-part order; a lone level is the fallback.
          std::vector<std::pair<std::size_t, std::size_t>> candidates;
          if (k + 1 < r.size()) candidates.emplace_back(k, k + 1);
          if (k > 0) candidates.emplace_back(k - 1, k);
          candidates.emplace_back(k, k);
          for (const auto& lv : candidates) {
            try {
              ib.first = find_exceptional_point(model, ir.label, 0, lv, a_prev, a, eo);
              break;
            } catch (const UsageError&) {
            }
          }
          if (!ib.first) {
            ExceptionalPoint ep;
            ep.model = model.name;
            ep.irrep = ir.label;
            ep.levels = {k, k};
            ep.a_c = a;
            ep.bracket_lo = a_prev;
            ep.bracket_hi = a;
            ep.value = r.eigenvalues[k];
            ep.shell = ib.shell;
            ib.first = ep;
          }
        }
        if (g >= 1 && (ib.complex_at_smallest_a || ib.first)) break;
      }
      a_prev = a;
    }
    if (!last_checked && last.size() > 0 && !mark_convergence(last)) ib.partial = true;
    if (ib.complex_at_smallest_a && im_small.size() == 2 && im_small[0] > 0 && im_small[1] > 0) {
      ib.exponent = std::log(im_small[1] / im_small[0]) / std::log(opt.grid[1] / opt.grid[0]);
    }
    pb.per_irrep.push_back(ib);
  }

  for (const auto& ib : pb.per_irrep) {
    if (ib.complex_at_smallest_a && (std::isnan(ib.exponent) || ib.exponent > 0)) {
      if (!pb.trivial) {
        pb.trivial = true;
        pb.trivial_irrep = ib.irrep;
        pb.exponent = ib.exponent;
      }
    } else if (ib.first) {
      pb.a_transition = std::min(pb.a_transition, std::abs(ib.first->a_c));
      pb.found = true;
    }
  }
  if (pb.trivial) {
    pb.a_transition = 0.0;
    pb.found = true;
  }
  return pb;
}

}  // namespace ptsym
