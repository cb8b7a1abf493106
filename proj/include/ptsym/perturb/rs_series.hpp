// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ptsym/core/errors.hpp"
#include "ptsym/models/catalog.hpp"
#include "ptsym/spectra/block.hpp"
#include "ptsym/spectra/spectrum.hpp"

namespace ptsym {

using ComplexLD = std::complex<long double>;

inline bool is_zero(const ComplexLD& z) { return z == ComplexLD(0); }

/// Rational to long double through a double-double split of a 128-bit float.
inline long double to_long_double(const Rational& q) {
  mpf_class f(0, 128);
  f = q;
  const double hi = f.get_d();
  mpf_class rest(f - hi, 128);
  return static_cast<long double>(hi) + static_cast<long double>(rest.get_d());
}

template <class Base, int D>
ComplexLD to_complex_ld(const QuadExt<Base, D>& x);

inline ComplexLD to_complex_ld(const Rational& q) { return {to_long_double(q), 0.0L}; }

template <class Base, int D>
ComplexLD to_complex_ld(const QuadExt<Base, D>& x) {
  if constexpr (D == -1) {
    return to_complex_ld(x.a()) + ComplexLD(0.0L, 1.0L) * to_complex_ld(x.b());
  } else {
    return to_complex_ld(x.a()) + std::sqrt(static_cast<long double>(D)) * to_complex_ld(x.b());
  }
}

/**
 * E(a) = Σ c_k a^k for one member of an unperturbed level of one block. Coefficients are
 * exact unless lifting a degeneracy needed eigenvectors outside the field, in which case
 * only the long double values are filled.
 */
struct PerturbationSeries {
  std::string model;
  std::string irrep;
  int row = 0;
  std::size_t level = 0;   // index of the distinct unperturbed energy in the block, lowest first
  std::size_t member = 0;  // position within a degenerate level, by lifting eigenvalue
  int shell = 0;           // shell of the unperturbed states
  std::size_t degeneracy = 1;
  int lifting_order = 1;  // order at which the degeneracy is lifted (1 when none)
  bool exact = true;
  std::vector<ExactScalar> coeffs;  // c_0 .. c_order when exact
  std::vector<ComplexLD> approx;    // always filled

  std::size_t order() const { return approx.empty() ? 0 : approx.size() - 1; }

  Complex evaluate(double a) const {
    ComplexLD s = 0;
    for (std::size_t k = approx.size(); k-- > 0;) s = s * static_cast<long double>(a) + approx[k];
    return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
  }

  bool has_odd_powers() const {
    for (std::size_t k = 1; k < approx.size(); k += 2) {
      if (exact ? !is_zero(coeffs[k]) : std::abs(approx[k]) > 1e-12L * (1.0L + std::abs(approx[k - 1]))) return true;
    }
    return false;
  }
};

namespace detail {

template <class T>
struct RsProblem {
  std::vector<T> e;                                     // diagonal of h0
  std::vector<std::vector<std::pair<std::size_t, T>>> v;  // columns of v
  std::vector<std::size_t> p;                           // degenerate indices
  T e0;
};

template <class T>
struct SmallEigen {
  std::vector<T> lambda;
  std::vector<std::vector<T>> right;
  std::vector<std::vector<T>> left;  // left[μ]·right[ν] = δ_μν
};

template <class T>
std::vector<T> apply_columns(const RsProblem<T>& pr, const std::vector<T>& x) {
  std::vector<T> out(x.size(), T(0));
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (is_zero(x[j])) continue;
    for (const auto& [i, c] : pr.v[j]) out[i] += c * x[j];
  }
  return out;
}

template <class T>
T dot(const std::vector<T>& l, const std::vector<T>& r) {
  T s(0);
  for (std::size_t k = 0; k < l.size(); ++k) {
    if (!is_zero(l[k]) && !is_zero(r[k])) s += l[k] * r[k];
  }
  return s;
}

inline bool distinct(const std::vector<ExactScalar>& l) {
  for (std::size_t i = 0; i < l.size(); ++i) {
    for (std::size_t j = i + 1; j < l.size(); ++j) {
      if (l[i] == l[j]) return false;
    }
  }
  return true;
}

inline bool distinct(const std::vector<ComplexLD>& l) {
  for (std::size_t i = 0; i < l.size(); ++i) {
    for (std::size_t j = i + 1; j < l.size(); ++j) {
      if (std::abs(l[i] - l[j]) <= 1e-12L * (1.0L + std::abs(l[i]))) return false;
    }
  }
  return true;
}

/// Exact eigen-decomposition for diagonal matrices and 2×2 matrices with a square root in the field.
inline std::optional<SmallEigen<ExactScalar>> small_eigen(const std::vector<std::vector<ExactScalar>>& m) {
  const std::size_t d = m.size();
  bool diagonal = true;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) diagonal = diagonal && (i == j || is_zero(m[i][j]));
  }
  SmallEigen<ExactScalar> out;
  if (diagonal) {
    for (std::size_t i = 0; i < d; ++i) {
      out.lambda.push_back(m[i][i]);
      std::vector<ExactScalar> u(d, ExactScalar(0));
      u[i] = ExactScalar(1);
      out.right.push_back(u);
      out.left.push_back(u);
    }
    return out;
  }
  if (d != 2) return std::nullopt;
  const ExactScalar& p = m[0][0];
  const ExactScalar& q = m[0][1];
  const ExactScalar& r = m[1][0];
  const ExactScalar& s = m[1][1];
  const ExactScalar half = ExactScalar(ratio(1, 2));
  const ExactScalar mean = (p + s) * half;
  const ExactScalar diff = (p - s) * half;
  const auto root = exact_sqrt(ExactScalar(diff * diff + q * r));
  if (!root) return std::nullopt;
  for (int sg : {-1, 1}) {
    const ExactScalar lam = mean + ExactScalar(sg) * *root;
    std::vector<ExactScalar> rv{q, lam - p};
    if (is_zero(rv[0]) && is_zero(rv[1])) rv = {lam - s, r};
    std::vector<ExactScalar> lv{r, lam - p};
    if (is_zero(lv[0]) && is_zero(lv[1])) lv = {lam - s, q};
    const ExactScalar n = dot(lv, rv);
    if (is_zero(n)) return std::nullopt;
    for (auto& c : lv) c = c / n;
    out.lambda.push_back(lam);
    out.right.push_back(rv);
    out.left.push_back(lv);
  }
  return out;
}

inline std::optional<SmallEigen<ComplexLD>> small_eigen(const std::vector<std::vector<ComplexLD>>& m) {
  const auto d = static_cast<Eigen::Index>(m.size());
  using Mat = Eigen::Matrix<ComplexLD, Eigen::Dynamic, Eigen::Dynamic>;
  Mat a(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  Eigen::ComplexEigenSolver<Mat> es(a, true);
  if (es.info() != Eigen::Success) return std::nullopt;
  const Mat rv = es.eigenvectors();
  const Mat lv = rv.inverse();
  SmallEigen<ComplexLD> out;
  for (Eigen::Index k = 0; k < d; ++k) {
    out.lambda.push_back(es.eigenvalues()(k));
    std::vector<ComplexLD> r(static_cast<std::size_t>(d));
    std::vector<ComplexLD> l(static_cast<std::size_t>(d));
    for (Eigen::Index i = 0; i < d; ++i) {
      r[static_cast<std::size_t>(i)] = rv(i, k);
      l[static_cast<std::size_t>(i)] = lv(k, i);
    }
    out.right.push_back(r);
    out.left.push_back(l);
  }
  return out;
}

inline std::vector<std::size_t> lifting_order(const std::vector<ExactScalar>& lambda) {
  std::vector<std::size_t> idx(lambda.size());
  for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
    return spectral_less(to_complex(lambda[x]), to_complex(lambda[y]));
  });
  return idx;
}

inline std::vector<std::size_t> lifting_order(const std::vector<ComplexLD>& lambda) {
  std::vector<std::size_t> idx(lambda.size());
  for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
    return spectral_less(Complex(static_cast<double>(lambda[x].real()), static_cast<double>(lambda[x].imag())),
                         Complex(static_cast<double>(lambda[y].real()), static_cast<double>(lambda[y].imag())));
  });
  return idx;
}

struct RsOutcome {
  int lifting_order = 1;
};

/**
 * Rayleigh–Schrödinger recursion with intermediate normalization in the left
 * eigenvector of the lifting matrix. ψ_k = x_k + y_k splits into the degenerate
 * space P and its complement Q; R = (H0 − E0)⁻¹ on Q.
 *
 * Lifting at first order (W = PVP with distinct eigenvalues):
 *   E_k = l₀·PV y_{k−1},  (W − E1) x_{k−1} = Σ_{r=2}^{k} E_r x_{k−r} − PV y_{k−1},
 *   y_k = R[Σ_{r=1}^{k} E_r y_{k−r} − QV(x_{k−1} + y_{k−1})].
 * Lifting at second order (W = E1·1, M2 = −PVRQV with distinct eigenvalues):
 *   z_{k−1} = R[Σ_{r=1}^{k−1} E_r y_{k−1−r} − QV y_{k−2}],  E_k = l₀·PV z_{k−1},
 *   (M2 − E2) x_{k−2} = Σ_{r=3}^{k} E_r x_{k−r} − PV z_{k−1},  y_{k−1} = −RQV x_{k−2} + z_{k−1}.
 * Returns one coefficient list per member, members ordered by lifting eigenvalue.
 */
template <class T>
std::optional<std::vector<std::vector<T>>> rs_core(const RsProblem<T>& pr, std::size_t order, RsOutcome& info) {
  const std::size_t n = pr.e.size();
  const std::size_t d = pr.p.size();
  std::vector<bool> in_p(n, false);
  for (auto i : pr.p) in_p[i] = true;

  auto pv = [&](const std::vector<T>& x) {
    const auto w = apply_columns(pr, x);
    std::vector<T> out(d);
    for (std::size_t a = 0; a < d; ++a) out[a] = w[pr.p[a]];
    return out;
  };
  // R applied to t on Q, zero on P.
  auto resolvent = [&](const std::vector<T>& t) {
    std::vector<T> y(n, T(0));
    for (std::size_t i = 0; i < n; ++i) {
      if (!in_p[i] && !is_zero(t[i])) y[i] = t[i] / (pr.e[i] - pr.e0);
    }
    return y;
  };
  auto embed = [&](const std::vector<T>& c) {
    std::vector<T> x(n, T(0));
    for (std::size_t a = 0; a < d; ++a) x[pr.p[a]] = c[a];
    return x;
  };
  auto restrict_p = [&](const std::vector<T>& x) {
    std::vector<T> c(d);
    for (std::size_t a = 0; a < d; ++a) c[a] = x[pr.p[a]];
    return c;
  };
  auto neg = [](std::vector<T> v) {
    for (auto& c : v) c = -c;
    return v;
  };
  // −RQV x
  auto minus_rqv = [&](const std::vector<T>& x) { return neg(resolvent(apply_columns(pr, x))); };

  std::vector<std::vector<T>> w(d, std::vector<T>(d));
  for (std::size_t b = 0; b < d; ++b) {
    std::vector<T> unit(n, T(0));
    unit[pr.p[b]] = T(1);
    const auto col = pv(unit);
    for (std::size_t a = 0; a < d; ++a) w[a][b] = col[a];
  }
  bool scalar = true;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      if (a == b ? !(w[a][a] == w[0][0]) : !is_zero(w[a][b])) scalar = false;
    }
  }
  const bool second = d > 1 && scalar;
  info.lifting_order = second ? 2 : 1;
  std::vector<std::vector<T>> lift = w;
  if (second) {
    for (std::size_t b = 0; b < d; ++b) {
      std::vector<T> unit(n, T(0));
      unit[pr.p[b]] = T(1);
      const auto col = pv(minus_rqv(unit));
      for (std::size_t a = 0; a < d; ++a) lift[a][b] = col[a];
    }
  }
  const auto eig = small_eigen(lift);
  if (!eig) return std::nullopt;
  if (!distinct(eig->lambda)) {
    throw NumericalError("rs_series: degeneracy of dimension " + std::to_string(d) + " not lifted at order " +
                         std::to_string(info.lifting_order));
  }

  std::vector<std::vector<T>> result;
  for (std::size_t mu0 : lifting_order(eig->lambda)) {
    const auto& l0 = eig->left[mu0];
    const T lam0 = eig->lambda[mu0];
    auto solve_p = [&](const std::vector<T>& rhs) {
      std::vector<T> c(d, T(0));
      for (std::size_t mu = 0; mu < d; ++mu) {
        if (mu == mu0) continue;
        const T f = dot(eig->left[mu], rhs) / (eig->lambda[mu] - lam0);
        for (std::size_t a = 0; a < d; ++a) c[a] += eig->right[mu][a] * f;
      }
      return embed(c);
    };
    std::vector<T> e(order + 1, T(0));
    e[0] = pr.e0;
    std::vector<std::vector<T>> x(order + 1, std::vector<T>(n, T(0)));
    std::vector<std::vector<T>> y(order + 1, std::vector<T>(n, T(0)));
    x[0] = embed(eig->right[mu0]);
    if (order >= 1) e[1] = second ? w[0][0] : lam0;
    if (order >= 1) y[1] = minus_rqv(x[0]);
    if (!second) {
      for (std::size_t k = 2; k <= order; ++k) {
        const auto pvy = pv(y[k - 1]);
        e[k] = dot(l0, pvy);
        std::vector<T> rhs = neg(pvy);
        for (std::size_t r = 2; r + 1 <= k; ++r) {
          const auto xp = restrict_p(x[k - r]);
          for (std::size_t a = 0; a < d; ++a) rhs[a] += e[r] * xp[a];
        }
        x[k - 1] = solve_p(rhs);
        if (k == order) break;
        std::vector<T> psi = x[k - 1];
        for (std::size_t i = 0; i < n; ++i) psi[i] += y[k - 1][i];
        std::vector<T> t = neg(apply_columns(pr, psi));
        for (std::size_t r = 1; r <= k; ++r) {
          for (std::size_t i = 0; i < n; ++i) {
            if (!is_zero(y[k - r][i])) t[i] += e[r] * y[k - r][i];
          }
        }
        y[k] = resolvent(t);
      }
    } else {
      if (order >= 2) e[2] = lam0;
      for (std::size_t k = 3; k <= order; ++k) {
        std::vector<T> t = neg(apply_columns(pr, y[k - 2]));
        for (std::size_t r = 1; r + 1 <= k - 1; ++r) {
          for (std::size_t i = 0; i < n; ++i) {
            if (!is_zero(y[k - 1 - r][i])) t[i] += e[r] * y[k - 1 - r][i];
          }
        }
        const auto z = resolvent(t);
        const auto pvz = pv(z);
        e[k] = dot(l0, pvz);
        std::vector<T> rhs = neg(pvz);
        for (std::size_t r = 3; r + 1 <= k; ++r) {
          const auto xp = restrict_p(x[k - r]);
          for (std::size_t a = 0; a < d; ++a) rhs[a] += e[r] * xp[a];
        }
        x[k - 2] = solve_p(rhs);
        y[k - 1] = minus_rqv(x[k - 2]);
        for (std::size_t i = 0; i < n; ++i) y[k - 1][i] += z[i];
      }
    }
    result.push_back(std::move(e));
  }
  return result;
}

}  // namespace detail

/// Smallest max_shell accepted for a series of the given order from a level in `shell`.
inline int minimal_series_shell(const ModelSpec& model, int shell, std::size_t order) {
  return shell + static_cast<int>(order) * model.v.degree();
}

/// Distinct unperturbed energies of a block, lowest first, with their member indices.
inline std::vector<std::pair<ExactScalar, std::vector<std::size_t>>> unperturbed_levels(const ExactBlock& b) {
  if (!b.h0_diagonal()) throw UsageError("rs_series: h0 is not diagonal in the adapted basis of this model");
  std::vector<std::pair<ExactScalar, std::vector<std::size_t>>> out;
  for (std::size_t k = 0; k < b.size(); ++k) {
    const auto it = b.h0[k].find(k);
    const ExactScalar e = it == b.h0[k].end() ? ExactScalar(0) : it->second;
    auto f = std::find_if(out.begin(), out.end(), [&](const auto& lv) { return lv.first == e; });
    if (f == out.end()) {
      out.push_back({e, {k}});
    } else {
      f->second.push_back(k);
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return to_complex(x.first).real() < to_complex(y.first).real();
  });
  return out;
}

/**
 * Exact RS series of the `level`-th distinct unperturbed energy of the (irrep, row)
 * block, one series per member of a degenerate level. max_shell < 0 selects the
 * minimal sufficient shell.
 */
inline std::vector<PerturbationSeries> rs_series(const ModelSpec& model, const std::string& irrep, int row,
                                                 std::size_t level, std::size_t order, int max_shell = -1,
                                                 std::size_t order_cap = 8) {
  if (order > order_cap) {
    throw UsageError("rs_series: order " + std::to_string(order) + " exceeds the cap " + std::to_string(order_cap));
  }
  // The unperturbed shell of the level is found on a small block first.
  int shell0 = -1;
  {
    int probe = 0;
    while (shell0 < 0) {
      const auto b = exact_block(model, irrep, row, probe);
      if (b->size() > 0 && b->h0_diagonal()) {
        const auto lv = unperturbed_levels(*b);
        // Levels of shells below the probe are complete once the probe shell is included.
        std::size_t complete = 0;
        for (const auto& l : lv) {
          if (b->basis[l.second.front()].shell < probe) ++complete;
        }
        if (level < complete) shell0 = b->basis[lv[level].second.front()].shell;
      } else if (b->size() > 0) {
        throw UsageError("rs_series: h0 of " + model.name + " is not diagonal in the adapted basis");
      }
      if (++probe > kDefaultShellCap) throw UsageError("rs_series: level index beyond the shell cap");
    }
  }
  const int need = minimal_series_shell(model, shell0, order);
  if (max_shell < 0) max_shell = need;
  if (max_shell < need) {
    throw UsageError("rs_series: order " + std::to_string(order) + " from shell " + std::to_string(shell0) +
                     " needs max_shell >= " + std::to_string(need));
  }
  const auto b = exact_block(model, irrep, row, max_shell);
  const auto levels = unperturbed_levels(*b);
  const auto& members = levels.at(level).second;

  PerturbationSeries proto;
  proto.model = model.name;
  proto.irrep = irrep;
  proto.row = row;
  proto.level = level;
  proto.shell = shell0;
  proto.degeneracy = members.size();

  detail::RsProblem<ExactScalar> exact;
  exact.e.resize(b->size());
  for (std::size_t k = 0; k < b->size(); ++k) {
    const auto it = b->h0[k].find(k);
    exact.e[k] = it == b->h0[k].end() ? ExactScalar(0) : it->second;
  }
  exact.v.resize(b->size());
  for (std::size_t j = 0; j < b->size(); ++j) {
    for (const auto& [i, c] : b->v[j]) exact.v[j].emplace_back(i, c);
  }
  exact.p = members;
  exact.e0 = levels.at(level).first;

  std::vector<PerturbationSeries> out;
  detail::RsOutcome info;
  if (auto res = detail::rs_core(exact, order, info)) {
    for (std::size_t m = 0; m < res->size(); ++m) {
      PerturbationSeries s = proto;
      s.member = m;
      s.lifting_order = members.size() > 1 ? info.lifting_order : 1;
      s.coeffs = (*res)[m];
      for (const auto& c : s.coeffs) s.approx.push_back(to_complex_ld(c));
      out.push_back(std::move(s));
    }
    return out;
  }
  detail::RsProblem<ComplexLD> num;
  for (const auto& e : exact.e) num.e.push_back(to_complex_ld(e));
  num.v.resize(exact.v.size());
  for (std::size_t j = 0; j < exact.v.size(); ++j) {
    for (const auto& [i, c] : exact.v[j]) num.v[j].emplace_back(i, to_complex_ld(c));
  }
  num.p = exact.p;
  num.e0 = to_complex_ld(exact.e0);
  const auto res = detail::rs_core(num, order, info);
  if (!res) throw NumericalError("rs_series: lifting matrix eigensolver failed");
  for (std::size_t m = 0; m < res->size(); ++m) {
    PerturbationSeries s = proto;
    s.member = m;
    s.lifting_order = info.lifting_order;
    s.exact = false;
    s.approx = (*res)[m];
    out.push_back(std::move(s));
  }
  return out;
}

/// "2 + 1/18 a^2 - 11/864 a^4": exact coefficients, or %.17g values for float series.
inline std::string format_series(const PerturbationSeries& s, const std::string& var = "a") {
  std::string out;
  for (std::size_t k = 0; k < s.approx.size(); ++k) {
    std::string c;
    if (s.exact) {
      if (is_zero(s.coeffs[k])) continue;
      c = to_string(s.coeffs[k]);
    } else {
      if (s.approx[k] == ComplexLD(0)) continue;
      char buf[96];
      std::snprintf(buf, sizeof buf, "(%.17Lg%+.17Lgi)", s.approx[k].real(), s.approx[k].imag());
      c = buf;
    }
    bool negative = false;
    if (s.exact && is_rational(s.coeffs[k]) && sign(rational_value(s.coeffs[k])) < 0) {
      negative = true;
      c = to_string(ExactScalar(-s.coeffs[k]));
    } else if (s.exact && !is_rational(s.coeffs[k])) {
      c = "(" + c + ")";
    }
    std::string term = c;
    if (k >= 1) term += (c == "1" ? "" : " ") + var;
    if (k == 1 && c == "1") term = var;
    if (k >= 2) term += "^" + std::to_string(k);
    if (k >= 1 && c == "1") term = var + (k >= 2 ? "^" + std::to_string(k) : "");
    if (out.empty()) {
      out = (negative ? "-" : "") + term;
    } else {
      out += negative ? " - " : " + ";
      out += term;
    }
  }
  return out.empty() ? "0" : out;
}

struct ParityEntry {
  std::size_t level = 0;
  std::size_t member = 0;
  bool odd = false;   // some odd power of a has a nonzero coefficient
  bool even = false;  // some even power ≥ 2 has a nonzero coefficient
};

struct ParityReport {
  std::string model;
  std::string irrep;
  std::vector<ParityEntry> entries;

  bool all_even() const {
    return std::none_of(entries.begin(), entries.end(), [](const ParityEntry& e) { return e.odd; });
  }
  bool any_odd() const {
    return std::any_of(entries.begin(), entries.end(), [](const ParityEntry& e) { return e.odd; });
  }
};

/// Parity of the powers of a in the series of the lowest `levels` unperturbed levels of a block.
inline ParityReport series_parity_check(const ModelSpec& model, const std::string& irrep, int row,
                                        std::size_t levels, std::size_t order = 4) {
  ParityReport rep{model.name, irrep, {}};
  for (std::size_t l = 0; l < levels; ++l) {
    for (const auto& s : rs_series(model, irrep, row, l, order)) {
      ParityEntry e{l, s.member, s.has_odd_powers(), false};
      for (std::size_t k = 2; k < s.approx.size(); k += 2) {
        e.even = e.even || (s.exact ? !is_zero(s.coeffs[k]) : s.approx[k] != ComplexLD(0));
      }
      rep.entries.push_back(e);
    }
  }
  return rep;
}

struct SeriesDiscrepancy {
  Complex series_value;
  Complex diagonal_value;
  double discrepancy = 0;
  int shell = 0;
};

/// |E_diag(a) − Σ c_k a^k| with E_diag the converged block eigenvalue nearest the series value.
inline SeriesDiscrepancy series_vs_diagonalization(const ModelSpec& model, const PerturbationSeries& s, double a,
                                                   const ConvergeOptions& opt = {}) {
  SeriesDiscrepancy d;
  d.series_value = s.evaluate(a);
  std::size_t k = 0;
  {
    const auto b0 = exact_block(model, s.irrep, s.row, s.shell);
    k = b0->size() + 2;
  }
  const auto r = converge(model, a, s.irrep, s.row, k, opt);
  d.shell = r.max_shell;
  d.discrepancy = std::numeric_limits<double>::infinity();
  for (const auto& e : r.eigenvalues) {
    const double x = std::abs(e - d.series_value);
    if (x < d.discrepancy) {
      d.discrepancy = x;
      d.diagonal_value = e;
    }
  }
  return d;
}

}  // namespace ptsym
