// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace ptsym::oracle {

using Complex = std::complex<double>;

/// ω = √(1 + i a/2) = ω_R + i ω_I for px² + py² + x² + y² + i a x y.
struct Solvable1Frequencies {
  double a = 0;
  double omega_r = 1;
  double omega_i = 0;
};

inline Solvable1Frequencies solvable1_frequencies(double a) {
  const double wr = std::sqrt(0.5 + 0.5 * std::sqrt(1.0 + a * a / 4.0));
  return {a, wr, a / (4.0 * wr)};
}

/// E_mn = 2(m+n+1) ω_R + 2(m−n) i ω_I; E_mn = conj(E_nm).
inline Complex solvable1_energy(int m, int n, double a) {
  if (m < 0 || n < 0) throw std::invalid_argument("solvable1_energy: m, n must be >= 0");
  const auto f = solvable1_frequencies(a);
  return {2.0 * (m + n + 1) * f.omega_r, 2.0 * (m - n) * f.omega_i};
}

/// C2v label of the (m, n) eigenstate in the rotated modes: parities of m and n.
inline std::string solvable1_symmetry_label(int m, int n) {
  if (m < 0 || n < 0) throw std::invalid_argument("solvable1_symmetry_label: m, n must be >= 0");
  const bool mo = m % 2 != 0;
  const bool no = n % 2 != 0;
  if (!mo && !no) return "A1";
  if (mo && no) return "A2";
  return mo ? "B1" : "B2";
}

/// ω₁,₂ = √(3/2 ± √(1−a²)/2) for px² + py² + 2x² + y² + i a x y.
struct Solvable2Frequencies {
  double a = 0;
  Complex omega1{std::sqrt(2.0), 0};
  Complex omega2{1, 0};
  bool extrapolated = false;  // |a| > 1: principal square-root branch, outside the closed form's stated range
};

inline Solvable2Frequencies solvable2_frequencies(double a) {
  const Complex root = std::sqrt(Complex(1.0 - a * a, 0.0));
  return {a, std::sqrt(1.5 + 0.5 * root), std::sqrt(1.5 - 0.5 * root), std::abs(a) > 1.0};
}

/// E_mn = (2m+1) ω₁ + (2n+1) ω₂.
inline Complex solvable2_energy(int m, int n, double a) {
  if (m < 0 || n < 0) throw std::invalid_argument("solvable2_energy: m, n must be >= 0");
  const auto f = solvable2_frequencies(a);
  return (2.0 * m + 1.0) * f.omega1 + (2.0 * n + 1.0) * f.omega2;
}

/// C2 label: parity of m + n under (x, y) → (−x, −y).
inline std::string solvable2_symmetry_label(int m, int n) {
  if (m < 0 || n < 0) throw std::invalid_argument("solvable2_symmetry_label: m, n must be >= 0");
  return (m + n) % 2 == 0 ? "A" : "B";
}

/// Exceptional point of solvable2, where ω₁ = ω₂.
inline constexpr double kSolvable2ExceptionalPoint = 1.0;

}  // namespace ptsym::oracle
