// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "ptsym/exact/poly.hpp"
#include "ptsym/models/catalog.hpp"
#include "ptsym/oracle/solvable.hpp"
#include "ptsym/spectra/block.hpp"
#include "ptsym/spectra/charpoly.hpp"
#include "ptsym/spectra/record.hpp"
#include "ptsym/spectra/spectrum.hpp"

namespace {

using namespace ptsym;

// Closed-form values of one C2v irrep of solvable1 up to a total quantum number.
std::vector<Complex> solvable1_irrep_values(const std::string& irrep, double a, int top) {
  std::vector<Complex> out;
  for (int m = 0; m <= top; ++m) {
    for (int n = 0; m + n <= top; ++n) {
      if (oracle::solvable1_symmetry_label(m, n) == irrep) out.push_back(oracle::solvable1_energy(m, n, a));
    }
  }
  return out;
}

double nearest(const Complex& e, const std::vector<Complex>& pool) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& x : pool) d = std::min(d, std::abs(e - x));
  return d;
}

TEST(Block, Solvable1MatchesClosedFormPerIrrep) {
  const ModelSpec m = model_spec("solvable1");
  for (double a : {0.1, 0.5}) {
    for (const std::string ir : {"A1", "A2", "B1", "B2"}) {
      const auto r = converge(m, a, ir, 0, 6);
      ASSERT_TRUE(r.fully_converged) << ir << " a=" << a;
      EXPECT_LE(r.max_shell, 40);
      const auto pool = solvable1_irrep_values(ir, a, 16);
      for (std::size_t k = 0; k < 6; ++k) EXPECT_LE(nearest(r.eigenvalues[k], pool), 1e-8) << ir << " level " << k;
    }
  }
}

TEST(Block, Solvable1ReferenceDigits) {
  const ModelSpec m = model_spec("solvable1");
  const auto a1 = converge(m, 0.5, "A1", 0, 1);
  EXPECT_NEAR(a1.eigenvalues[0].real(), 2.0 * oracle::solvable1_frequencies(0.5).omega_r, 1e-10);
  EXPECT_NEAR(a1.eigenvalues[0].real(), 2.01532946, 1e-8);
  const auto b1 = converge(m, 0.5, "B1", 0, 1);
  EXPECT_NEAR(b1.eigenvalues[0].real(), 4.03065891, 1e-8);
  EXPECT_NEAR(b1.eigenvalues[0].imag(), 0.24809839, 1e-8);
}

TEST(Block, Solvable2GroundAgainstClosedForm) {
  const ModelSpec m = model_spec("solvable2");
  const auto r = converge(m, 0.6, "A", 0, 4);
  ASSERT_TRUE(r.fully_converged);
  EXPECT_NEAR(std::abs(r.eigenvalues[0] - oracle::solvable2_energy(0, 0, 0.6)), 0.0, 1e-8);
  EXPECT_NEAR(r.eigenvalues[0].real(), 2.42721372, 1e-8);
}

TEST(Block, BlocksPartitionTheFullSpectrum) {
  for (const std::string name : {"solvable1", "henon_heiles", "barbanis", "pullen_edmonds"}) {
    const ModelSpec m = model_spec(name);
    const int shell = 10;
    const double a = 0.3;
    const auto full = full_spectrum(m, a, shell);
    std::vector<Complex> pooled;
    const auto t = m.table();
    for (const auto& ir : t.irreps()) {
      for (int row = 0; row < ir.dimension; ++row) {
        const auto b = block_spectrum(m, a, ir.label, row, shell);
        pooled.insert(pooled.end(), b.eigenvalues.begin(), b.eigenvalues.end());
      }
    }
    ASSERT_EQ(pooled.size(), full.size()) << name;
    std::sort(pooled.begin(), pooled.end(), spectral_less);
    for (std::size_t k = 0; k < pooled.size(); ++k) {
      EXPECT_LE(nearest(pooled[k], full.eigenvalues), 1e-8 * (1 + std::abs(pooled[k]))) << name << " " << k;
    }
  }
}

TEST(Block, HenonHeilesERowsAreDegenerate) {
  const ModelSpec m = model_spec("henon_heiles");
  const auto r0 = block_spectrum(m, 0.1, "E", 0, 20);
  const auto r1 = block_spectrum(m, 0.1, "E", 1, 20);
  ASSERT_EQ(r0.size(), r1.size());
  // Levels far below the cutoff; the top of each truncated block differs between rows.
  for (std::size_t k = 0; k < 20; ++k) EXPECT_LE(std::abs(r0.eigenvalues[k] - r1.eigenvalues[k]), 1e-8);
}

TEST(Block, ClosureUnderTheHamiltonian) {
  const ModelSpec m = model_spec("henon_heiles");
  const auto h = m.at(Rational(1));
  const CharacterTable t = m.table();
  for (const auto& ir : t.irreps()) {
    for (int row = 0; row < ir.dimension; ++row) EXPECT_GT(check_block_closure(h, t, ir.label, row, 8), 0u);
  }
}

TEST(Spectrum, ConvergeReportsPartialAtTheCap) {
  const ModelSpec m = model_spec("solvable1");
  ConvergeOptions o;
  o.tol = 1e-14;
  o.shell_cap = 8;
  const auto r = converge(m, 1.0, "A1", 0, 4, o);
  EXPECT_FALSE(r.fully_converged);
  EXPECT_EQ(r.max_shell, 8);
  EXPECT_THROW(converge(m, 1.0, "A1", 0, 4, ConvergeOptions{0.0}), UsageError);
}

TEST(Spectrum, ConjugatePairingOfB1AndB2) {
  const ModelSpec m = model_spec("pullen_edmonds");
  const auto b1 = block_spectrum(m, 0.5, "B1", 0, 20);
  const auto b2 = block_spectrum(m, 0.5, "B2", 0, 20);
  const auto rep = conjugate_pairing(b1, b2, 1e-8);
  EXPECT_TRUE(rep.complete());
  EXPECT_LE(rep.max_deviation, 1e-8);
  const auto other = block_spectrum(m, 0.4, "B2", 0, 20);
  EXPECT_THROW(conjugate_pairing(b1, other, 1e-8), UsageError);
  EXPECT_THROW(conjugate_pairing(std::vector<Complex>{1.0}, std::vector<Complex>{}, 1e-8), UsageError);
}

TEST(Spectrum, RealityClassification) {
  const std::vector<Complex> v{{1, 0}, {2, 0.5}, {2, -0.5}, {3, 1e-12}, {4, 0.2}};
  const auto p = reality_classify(v);
  EXPECT_EQ(p.real.size(), 2u);
  ASSERT_EQ(p.pairs.size(), 1u);
  EXPECT_EQ(p.pairs[0], std::make_pair(std::size_t{2}, std::size_t{1}));
  EXPECT_EQ(p.unpaired, std::vector<std::size_t>{4});
}

TEST(Record, RoundTripIsExact) {
  const ModelSpec m = model_spec("pullen_edmonds", ShapeParams{ratio(1, 2), ratio(1, 10)});
  const auto r = converge(m, 0.3, "B1", 0, 3);
  const auto line = to_record(r);
  const auto back = parse_record(line);
  EXPECT_TRUE(same_record(r, back));
  EXPECT_EQ(back.shape.alpha, ratio(1, 2));
  EXPECT_EQ(back.eigenvalues, r.eigenvalues);
  EXPECT_EQ(to_record(back), line);
  EXPECT_THROW(parse_record("schema=other/1\tmodel=x"), std::exception);
}

TEST(Record, FullBasisUsesDash) {
  const auto r = full_spectrum(model_spec("solvable2"), 0.5, 3);
  const auto line = to_record(r);
  EXPECT_NE(line.find("irrep=-"), std::string::npos);
  EXPECT_TRUE(same_record(r, parse_record(line)));
}

TEST(CharPoly, ThreeStateClosedForm) {
  // Shell ≤ 1 of solvable1: H = diag(2) ⊕ [[4, g/2], [g/2, 4]] with g = i a.
  using P = Poly<ExactScalar>;
  const P e_minus_2(std::vector<ExactScalar>{ExactScalar(-2)});
  const auto p = char_poly_exact(model_spec("solvable1"), 1);
  ASSERT_EQ(p.dimension(), 3u);
  // (E − 2)((E − 4)² − g²/4) expanded by hand in powers of E.
  const P c0(std::vector<ExactScalar>{ExactScalar(-32), ExactScalar(0), ExactScalar(ratio(1, 2))});
  const P c1(std::vector<ExactScalar>{ExactScalar(32), ExactScalar(0), ExactScalar(ratio(-1, 4))});
  EXPECT_EQ(p.coeffs[0], c0);
  EXPECT_EQ(p.coeffs[1], c1);
  EXPECT_EQ(p.coeffs[2], P(ExactScalar(-10)));
  EXPECT_EQ(p.coeffs[3], P(ExactScalar(1)));
  // Spot check the determinant at E = 3, g = 2: (1)(1 − 1) = 0.
  EXPECT_TRUE(is_zero(p.evaluate(ExactScalar(3), ExactScalar(2))));
}

TEST(CharPoly, FullBasisEvenInGAndB1BlockOdd) {
  for (const auto& name : model_names()) {
    const ModelSpec m = model_spec(name);
    if (m.dimension != 2) continue;
    EXPECT_FALSE(char_poly_exact(m, 4).has_odd_g()) << name;
  }
  const auto b1 = char_poly_exact(model_spec("pullen_edmonds"), "B1", 0, 6);
  EXPECT_TRUE(b1.has_odd_g());
  EXPECT_GT(b1.odd_g_terms(), 0u);
  EXPECT_FALSE(char_poly_exact(model_spec("pullen_edmonds"), "A1", 0, 6).has_odd_g());
}

TEST(CharPoly, RootsAgreeWithDiagonalization) {
  const ModelSpec m = model_spec("henon_heiles");
  const auto p = char_poly_exact(m, "A1", 0, 6);
  const double a = 0.3;
  const auto r = block_spectrum(m, a, "A1", 0, 6);
  for (const auto& e : r.eigenvalues) {
    std::complex<double> s = 0;
    const std::complex<double> g(0, a);
    for (std::size_t k = p.coeffs.size(); k-- > 0;) {
      std::complex<double> c = 0;
      const auto& cc = p.coeffs[k].coeffs();
      for (std::size_t j = cc.size(); j-- > 0;) c = c * g + to_complex(cc[j]);
      s = s * e + c;
    }
    double scale = 1;
    for (std::size_t k = 0; k < p.dimension(); ++k) scale *= 1 + std::abs(e);
    EXPECT_LE(std::abs(s) / scale, 1e-9);
  }
}

}  // namespace
