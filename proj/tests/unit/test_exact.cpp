// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "ptsym/exact/matrix.hpp"
#include "ptsym/exact/poly.hpp"
#include "ptsym/exact/scalar.hpp"

namespace {

using namespace ptsym;

Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-40, 40);
  std::uniform_int_distribution<long> den(1, 12);
  return ratio(num(rng), den(rng));
}

ExactScalar random_scalar(std::mt19937& rng) {
  auto real = [&] {
    return RealScalar(RealQ2(random_rational(rng), random_rational(rng)),
                      RealQ2(random_rational(rng), random_rational(rng)));
  };
  return ExactScalar(real(), real());
}

TEST(Rational, ParsesFractionsAndDecimalsExactly) {
  EXPECT_EQ(parse_rational("3/6"), ratio(1, 2));
  EXPECT_EQ(parse_rational("0.1"), ratio(1, 10));
  EXPECT_EQ(parse_rational("-0.125"), ratio(-1, 8));
  EXPECT_EQ(parse_rational("1e-3"), ratio(1, 1000));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
}

TEST(Rational, ExactSqrtOnlyForPerfectSquares) {
  EXPECT_EQ(exact_sqrt(ratio(9, 4)), ratio(3, 2));
  EXPECT_FALSE(exact_sqrt(Rational(2)).has_value());
  EXPECT_FALSE(exact_sqrt(Rational(-4)).has_value());
}

TEST(QuadExt, FieldAxiomsOnRandomElements) {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 40; ++trial) {
    const ExactScalar x = random_scalar(rng);
    const ExactScalar y = random_scalar(rng);
    const ExactScalar z = random_scalar(rng);
    EXPECT_EQ(x * (y + z), x * y + x * z);
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x * y, y * x);
    if (!is_zero(y)) {
      EXPECT_EQ((x / y) * y, x);
      EXPECT_EQ(y * y.inverse(), ExactScalar(1));
    }
  }
}

TEST(QuadExt, RadicalsSquareToIntegers) {
  const ExactScalar i = imag_unit();
  EXPECT_EQ(i * i, ExactScalar(-1));
  EXPECT_EQ(sqrt2() * sqrt2(), ExactScalar(2));
  EXPECT_EQ(sqrt3() * sqrt3(), ExactScalar(3));
  EXPECT_EQ(conj(i), -i);
  EXPECT_EQ(conj(sqrt2() + i * sqrt3()), sqrt2() - i * sqrt3());
}

TEST(QuadExt, ExactSqrtRecoversSquaresAtEveryLevel) {
  std::mt19937 rng(777);
  for (int trial = 0; trial < 30; ++trial) {
    const ExactScalar x = random_scalar(rng);
    const ExactScalar sq = x * x;
    auto r = exact_sqrt(sq);
    ASSERT_TRUE(r.has_value()) << to_string(sq);
    EXPECT_EQ(*r * *r, sq);
  }
  EXPECT_FALSE(exact_sqrt(ExactScalar(5)).has_value());
  // √(−1/4) = i/2 and √6 = √2·√3 lie in the field.
  EXPECT_EQ(exact_sqrt(ExactScalar(ratio(-1, 4))), imag_unit() * ExactScalar(ratio(1, 2)));
  auto r6 = exact_sqrt(RealScalar(6));
  ASSERT_TRUE(r6.has_value());
  EXPECT_EQ(*r6 * *r6, RealScalar(6));
}

TEST(QuadExt, RealSignIsExact) {
  // 1 − (7/10)√2 > 0, 1 − (71/100)√2 < 0 and √2 − (4/5)√3 > 0.
  EXPECT_EQ(sign(RealQ2(Rational(1), ratio(-7, 10))), 1);
  EXPECT_EQ(sign(RealQ2(Rational(1), ratio(-71, 100))), -1);
  EXPECT_EQ(sign(RealScalar(RealQ2(Rational(0), Rational(1)), RealQ2(ratio(-4, 5), Rational(0)))), 1);
}

TEST(QuadExt, TextRoundTrip) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const ExactScalar x = random_scalar(rng);
    EXPECT_EQ(parse_scalar(to_string(x)), x) << to_string(x);
  }
}

TEST(QuadExt, ToComplexMatchesFloatingArithmetic) {
  const ExactScalar x = sqrt2() * ExactScalar(ratio(3, 4)) + imag_unit() * sqrt3();
  const auto z = to_complex(x);
  EXPECT_NEAR(z.real(), 0.75 * std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(z.imag(), std::sqrt(3.0), 1e-15);
}

TEST(Poly, ArithmeticAndEvaluation) {
  using P = Poly<ExactScalar>;
  const P p(std::vector<ExactScalar>{ExactScalar(1), ExactScalar(2)});    // 1 + 2t
  const P q(std::vector<ExactScalar>{ExactScalar(-1), ExactScalar(0), ExactScalar(1)});  // t² − 1
  const P r = p * q;
  EXPECT_EQ(r.degree(), 3);
  EXPECT_EQ(r.coeff(0), ExactScalar(-1));
  EXPECT_EQ(r.coeff(3), ExactScalar(2));
  EXPECT_EQ(r.evaluate(ExactScalar(3)), ExactScalar(7 * 8));
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ(P::monomial(ExactScalar(5), 2).degree(), 2);
}

TEST(DenseMatrix, IdentityIsNeutral) {
  DenseMatrix<ExactScalar> m(2, 2);
  m(0, 0) = sqrt2();
  m(0, 1) = imag_unit();
  m(1, 0) = ExactScalar(3);
  EXPECT_EQ(m * DenseMatrix<ExactScalar>::identity(2), m);
  EXPECT_EQ(DenseMatrix<ExactScalar>::identity(2) * m, m);
}

}  // namespace
