// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "ptsym/group/character_table.hpp"
#include "ptsym/group/projection.hpp"
#include "ptsym/models/catalog.hpp"

namespace {

using namespace ptsym;

StateVector<ExactScalar> random_shell_vector(int dim, int shell, std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-9, 9);
  StateVector<ExactScalar> v;
  for (const auto& s : shell_states(dim, shell)) {
    add_term(v, s, ExactScalar(ratio(num(rng), 1)) + imag_unit() * ExactScalar(ratio(num(rng), 2)));
  }
  return v;
}

StateVector<ExactScalar> difference(const StateVector<ExactScalar>& x, const StateVector<ExactScalar>& y) {
  StateVector<ExactScalar> d = x;
  add_scaled(d, y, ExactScalar(-1));
  return d;
}

// Irrep content of one 3D orbit {m, n, k} under the permutation-sign group of i a x y z.
std::vector<std::string> orbit_rule(std::array<int, 3> o) {
  std::sort(o.begin(), o.end());
  const bool all_equal = o[0] == o[2];
  const bool two_equal = !all_equal && (o[0] == o[1] || o[1] == o[2]);
  int odd = 0;
  for (int x : o) odd += x % 2;
  if (all_equal) return {"A1"};
  if (two_equal) {
    const int pair = o[0] == o[1] ? o[0] : o[1];
    const int single = o[0] == o[1] ? o[2] : o[0];
    if (single % 2 == 1 && pair % 2 == 0) return {"T2"};
    if (single % 2 == 0 && pair % 2 == 1) return {"T2"};
    if (odd == 0) return {"A1", "E"};
    throw std::logic_error("orbit outside the tabulated rules");
  }
  if (odd == 1 || odd == 2) return {"T1", "T2"};
  return {"A1", "A2", "E", "E"};
}

std::vector<std::string> shell_rule(int shell) {
  std::vector<std::string> out;
  for (int m = shell; m >= 0; --m) {
    for (int n = std::min(m, shell - m); n >= 0; --n) {
      const int k = shell - m - n;
      if (k > n) continue;
      for (const auto& l : orbit_rule({m, n, k})) out.push_back(l);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

class ProjectorProperties : public ::testing::TestWithParam<std::string> {};

TEST_P(ProjectorProperties, IdempotentOrthogonalAndComplete) {
  const CharacterTable t = tables::builtin(GetParam());
  std::mt19937 rng(2024);
  for (int shell = 0; shell <= 6; ++shell) {
    const auto v = random_shell_vector(2, shell, rng);
    StateVector<ExactScalar> sum;
    for (const auto& ir : t.irreps()) {
      const auto p = apply_projector(t, ir.label, v);
      EXPECT_TRUE(difference(apply_projector(t, ir.label, p), p).empty()) << ir.label << " shell " << shell;
      for (const auto& other : t.irreps()) {
        if (other.label == ir.label) continue;
        EXPECT_TRUE(apply_projector(t, other.label, p).empty());
      }
      StateVector<ExactScalar> rows;
      for (int r = 0; r < ir.dimension; ++r) {
        const auto pr = apply_row_projector(t, ir.label, r, v);
        EXPECT_TRUE(difference(apply_row_projector(t, ir.label, r, pr), pr).empty());
        add_scaled(rows, pr, ExactScalar(1));
      }
      EXPECT_TRUE(difference(rows, p).empty()) << "rows of " << ir.label << " do not sum to P";
      // ‖Pv‖² ≤ ‖v‖², decided exactly.
      const ExactScalar gap = g_norm2(v) - g_norm2(p);
      EXPECT_TRUE(is_real(gap));
      EXPECT_GE(sign(real_part(gap)), 0);
      add_scaled(sum, p, ExactScalar(1));
    }
    EXPECT_TRUE(difference(sum, v).empty()) << "resolution of identity fails at shell " << shell;
  }
}

TEST_P(ProjectorProperties, AdaptedBasisIsOrthogonalAndCountsMatchCharacters) {
  const CharacterTable t = tables::builtin(GetParam());
  for (int shell = 0; shell <= 6; ++shell) {
    std::size_t total = 0;
    for (const auto& ir : t.irreps()) {
      for (int r = 0; r < ir.dimension; ++r) {
        const auto& b = adapted_shell(t, ir.label, r, shell);
        EXPECT_EQ(static_cast<int>(b.size()), multiplicity(t, ir.label, shell));
        total += b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
          for (std::size_t j = 0; j < i; ++j) EXPECT_TRUE(is_zero(g_inner(b[i].components, b[j].components)));
        }
      }
    }
    EXPECT_EQ(total, static_cast<std::size_t>(shell + 1));
  }
}

INSTANTIATE_TEST_SUITE_P(Groups, ProjectorProperties, ::testing::Values("C2v", "C3v", "C4v"));

TEST(Antiunitary, ProductOfReflectionsIsTheRotation) {
  const auto g = model_group("solvable1");
  ASSERT_EQ(g.antiunitary.size(), 2u);
  const GroupElement prod = compose(g.antiunitary[0], g.antiunitary[1]);
  EXPECT_FALSE(prod.time_reversal());
  EXPECT_EQ(prod, GroupElement::from_rows({{"-1", "0"}, {"0", "-1"}}));
  EXPECT_TRUE(g.table.contains(prod));
}

TEST(Invariance, EveryCatalogModelCommutesWithItsSymmetries) {
  for (const auto& name : model_names()) {
    const ModelSpec m = model_spec(name);
    const auto h = m.at(ratio(2, 3));
    const int shell = m.dimension == 3 ? 6 : 8;
    const auto t = m.table();
    for (const auto& g : t.elements()) {
      const auto rep = verify_invariance(h, shell, g);
      EXPECT_TRUE(rep.exact_zero) << name << " element " << g.key() << " residual " << rep.residual;
    }
    for (const auto& g : m.antiunitary) {
      const auto rep = verify_invariance(h, shell, g);
      EXPECT_TRUE(rep.exact_zero) << name << " antiunitary " << g.name();
    }
  }
}

TEST(Invariance, BrokenSymmetryIsDetected) {
  // i a x y is not invariant under the reflection y → −y.
  const auto h = model_spec("solvable1").at(Rational(1));
  const auto rep = verify_invariance(h, 6, GroupElement::from_rows({{"1", "0"}, {"0", "-1"}}));
  EXPECT_FALSE(rep.exact_zero);
  EXPECT_GT(rep.residual, 0.1);
}

TEST(Classify3D, ShellsMatchOrbitRules) {
  const CharacterTable t = tables::td();
  EXPECT_EQ(t.order(), 24);
  for (int shell = 0; shell <= 4; ++shell) {
    auto got = classify_shell_3d(t, shell);
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, shell_rule(shell)) << "shell " << shell;
    int dim = 0;
    for (const auto& l : got) dim += t.irrep(l).dimension;
    EXPECT_EQ(dim, (shell + 1) * (shell + 2) / 2);
  }
}

TEST(Classify3D, DimensionTotalsBeyondTheTable) {
  const CharacterTable t = tables::td();
  for (int shell = 5; shell <= 7; ++shell) {
    int dim = 0;
    for (const auto& l : classify_shell_3d(t, shell)) dim += t.irrep(l).dimension;
    EXPECT_EQ(dim, (shell + 1) * (shell + 2) / 2);
  }
  EXPECT_THROW(classify_shell_3d(tables::c2v(), 1), std::invalid_argument);
  EXPECT_THROW(classify_shell_3d(t, -1), std::invalid_argument);
}

TEST(CharacterTable, JsonRoundTripAndValidation) {
  const CharacterTable t = tables::c3v();
  const CharacterTable back = table_from_json(to_json(t));
  EXPECT_EQ(back.fingerprint(), t.fingerprint());
  EXPECT_EQ(back.order(), 6);
  // A wrong class size is rejected on construction.
  EXPECT_THROW(CharacterTable("bad", 2, {{"E", GroupElement::identity(2), 1}, {"C2", GroupElement::from_rows({{"-1", "0"}, {"0", "-1"}}), 2}},
                              {{"A", 1, {1, 1}}, {"B", 1, {1, -1}}}),
               std::invalid_argument);
}

}  // namespace
