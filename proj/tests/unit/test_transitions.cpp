// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "ptsym/models/catalog.hpp"
#include "ptsym/oracle/solvable.hpp"
#include "ptsym/transitions/transitions.hpp"

namespace {

using namespace ptsym;

TEST(Grid, EndpointsAndValidation) {
  const auto g = make_grid(0.0, 1.0, 0.25);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_DOUBLE_EQ(g.back(), 1.0);
  EXPECT_EQ(make_grid(0.01, 1.0, 0.01).size(), 100u);
  EXPECT_THROW(make_grid(0.0, 1.0, 0.0), UsageError);
  EXPECT_THROW(make_grid(1.0, 0.0, 0.1), UsageError);
}

TEST(ScanTracks, Solvable1LowestB1FollowsClosedForm) {
  const ModelSpec m = model_spec("solvable1");
  const auto tracks = scan_tracks(m, "B1", 0, make_grid(0.0, 1.0, 0.1), 2);
  ASSERT_EQ(tracks.size(), 2u);
  for (const auto& p : tracks[0].points) {
    EXPECT_TRUE(p.converged);
    const auto want = oracle::solvable1_energy(1, 0, p.a);
    EXPECT_LE(std::abs(p.value - want), 1e-8) << "a=" << p.a;
    EXPECT_NEAR(p.value.imag(), 2.0 * oracle::solvable1_frequencies(p.a).omega_i, 1e-8);
  }
  EXPECT_FALSE(tracks[0].broken());
}

TEST(ScanTracks, SinglePointAndFormatting) {
  const ModelSpec m = model_spec("solvable2");
  const auto tracks = scan_tracks(m, "A", 0, {0.6}, 1);
  ASSERT_EQ(tracks.size(), 1u);
  ASSERT_EQ(tracks[0].points.size(), 1u);
  EXPECT_LE(std::abs(tracks[0].points[0].value - oracle::solvable2_energy(0, 0, 0.6)), 1e-8);
  const auto text = format_tracks(tracks);
  EXPECT_EQ(text.rfind("# schema=ptsym-tracks/1\n", 0), 0u);
  EXPECT_NE(text.find("irrep=A"), std::string::npos);
  EXPECT_EQ(format_tracks(tracks), text);
}

TEST(ScanTracks, RejectsBadGrids) {
  const ModelSpec m = model_spec("solvable2");
  EXPECT_THROW(scan_tracks(m, "A", 0, {}, 1), UsageError);
  EXPECT_THROW(scan_tracks(m, "A", 0, {0.2, 0.1}, 1), UsageError);
  EXPECT_THROW(scan_tracks(m, "A", 0, {0.1}, 0), UsageError);
}

TEST(ExceptionalPoint, Solvable2AtUnity) {
  const ModelSpec m = model_spec("solvable2");
  // ω₁ = ω₂ couples E_10 and E_01, the two lowest levels of the B block.
  const auto ep = find_exceptional_point(m, "B", 0, {0, 1}, 0.9, 1.1);
  EXPECT_NEAR(ep.a_c, oracle::kSolvable2ExceptionalPoint, 1e-4);
  EXPECT_TRUE(ep.complex_above);
  EXPECT_FALSE(ep.trivial);
  EXPECT_LE(ep.bracket_hi - ep.bracket_lo, 1e-6);
}

TEST(ExceptionalPoint, BracketWithoutTransitionIsRejected) {
  const ModelSpec m = model_spec("solvable2");
  EXPECT_THROW(find_exceptional_point(m, "B", 0, {0, 1}, 0.2, 0.5), UsageError);
  EXPECT_THROW(find_exceptional_point(m, "B", 0, {0, 1}, 0.5, 0.2), UsageError);
}

TEST(PhaseBoundary, Solvable2FindsUnity) {
  PhaseBoundaryOptions o;
  o.grid = make_grid(0.05, 1.2, 0.05);
  const auto pb = phase_boundary(model_spec("solvable2"), 6, o);
  ASSERT_TRUE(pb.found);
  EXPECT_FALSE(pb.trivial);
  EXPECT_NEAR(pb.a_transition, 1.0, 1e-4);
}

TEST(PhaseBoundary, Solvable1IsTrivialWithLinearGrowth) {
  PhaseBoundaryOptions o;
  o.grid = make_grid(0.01, 0.2, 0.01);
  const auto pb = phase_boundary(model_spec("solvable1"), 6, o);
  EXPECT_TRUE(pb.trivial);
  EXPECT_EQ(pb.a_transition, 0.0);
  // Im E_10 = 2ω_I = a/(2ω_R) grows linearly in the B1 block.
  EXPECT_NEAR(pb.exponent, 1.0, 0.02);
  bool b1_seen = false;
  for (const auto& ib : pb.per_irrep) {
    if (ib.irrep != "B1") continue;
    b1_seen = true;
    EXPECT_TRUE(ib.complex_at_smallest_a);
    EXPECT_NEAR(ib.exponent, 1.0, 0.02);
  }
  EXPECT_TRUE(b1_seen);
}

TEST(PhaseBoundary, RejectsBadInput) {
  PhaseBoundaryOptions o;
  o.grid = {0.1};
  EXPECT_THROW(phase_boundary(model_spec("solvable2"), 4, o), UsageError);
  EXPECT_THROW(phase_boundary(model_spec("solvable2"), 0), UsageError);
}

TEST(Threshold, ScalesWithSpacing) {
  const std::vector<Complex> v{{1, 0}, {3, 0}, {5, 0}};
  EXPECT_GE(complexification_threshold(v, 1), 2e-9 * 4);
  EXPECT_GE(complexification_threshold(v, 1), 100 * std::sqrt(2.2e-16) * 2);
}

}  // namespace
