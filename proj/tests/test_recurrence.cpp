#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "homog/errors.hpp"
#include "homog/recurrence.hpp"

using namespace homog;

namespace {

constexpr TaskDirection kP2M = TaskDirection::pure_to_mixed;
constexpr TaskDirection kM2P = TaskDirection::mixed_to_pure;

}  // namespace

TEST(Directions, NamesRoundTrip) {
  EXPECT_EQ(direction_name(kP2M), "p2m");
  EXPECT_EQ(direction_name(kM2P), "m2p");
  EXPECT_EQ(parse_direction("m2p"), kM2P);
  EXPECT_THROW(parse_direction("x"), ArgumentError);
}

TEST(Recurrence, BoundaryValuesMatchInitialConditions) {
  for (TaskDirection d : {kP2M, kM2P}) {
    const auto t = run_protocol(d, 6, 5, Coupling(0.2));
    const auto ic = initial_conditions(d);
    for (int j = 1; j <= 6; ++j) EXPECT_EQ(t.alpha(0, j), ic.reservoir);
    for (int I = 1; I <= 5; ++I) EXPECT_EQ(t.beta(I, 0), ic.system);
  }
  EXPECT_EQ(initial_conditions(kP2M).system, 1.0);
  EXPECT_EQ(initial_conditions(kP2M).reservoir, 0.0);
  EXPECT_EQ(initial_conditions(kM2P).system, 0.0);
  EXPECT_EQ(initial_conditions(kM2P).reservoir, 1.0);
}

// First iteration and single-qubit reservoir solved by hand:
//   p2m: beta(1,j) = c^j, alpha(1,j) = s c^(j-1), alpha(I,1) = 1 - c^I, beta(I,1) = 1 - s c^(I-1)
//   m2p: beta(1,j) = 1 - c^j, alpha(1,j) = 1 - s c^(j-1), alpha(I,1) = c^I, beta(I,1) = s c^(I-1)
// with c = cos^2 eta, s = sin^2 eta.
TEST(Recurrence, HandSolvedEdges) {
  const double eta = 0.37;
  const double c = std::cos(eta) * std::cos(eta), s = std::sin(eta) * std::sin(eta);
  const auto p = run_protocol(kP2M, 12, 12, Coupling(eta));
  const auto m = run_protocol(kM2P, 12, 12, Coupling(eta));
  for (int k = 1; k <= 12; ++k) {
    EXPECT_NEAR(p.beta(1, k), std::pow(c, k), 1e-14);
    EXPECT_NEAR(p.alpha(1, k), s * std::pow(c, k - 1), 1e-14);
    EXPECT_NEAR(p.alpha(k, 1), 1 - std::pow(c, k), 1e-14);
    EXPECT_NEAR(p.beta(k, 1), 1 - s * std::pow(c, k - 1), 1e-14);
    EXPECT_NEAR(m.beta(1, k), 1 - std::pow(c, k), 1e-14);
    EXPECT_NEAR(m.alpha(1, k), 1 - s * std::pow(c, k - 1), 1e-14);
    EXPECT_NEAR(m.alpha(k, 1), std::pow(c, k), 1e-14);
    EXPECT_NEAR(m.beta(k, 1), s * std::pow(c, k - 1), 1e-14);
  }
}

TEST(Recurrence, EntriesIndependentOfTotals) {
  const Coupling c(0.15);
  const auto small = run_protocol(kM2P, 5, 4, c);
  const auto big = run_protocol(kM2P, 17, 9, c);
  for (int I = 0; I <= 4; ++I)
    for (int j = 1; j <= 5; ++j) EXPECT_EQ(small.alpha(I, j), big.alpha(I, j));
  for (int I = 1; I <= 4; ++I)
    for (int j = 0; j <= 5; ++j) EXPECT_EQ(small.beta(I, j), big.beta(I, j));
}

TEST(Recurrence, StepperMatchesTrace) {
  const Coupling c(0.6);
  for (TaskDirection d : {kP2M, kM2P}) {
    const auto t = run_protocol(d, 7, 9, c);
    ProtocolStepper st(d, 7, c);
    for (int I = 1; I <= 9; ++I) {
      st.advance();
      EXPECT_EQ(st.iterations_done(), I);
      for (int j = 1; j <= 7; ++j) EXPECT_EQ(frame_flip(d, st.reservoir_frame()[j - 1]), t.alpha(I, j));
      for (int j = 0; j <= 7; ++j) EXPECT_EQ(frame_flip(d, st.system_frame()[j]), t.beta(I, j));
    }
  }
}

TEST(Recurrence, FrameKeepsSmallMixedToPureGaps) {
  // m2p, n = 1: 1 - beta(1, N) = c^N exactly, far below double spacing near 1.
  const double eta = 1.0;
  const double c = std::cos(eta) * std::cos(eta);
  const auto t = run_protocol(kM2P, 40, 1, Coupling(eta));
  EXPECT_NEAR(t.beta_frame_row(1)[40] / std::pow(c, 40), 1.0, 1e-12);
  EXPECT_EQ(t.beta(1, 40), 1.0);
}

TEST(Recurrence, DirectionsAreComplementaryEntrywise) {
  // The update is linear and fixes (1, 1), so the two traces sum to one.
  const Coupling c(0.8);
  const auto p = run_protocol(kP2M, 15, 15, c), m = run_protocol(kM2P, 15, 15, c);
  for (int I = 1; I <= 15; ++I)
    for (int j = 1; j <= 15; ++j) {
      EXPECT_NEAR(p.alpha(I, j) + m.alpha(I, j), 1.0, 1e-14);
      EXPECT_NEAR(p.beta(I, j) + m.beta(I, j), 1.0, 1e-14);
    }
}

TEST(Recurrence, BlochEntriesStayInUnitIntervalForRandomCouplings) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> e(1e-4, 1.5707963267948966);
  for (int t = 0; t < 20; ++t) {
    for (TaskDirection d : {kP2M, kM2P}) {
      const auto tr = run_protocol(d, 30, 30, Coupling(e(rng)));
      for (int I = 1; I <= 30; ++I) {
        for (double a : tr.alpha_frame_row(I)) {
          EXPECT_GE(a, 0.0);
          EXPECT_LE(a, 1.0);
        }
        for (double b : tr.beta_frame_row(I)) {
          EXPECT_GE(b, 0.0);
          EXPECT_LE(b, 1.0);
        }
      }
    }
  }
}

TEST(Recurrence, AccessorsAndCaps) {
  const auto t = run_protocol(kP2M, 3, 2, Coupling(0.1));
  EXPECT_THROW(t.alpha(3, 1), ArgumentError);
  EXPECT_THROW(t.alpha(0, 0), ArgumentError);
  EXPECT_THROW(t.beta(0, 1), ArgumentError);
  EXPECT_THROW(t.beta(1, 4), ArgumentError);
  Caps caps;
  caps.grid = 100;
  EXPECT_THROW(run_protocol(kP2M, 11, 10, Coupling(0.1), caps), ResourceError);
  EXPECT_NO_THROW(run_protocol(kP2M, 10, 10, Coupling(0.1), caps));
  EXPECT_THROW(run_protocol(kP2M, 0, 10, Coupling(0.1)), ArgumentError);
  caps.closed_form = 50;
  EXPECT_THROW(closed_form(kP2M, 8, 8, Coupling(0.1), caps), ResourceError);
}

TEST(ClosedForm, MatchesIterationOnRectangularGrids) {
  for (double eta : {0.05, 0.7, 1.5}) {
    for (TaskDirection d : {kP2M, kM2P}) {
      const auto it = run_protocol(d, 7, 12, Coupling(eta));
      const auto cf = closed_form(d, 7, 12, Coupling(eta));
      for (int I = 0; I <= 12; ++I)
        for (int j = 1; j <= 7; ++j) EXPECT_NEAR(it.alpha(I, j), cf.alpha(I, j), 1e-12);
      for (int I = 1; I <= 12; ++I)
        for (int j = 0; j <= 7; ++j) EXPECT_NEAR(it.beta(I, j), cf.beta(I, j), 1e-12);
    }
  }
}

TEST(Symmetries, HoldForRandomCouplingsAndRejectMismatch) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> e(1e-3, 1.5);
  for (int t = 0; t < 10; ++t) {
    const Coupling c(e(rng));
    const auto r = check_symmetries(run_protocol(kP2M, 25, 18, c), run_protocol(kM2P, 25, 18, c));
    EXPECT_LT(r.worst(), 1e-13);
  }
  EXPECT_THROW(check_symmetries(run_protocol(kP2M, 4, 4, Coupling(0.1)), run_protocol(kM2P, 4, 4, Coupling(0.2))),
               ArgumentError);
  EXPECT_THROW(check_symmetries(run_protocol(kP2M, 4, 4, Coupling(0.1)), run_protocol(kP2M, 4, 4, Coupling(0.1))),
               ArgumentError);
}
