#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "homog/analysis.hpp"
#include "homog/errors.hpp"

using namespace homog;

namespace {

constexpr TaskDirection kP2M = TaskDirection::pure_to_mixed;
constexpr TaskDirection kM2P = TaskDirection::mixed_to_pure;

std::vector<DiagonalPoint> series(std::initializer_list<double> values) {
  std::vector<DiagonalPoint> s;
  int k = 1;
  for (double v : values) s.push_back({k++, v});
  return s;
}

// Smallest N whose single-iteration error is within eps, from the closed n = 1
// forms: p2m beta = c^N, m2p beta = 1 - c^N (c = cos^2 eta).
int first_iteration_n_min(TaskDirection d, double eta, double eps) {
  const double c = std::cos(eta) * std::cos(eta);
  for (int N = 1;; ++N) {
    const double cn = std::pow(c, N);
    const double e = d == kP2M ? (1 - std::sqrt(1 - cn * cn)) / 2 : cn / 2;
    if (e <= eps) return N;
  }
}

}  // namespace

TEST(Entropy, TotalMatchesSurfaceAndBoundary) {
  const Coupling c(0.2);
  const auto s = entropy_surface(c, 8, 6);
  for (int N = 1; N <= 8; ++N) {
    EXPECT_EQ(s.at(N, 0), N);
    for (int n = 0; n <= 6; ++n) EXPECT_NEAR(s.at(N, n), entropy_total(c, N, n), 1e-12);
  }
  EXPECT_THROW(s.at(9, 0), ArgumentError);
}

TEST(Entropy, SumOfMarginalEntropiesFromTraces) {
  const Coupling c(0.45);
  const auto p = run_protocol(kP2M, 5, 4, c), m = run_protocol(kM2P, 5, 4, c);
  double expect = 0.0;
  for (int j = 1; j <= 5; ++j) {
    expect += von_neumann_entropy(DensityMatrix::from_bloch(BlochScalar(p.alpha(4, j))));
    expect += von_neumann_entropy(DensityMatrix::from_bloch(BlochScalar(m.alpha(4, j))));
  }
  EXPECT_NEAR(entropy_total(c, 5, 4), expect, 1e-10);
}

TEST(Resources, FirstIterationMatchesClosedFormScan) {
  for (double eta : {0.2, 0.3, 0.6}) {
    for (double eps : {0.01, 0.1, 0.3}) {
      for (TaskDirection d : {kP2M, kM2P}) {
        const auto s = find_min_reservoir(d, Coupling(eta), eps, 1);
        ASSERT_TRUE(s.N_min.has_value());
        EXPECT_EQ(*s.N_min, first_iteration_n_min(d, eta, eps)) << eta << " " << eps;
      }
    }
  }
  EXPECT_EQ(first_iteration_n_min(kP2M, 0.3, 0.1), 6);
  EXPECT_EQ(first_iteration_n_min(kM2P, 0.3, 0.1), 18);
}

TEST(Resources, SearchMatchesLinearScan) {
  for (TaskDirection d : {kP2M, kM2P}) {
    for (int n : {1, 3, 10}) {
      const Coupling c(0.35);
      int linear = 1;
      while (!meets_accuracy(d, c, 0.15, linear, n)) ++linear;
      EXPECT_EQ(find_min_reservoir(d, c, 0.15, n).N_min, linear);
    }
  }
}

TEST(Resources, UnsatisfiableWithinCapReportsNone) {
  Caps caps;
  caps.grid = 40;
  const auto s = find_min_reservoir(kM2P, Coupling(0.05), 0.01, 2, caps);
  EXPECT_FALSE(s.N_min.has_value());
  EXPECT_EQ(s.cap, 20);
  EXPECT_THROW(find_min_reservoir(kP2M, Coupling(0.1), 0.5, 1), ArgumentError);
  EXPECT_THROW(find_min_reservoir(kP2M, Coupling(0.1), 0.1, 0), ArgumentError);
}

TEST(Resources, CurveMonotoneAndDirectionOrdered) {
  const auto p = resource_curve(kP2M, Coupling(0.5), 0.05, 20);
  const auto m = resource_curve(kM2P, Coupling(0.5), 0.05, 20);
  for (std::size_t i = 0; i < p.points.size(); ++i) {
    EXPECT_GE(*m.points[i].second.N_min, *p.points[i].second.N_min);
    if (i > 0) EXPECT_GE(*p.points[i].second.N_min, *p.points[i - 1].second.N_min);
  }
}

TEST(Lifetime, InverseOfAccuracyCheck) {
  for (TaskDirection d : {kP2M, kM2P}) {
    const Coupling c(0.3);
    for (int N : {6, 18, 25}) {
      const int L = lifetime(d, c, 0.1, N, {}, 500);
      if (L < 500) EXPECT_FALSE(meets_accuracy(d, c, 0.1, N, L + 1));
      if (L > 0) EXPECT_TRUE(meets_accuracy(d, c, 0.1, N, L));
    }
    EXPECT_EQ(lifetime(d, c, 0.1, 1, {}, 500), 0);
  }
}

TEST(Compare, GapsAndCap) {
  const auto rows = compare_engines(kM2P, Coupling(0.1), 3);
  ASSERT_EQ(rows.size(), 3U);
  EXPECT_LT(rows[0].relative_gap(), 1e-14);
  EXPECT_GT(rows[2].relative_gap(), 0.0);
  Caps caps;
  caps.exact_qubits = 2;
  EXPECT_THROW(compare_engines(kM2P, Coupling(0.1), 3, caps), ResourceError);
}

TEST(Classify, SyntheticSeries) {
  EXPECT_EQ(classify_possibility(series({5, 4, 3, 2, 1, 0, -1, -2, -3, -4})), Verdict::converging);
  EXPECT_EQ(classify_possibility(series({0, 1, 2, 3, 4, 5, 6, 7, 8, 9})), Verdict::diverging);
  // only the second half counts
  EXPECT_EQ(classify_possibility(series({9, 0, 9, 0, 9, 1, 2, 3, 4, 5})), Verdict::diverging);
  EXPECT_EQ(classify_possibility(series({1, 1, 1, 1, 1, 1, 1, 1, 1, 1})), Verdict::inconclusive);
  EXPECT_EQ(classify_possibility(series({0, 0, 0, 0, 0, 1, 2, 1, 2, 3})), Verdict::inconclusive);
  EXPECT_THROW(classify_possibility(series({3, 2, 1})), ArgumentError);
}

TEST(Classify, DiagonalSeriesMatchesRecords) {
  const Coupling c(0.01);
  const auto s = diagonal_series(kM2P, c, 12);
  const auto t = run_protocol(kM2P, 12, 12, c);
  for (const auto& p : s) EXPECT_NEAR(p.log_R, relative_deterioration(t, p.k, p.k).log_R, 1e-15);
}
