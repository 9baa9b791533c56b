#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "homog/errors.hpp"
#include "homog/metrics.hpp"

using namespace homog;

namespace {

constexpr TaskDirection kP2M = TaskDirection::pure_to_mixed;
constexpr TaskDirection kM2P = TaskDirection::mixed_to_pure;

// Reference state xi^0 each direction homogenizes towards.
DensityMatrix reference(TaskDirection d) {
  return d == kP2M ? DensityMatrix::maximally_mixed(1) : DensityMatrix::basis_state(1, 0);
}

// 1 - F(system, xi^0) straight from the density matrices.
double error_oracle(TaskDirection d, double beta) {
  return 1.0 - qubit_fidelity(DensityMatrix::from_bloch(BlochScalar(beta)), reference(d));
}

}  // namespace

TEST(Metrics, ErrorAndFidelityFactorsMatchDensityMatrixForms) {
  for (TaskDirection d : {kP2M, kM2P}) {
    for (double r : {0.0, 0.1, 0.5, 0.9, 0.999, 1.0}) {
      EXPECT_NEAR(error_from_bloch(d, r), error_oracle(d, r), 1e-14);
      // reservoir qubits start in xi^0 too
      const double f = qubit_fidelity(DensityMatrix::from_bloch(BlochScalar(r)), reference(d));
      EXPECT_NEAR(std::exp(log_fidelity_factor(d, r)), f, 1e-14);
    }
  }
}

TEST(Metrics, StableFormKeepsRelativeAccuracyForTinyBloch) {
  // (1 - sqrt(1 - b^2)) / 2 ~ b^2 / 4 for small b.
  const double b = 1e-9;
  EXPECT_NEAR(error_from_bloch(kP2M, b) / (b * b / 4.0), 1.0, 1e-12);
}

TEST(Metrics, SingleQubitSingleIterationValues) {
  // N = n = 1 at eta = 0.5: beta = c for p2m, s for m2p; the reservoir qubit is s or c.
  const double c = std::cos(0.5) * std::cos(0.5), s = 1.0 - c;
  const auto p = relative_deterioration(run_protocol(kP2M, 1, 1, Coupling(0.5)));
  const auto m = relative_deterioration(run_protocol(kM2P, 1, 1, Coupling(0.5)));
  EXPECT_NEAR(p.epsilon, (1 - std::sqrt(1 - c * c)) / 2, 1e-15);
  EXPECT_NEAR(p.delta(), (1 + std::sqrt(1 - s * s)) / 2, 1e-15);
  EXPECT_NEAR(m.epsilon, (1 - s) / 2, 1e-15);
  EXPECT_NEAR(m.delta(), (1 + c) / 2, 1e-15);
  EXPECT_NEAR(p.R, 0.18353, 1e-5);
  EXPECT_NEAR(m.R, 0.43508, 1e-5);
  EXPECT_NEAR(p.log_R, std::log(p.R), 1e-14);
}

TEST(Metrics, SurfaceOrderingAndAgreementWithPointwiseRecords) {
  const Coupling c(0.1);
  const auto surface = metrics_surface(kM2P, c, 9, 7);
  ASSERT_EQ(surface.size(), 63U);
  const auto trace = run_protocol(kM2P, 9, 7, c);
  std::size_t i = 0;
  for (int N = 1; N <= 9; ++N) {
    for (int n = 1; n <= 7; ++n, ++i) {
      const auto& r = surface[i];
      EXPECT_EQ(r.N, N);
      EXPECT_EQ(r.n, n);
      const auto ref = relative_deterioration(trace, N, n);
      EXPECT_NEAR(r.epsilon, ref.epsilon, 1e-15);
      EXPECT_NEAR(r.log_delta, ref.log_delta, 1e-13);
      EXPECT_NO_THROW(r.validate());
    }
  }
}

TEST(Metrics, AsymmetryHoldsOnTestGrid) {
  for (double eta : {0.01, 0.05, 0.1, 0.3, 0.5, 1.0}) {
    const auto p = metrics_surface(kP2M, Coupling(eta), 30, 30);
    const auto m = metrics_surface(kM2P, Coupling(eta), 30, 30);
    for (std::size_t i = 0; i < p.size(); ++i) {
      EXPECT_GE(m[i].R, p[i].R) << "eta " << eta << " N " << p[i].N << " n " << p[i].n;
    }
  }
}

TEST(Metrics, ErrorBoundedByHalf) {
  for (TaskDirection d : {kP2M, kM2P}) {
    for (const auto& r : metrics_surface(d, Coupling(0.7), 20, 20)) {
      EXPECT_GE(r.epsilon, 0.0);
      EXPECT_LE(r.epsilon, 0.5);
      EXPECT_LE(r.log_delta, 0.0);
    }
  }
}

TEST(Metrics, RecordEdgeCasesAndValidation) {
  const auto zero = make_record(Engine::approx, kP2M, 0.1, 1, 1, 0.0, -0.5);
  EXPECT_EQ(zero.R, 0.0);
  EXPECT_EQ(zero.log_R, -std::numeric_limits<double>::infinity());
  const auto total = make_record(Engine::exact, kM2P, 0.1, 1, 1, 0.2, -std::numeric_limits<double>::infinity());
  EXPECT_TRUE(total.total_degradation());
  EXPECT_TRUE(std::isinf(total.R));
  EXPECT_NO_THROW(total.validate());

  auto bad = make_record(Engine::approx, kP2M, 0.1, 1, 1, 0.2, -0.1);
  bad.R *= 1.01;
  EXPECT_THROW(bad.validate(), InvariantError);
  EXPECT_THROW(make_record(Engine::approx, kP2M, 0.1, 1, 1, 1.5, -0.1).validate(), InvariantError);
  EXPECT_THROW(make_record(Engine::approx, kP2M, 0.1, 1, 1, 0.2, 0.1).validate(), InvariantError);
}
