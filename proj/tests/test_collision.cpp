#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "homog/collision.hpp"
#include "homog/errors.hpp"

using namespace homog;

namespace {

// Dense m-qubit operator for a 4x4 gate on qubits (a, b), built index by index.
CMatrix embed(const CMatrix& u, int m, int a, int b) {
  const Eigen::Index dim = Eigen::Index{1} << m;
  const auto bit = [&](Eigen::Index i, int q) { return static_cast<int>((i >> (m - 1 - q)) & 1); };
  CMatrix full = CMatrix::Zero(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      bool rest_equal = true;
      for (int q = 0; q < m; ++q) {
        if (q != a && q != b && bit(r, q) != bit(c, q)) rest_equal = false;
      }
      if (rest_equal) full(r, c) = u(2 * bit(r, a) + bit(r, b), 2 * bit(c, a) + bit(c, b));
    }
  }
  return full;
}

double bloch_of(const DensityMatrix& q) { return (q(0, 0) - q(1, 1)).real(); }

}  // namespace

TEST(Coupling, RangeAndCachedSquares) {
  EXPECT_THROW(Coupling(0.0), ArgumentError);
  EXPECT_THROW(Coupling(-0.1), ArgumentError);
  EXPECT_THROW(Coupling(2.0), ArgumentError);
  EXPECT_NO_THROW(Coupling(std::numbers::pi / 2));
  const Coupling c(0.3);
  EXPECT_NEAR(c.c2() + c.s2(), 1.0, 1e-16);
  EXPECT_NEAR(c.c2(), std::cos(0.3) * std::cos(0.3), 1e-16);
}

TEST(PartialSwap, MatrixEntries) {
  const double eta = 0.4;
  const cplx cs{std::cos(eta), std::sin(eta)};
  const cplx is{0.0, std::sin(eta)};
  const CMatrix u = partial_swap_unitary(Coupling(eta)).matrix();
  CMatrix expect = CMatrix::Zero(4, 4);
  expect(0, 0) = expect(3, 3) = cs;
  expect(1, 1) = expect(2, 2) = std::cos(eta);
  expect(1, 2) = expect(2, 1) = is;
  EXPECT_LT((u - expect).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT(partial_swap_unitary(Coupling(eta)).unitarity_defect(), 1e-14);
}

TEST(PartialSwap, FullAngleSwapsStates) {
  Rng rng(21);
  const auto a = random_density(1, rng), b = random_density(1, rng);
  const auto out = apply_pair(tensor(a, b), 0, 1, Coupling(std::numbers::pi / 2));
  EXPECT_LT((partial_trace(out, {0}).matrix() - b.matrix()).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((partial_trace(out, {1}).matrix() - a.matrix()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(ApplyPair, MatchesDenseConjugationForEveryPair) {
  Rng rng(22);
  for (int m : {2, 3, 4}) {
    const auto rho = random_density(m, rng);
    const auto u = random_unitary(4, rng);
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        if (a == b) continue;
        const CMatrix full = embed(u.matrix(), m, a, b);
        const CMatrix expect = full * rho.matrix() * full.adjoint();
        EXPECT_LT((apply_pair(rho, a, b, u).matrix() - expect).cwiseAbs().maxCoeff(), 1e-14)
            << m << " qubits, pair (" << a << ", " << b << ")";
      }
    }
  }
}

TEST(ApplyPair, RejectsBadArguments) {
  const auto rho = DensityMatrix::maximally_mixed(2);
  const auto u = partial_swap_unitary(0.2);
  EXPECT_THROW(apply_pair(rho, 0, 0, u), ArgumentError);
  EXPECT_THROW(apply_pair(rho, 0, 2, u), ArgumentError);
  EXPECT_THROW(apply_pair(rho, 0, 1, UnitaryMatrix(CMatrix::Identity(2, 2))), ArgumentError);
}

TEST(ReducedUpdate, MatchesExactTwoQubitMarginals) {
  for (double eta : {0.01, 0.3, 1.2}) {
    for (double alpha : {0.0, 0.25, 1.0}) {
      for (double beta : {0.0, 0.6, 1.0}) {
        const auto joint = tensor(DensityMatrix::from_bloch(BlochScalar(alpha)), DensityMatrix::from_bloch(BlochScalar(beta)));
        const auto out = apply_pair(joint, 0, 1, Coupling(eta));
        const auto res = partial_trace(out, {0}), sys = partial_trace(out, {1});
        const BlochPair p = reduced_update(BlochScalar(alpha), BlochScalar(beta), Coupling(eta));
        EXPECT_NEAR(p.alpha, bloch_of(res), 1e-14);
        EXPECT_NEAR(p.beta, bloch_of(sys), 1e-14);
        // marginals stay diagonal
        EXPECT_LT(std::abs(res(0, 1)) + std::abs(sys(0, 1)), 1e-14);
      }
    }
  }
}

TEST(ReducedUpdate, ConservesSumAndStaysInUnitInterval) {
  Rng rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0), e(1e-3, std::numbers::pi / 2);
  for (int t = 0; t < 1000; ++t) {
    const double a = u(rng), b = u(rng);
    const Coupling c(e(rng));
    const BlochPair p = reduced_update(BlochScalar(a), BlochScalar(b), c);
    EXPECT_NEAR(p.alpha + p.beta, a + b, 1e-15);
    EXPECT_GE(p.alpha, std::min(a, b) - 1e-16);
    EXPECT_LE(p.alpha, std::max(a, b) + 1e-16);
  }
}
