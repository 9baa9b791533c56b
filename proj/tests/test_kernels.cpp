#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "homog/collision.hpp"
#include "homog/kernels.hpp"

namespace homog::kernels {
void PrintTo(Isa isa, std::ostream* os) { *os << isa_name(isa); }
}  // namespace homog::kernels

namespace hk = homog::kernels;
using hk::cplx;

namespace {

std::vector<cplx> random_values(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

hk::Coeffs4 random_coeffs(std::mt19937_64& rng) {
  hk::Coeffs4 c;
  auto v = random_values(16, rng);
  std::copy(v.begin(), v.end(), c.begin());
  return c;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST(Kernels, ScalarAlwaysAvailableAndActiveIsListed) {
  const auto isas = hk::available();
  ASSERT_FALSE(isas.empty());
  EXPECT_EQ(isas.front(), hk::Isa::scalar);
  EXPECT_NE(std::find(isas.begin(), isas.end(), hk::active().isa), isas.end());
}

TEST(Kernels, ScalarMix4MatchesNaiveSum) {
  std::mt19937_64 rng(1);
  const auto m = random_coeffs(rng);
  const std::size_t len = 5;
  std::array<std::vector<cplx>, 4> lanes;
  for (auto& l : lanes) l = random_values(len, rng);
  auto expect = lanes;
  for (std::size_t t = 0; t < len; ++t) {
    for (int k = 0; k < 4; ++k) {
      cplx s = 0.0;
      for (int l = 0; l < 4; ++l) s += m[4 * k + l] * lanes[l][t];
      expect[k][t] = s;
    }
  }
  hk::scalar::mix4(m, {lanes[0].data(), lanes[1].data(), lanes[2].data(), lanes[3].data()}, len);
  for (int k = 0; k < 4; ++k) EXPECT_LT(max_diff(lanes[k], expect[k]), 1e-14);
}

TEST(Kernels, ScalarConjTransposeMatchesDefinition) {
  std::mt19937_64 rng(2);
  const std::size_t rows = 3, cols = 5;
  const auto src = random_values(rows * cols, rng);
  std::vector<cplx> dst(rows * cols);
  hk::scalar::conj_transpose(src.data(), dst.data(), rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) EXPECT_EQ(dst[i * cols + j], std::conj(src[j * rows + i]));
  }
}

class KernelEquivalence : public ::testing::TestWithParam<hk::Isa> {};

TEST_P(KernelEquivalence, Mix4MatchesScalarAcrossLengths) {
  const auto& simd = hk::table(GetParam());
  std::mt19937_64 rng(3);
  for (std::size_t len : {0, 1, 2, 3, 7, 64, 1001}) {
    const auto m = random_coeffs(rng);
    std::array<std::vector<cplx>, 4> a;
    for (auto& l : a) l = random_values(len, rng);
    auto b = a;
    hk::scalar::mix4(m, {a[0].data(), a[1].data(), a[2].data(), a[3].data()}, len);
    simd.mix4(m, {b[0].data(), b[1].data(), b[2].data(), b[3].data()}, len);
    for (int k = 0; k < 4; ++k) EXPECT_LT(max_diff(a[k], b[k]), 1e-13) << "len " << len;
  }
}

TEST_P(KernelEquivalence, ConjTransposeMatchesScalarAcrossShapes) {
  const auto& simd = hk::table(GetParam());
  std::mt19937_64 rng(4);
  for (auto [rows, cols] : std::vector<std::pair<std::size_t, std::size_t>>{
           {1, 1}, {2, 2}, {3, 5}, {4, 4}, {7, 2}, {16, 16}, {33, 31}}) {
    const auto src = random_values(rows * cols, rng);
    std::vector<cplx> a(rows * cols), b(rows * cols);
    hk::scalar::conj_transpose(src.data(), a.data(), rows, cols);
    simd.conj_transpose(src.data(), b.data(), rows, cols);
    EXPECT_EQ(a, b) << rows << "x" << cols;
  }
}

TEST_P(KernelEquivalence, PairUpdateMatchesScalarOnRandomStates) {
  const auto& simd = hk::table(GetParam());
  const auto& ref = hk::table(hk::Isa::scalar);
  homog::Rng rng(5);
  for (int qubits : {2, 3, 5}) {
    const auto rho = homog::random_density(qubits, rng);
    const auto u = homog::random_unitary(4, rng);
    for (int a = 0; a < qubits; ++a) {
      for (int b = 0; b < qubits; ++b) {
        if (a == b) continue;
        homog::CMatrix x = rho.matrix(), y = rho.matrix();
        homog::PairWorkspace wx, wy;
        homog::apply_pair_inplace(x, a, b, u, wx, ref);
        homog::apply_pair_inplace(y, a, b, u, wy, simd);
        EXPECT_LT((x - y).cwiseAbs().maxCoeff(), 1e-14) << qubits << " qubits, pair " << a << b;
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Available, KernelEquivalence, ::testing::ValuesIn(hk::available()),
                         [](const auto& info) { return std::string(hk::isa_name(info.param)); });
