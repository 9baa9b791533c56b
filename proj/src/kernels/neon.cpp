#include "homog/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

#include <algorithm>

namespace homog::kernels::neon {

// One float64x2_t holds a single complex double: [re, im].

void mix4(const Coeffs4& coeffs, std::array<cplx*, 4> lanes, std::size_t len) {
  float64x2_t re[16];
  float64x2_t im[16];
  for (int i = 0; i < 16; ++i) {
    re[i] = vdupq_n_f64(coeffs[i].real());
    // [-b, b] so that swap(v) * im gives [-b*vi, b*vr]
    const double b = coeffs[i].imag();
    const double pair[2] = {-b, b};
    im[i] = vld1q_f64(pair);
  }
  double* p[4];
  for (int l = 0; l < 4; ++l) p[l] = reinterpret_cast<double*>(lanes[l]);

  for (std::size_t t = 0; t < len; ++t) {
    float64x2_t v[4];
    float64x2_t w[4];
    for (int l = 0; l < 4; ++l) {
      v[l] = vld1q_f64(p[l] + 2 * t);
      w[l] = vextq_f64(v[l], v[l], 1);
    }
    float64x2_t out[4];
    for (int k = 0; k < 4; ++k) {
      float64x2_t acc = vmulq_f64(v[0], re[4 * k]);
      acc = vfmaq_f64(acc, w[0], im[4 * k]);
      for (int l = 1; l < 4; ++l) {
        acc = vfmaq_f64(acc, v[l], re[4 * k + l]);
        acc = vfmaq_f64(acc, w[l], im[4 * k + l]);
      }
      out[k] = acc;
    }
    for (int k = 0; k < 4; ++k) vst1q_f64(p[k] + 2 * t, out[k]);
  }
}

void conj_transpose(const cplx* src, cplx* dst, std::size_t rows, std::size_t cols) {
  constexpr std::size_t kBlock = 32;
  const double sign_bits[2] = {1.0, -1.0};
  const float64x2_t sign = vld1q_f64(sign_bits);
  const auto* s = reinterpret_cast<const double*>(src);
  auto* d = reinterpret_cast<double*>(dst);
  for (std::size_t c0 = 0; c0 < cols; c0 += kBlock) {
    const std::size_t c1 = std::min(cols, c0 + kBlock);
    for (std::size_t r0 = 0; r0 < rows; r0 += kBlock) {
      const std::size_t r1 = std::min(rows, r0 + kBlock);
      for (std::size_t c = c0; c < c1; ++c) {
        for (std::size_t r = r0; r < r1; ++r) {
          vst1q_f64(d + 2 * (r * cols + c), vmulq_f64(vld1q_f64(s + 2 * (c * rows + r)), sign));
        }
      }
    }
  }
}

}  // namespace homog::kernels::neon

#endif
