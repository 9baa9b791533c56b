#include "homog/kernels.hpp"

#include <algorithm>

namespace homog::kernels::scalar {

void mix4(const Coeffs4& coeffs, std::array<cplx*, 4> lanes, std::size_t len) {
  double mr[16];
  double mi[16];
  for (int i = 0; i < 16; ++i) {
    mr[i] = coeffs[i].real();
    mi[i] = coeffs[i].imag();
  }
  for (std::size_t t = 0; t < len; ++t) {
    double vr[4];
    double vi[4];
    for (int l = 0; l < 4; ++l) {
      vr[l] = lanes[l][t].real();
      vi[l] = lanes[l][t].imag();
    }
    for (int k = 0; k < 4; ++k) {
      double re = 0.0;
      double im = 0.0;
      for (int l = 0; l < 4; ++l) {
        re += mr[4 * k + l] * vr[l] - mi[4 * k + l] * vi[l];
        im += mr[4 * k + l] * vi[l] + mi[4 * k + l] * vr[l];
      }
      lanes[k][t] = cplx(re, im);
    }
  }
}

void conj_transpose(const cplx* src, cplx* dst, std::size_t rows, std::size_t cols) {
  constexpr std::size_t kBlock = 32;
  for (std::size_t c0 = 0; c0 < cols; c0 += kBlock) {
    const std::size_t c1 = std::min(cols, c0 + kBlock);
    for (std::size_t r0 = 0; r0 < rows; r0 += kBlock) {
      const std::size_t r1 = std::min(rows, r0 + kBlock);
      for (std::size_t c = c0; c < c1; ++c) {
        for (std::size_t r = r0; r < r1; ++r) {
          dst[r * cols + c] = std::conj(src[c * rows + r]);
        }
      }
    }
  }
}

}  // namespace homog::kernels::scalar
