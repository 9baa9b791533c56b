// AVX2/FMA variants. Functions carry a target attribute instead of the whole
// file being built with -mavx2, so no AVX2 code leaks into shared inline
// instantiations on machines without it.

#include "homog/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <algorithm>

#define HOMOG_AVX2 __attribute__((target("avx2,fma")))

namespace homog::kernels::avx2 {

namespace {

// One register holds two complex doubles: [re0, im0, re1, im1].
HOMOG_AVX2 inline __m256d swap_re_im(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

HOMOG_AVX2 inline __m256d conj2(__m256d v) {
  const __m256d sign = _mm256_setr_pd(0.0, -0.0, 0.0, -0.0);
  return _mm256_xor_pd(v, sign);
}

}  // namespace

HOMOG_AVX2 void mix4(const Coeffs4& coeffs, std::array<cplx*, 4> lanes, std::size_t len) {
  __m256d re[16];
  __m256d im[16];
  for (int i = 0; i < 16; ++i) {
    re[i] = _mm256_set1_pd(coeffs[i].real());
    im[i] = _mm256_set1_pd(coeffs[i].imag());
  }
  double* p[4];
  for (int l = 0; l < 4; ++l) p[l] = reinterpret_cast<double*>(lanes[l]);

  std::size_t t = 0;
  for (; t + 2 <= len; t += 2) {
    const std::size_t off = 2 * t;
    __m256d v[4];
    __m256d w[4];
    for (int l = 0; l < 4; ++l) {
      v[l] = _mm256_loadu_pd(p[l] + off);
      w[l] = swap_re_im(v[l]);
    }
    __m256d out[4];
    for (int k = 0; k < 4; ++k) {
      __m256d acc_a = _mm256_mul_pd(v[0], re[4 * k]);
      __m256d acc_b = _mm256_mul_pd(w[0], im[4 * k]);
      for (int l = 1; l < 4; ++l) {
        acc_a = _mm256_fmadd_pd(v[l], re[4 * k + l], acc_a);
        acc_b = _mm256_fmadd_pd(w[l], im[4 * k + l], acc_b);
      }
      // even lanes: sum(a re) - sum(b im); odd lanes: sum(a im) + sum(b re)
      out[k] = _mm256_addsub_pd(acc_a, acc_b);
    }
    for (int k = 0; k < 4; ++k) _mm256_storeu_pd(p[k] + off, out[k]);
  }
  if (t < len) {
    std::array<cplx*, 4> tail{lanes[0] + t, lanes[1] + t, lanes[2] + t, lanes[3] + t};
    scalar::mix4(coeffs, tail, len - t);
  }
}

HOMOG_AVX2 void conj_transpose(const cplx* src, cplx* dst, std::size_t rows, std::size_t cols) {
  constexpr std::size_t kBlock = 32;
  const auto* s = reinterpret_cast<const double*>(src);
  auto* d = reinterpret_cast<double*>(dst);
  for (std::size_t c0 = 0; c0 < cols; c0 += kBlock) {
    const std::size_t c1 = std::min(cols, c0 + kBlock);
    for (std::size_t r0 = 0; r0 < rows; r0 += kBlock) {
      const std::size_t r1 = std::min(rows, r0 + kBlock);
      std::size_t c = c0;
      for (; c + 2 <= c1; c += 2) {
        std::size_t r = r0;
        for (; r + 2 <= r1; r += 2) {
          const __m256d a = _mm256_loadu_pd(s + 2 * (c * rows + r));
          const __m256d b = _mm256_loadu_pd(s + 2 * ((c + 1) * rows + r));
          _mm256_storeu_pd(d + 2 * (r * cols + c), conj2(_mm256_permute2f128_pd(a, b, 0x20)));
          _mm256_storeu_pd(d + 2 * ((r + 1) * cols + c), conj2(_mm256_permute2f128_pd(a, b, 0x31)));
        }
        for (; r < r1; ++r) {
          dst[r * cols + c] = std::conj(src[c * rows + r]);
          dst[r * cols + c + 1] = std::conj(src[(c + 1) * rows + r]);
        }
      }
      for (; c < c1; ++c) {
        for (std::size_t r = r0; r < r1; ++r) dst[r * cols + c] = std::conj(src[c * rows + r]);
      }
    }
  }
}

}  // namespace homog::kernels::avx2

#endif
