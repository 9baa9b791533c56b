#pragma once

// Data-parallel kernels behind the exact density-matrix engine.
//
// Every kernel has a scalar reference implementation; SIMD variants are
// selected at run time from what the CPU reports. Setting HOMOG_ISA=scalar
// (or avx2, neon) in the environment forces a variant.

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace homog::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

/// Row-major 4x4 complex coefficient block.
using Coeffs4 = std::array<cplx, 16>;

/// In place, for every t < len: lane_k[t] <- sum_l coeffs[4k + l] * lane_l[t].
/// The four lanes must not overlap.
using Mix4Fn = void (*)(const Coeffs4& coeffs, std::array<cplx*, 4> lanes, std::size_t len);

/// dst = src^dagger. src is column-major rows x cols, dst column-major cols x rows.
/// src and dst must not alias.
using ConjTransposeFn = void (*)(const cplx* src, cplx* dst, std::size_t rows, std::size_t cols);

struct KernelTable {
  Isa isa;
  Mix4Fn mix4;
  ConjTransposeFn conj_transpose;
};

/// Variants this binary was built with and the CPU can execute.
std::vector<Isa> available();

/// Table for a specific variant; throws ArgumentError if it is not available.
const KernelTable& table(Isa isa);

/// Table picked at first use: HOMOG_ISA override, else the widest available.
const KernelTable& active();

namespace scalar {
void mix4(const Coeffs4& coeffs, std::array<cplx*, 4> lanes, std::size_t len);
void conj_transpose(const cplx* src, cplx* dst, std::size_t rows, std::size_t cols);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void mix4(const Coeffs4& coeffs, std::array<cplx*, 4> lanes, std::size_t len);
void conj_transpose(const cplx* src, cplx* dst, std::size_t rows, std::size_t cols);
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
void mix4(const Coeffs4& coeffs, std::array<cplx*, 4> lanes, std::size_t len);
void conj_transpose(const cplx* src, cplx* dst, std::size_t rows, std::size_t cols);
}  // namespace neon
#endif

}  // namespace homog::kernels
