#include <cstdlib>
#include <string>

#include "homog/errors.hpp"
#include "homog/kernels.hpp"

namespace homog::kernels {

namespace {

constexpr KernelTable kScalar{Isa::scalar, &scalar::mix4, &scalar::conj_transpose};
#if defined(__x86_64__) || defined(_M_X64)
constexpr KernelTable kAvx2{Isa::avx2, &avx2::mix4, &avx2::conj_transpose};
#endif
#if defined(__aarch64__)
constexpr KernelTable kNeon{Isa::neon, &neon::mix4, &neon::conj_transpose};
#endif

bool cpu_has(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa parse_isa(std::string_view name) {
  if (name == "scalar") return Isa::scalar;
  if (name == "avx2") return Isa::avx2;
  if (name == "neon") return Isa::neon;
  throw ArgumentError("HOMOG_ISA: unknown kernel variant '" + std::string(name) + "'");
}

const KernelTable& pick() {
  if (const char* forced = std::getenv("HOMOG_ISA"); forced != nullptr && *forced != '\0') {
    return table(parse_isa(forced));
  }
  return table(available().back());
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

std::vector<Isa> available() {
  std::vector<Isa> out{Isa::scalar};
  for (Isa isa : {Isa::avx2, Isa::neon}) {
    if (cpu_has(isa)) out.push_back(isa);
  }
  return out;
}

const KernelTable& table(Isa isa) {
  if (!cpu_has(isa)) {
    throw ArgumentError("kernel variant '" + std::string(isa_name(isa)) + "' is not available on this CPU");
  }
  switch (isa) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::avx2:
      return kAvx2;
#endif
#if defined(__aarch64__)
    case Isa::neon:
      return kNeon;
#endif
    default:
      return kScalar;
  }
}

const KernelTable& active() {
  static const KernelTable& chosen = pick();
  return chosen;
}

}  // namespace homog::kernels
