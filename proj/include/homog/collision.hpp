#pragma once

// The partial-swap interaction U = cos(eta) 1 + i sin(eta) S, where S maps
// |xy> to |yx>, both as a full two-qubit unitary and as its action on the
// Bloch scalars of two diagonal qubits.

#include <utility>

#include "homog/densops.hpp"
#include "homog/kernels.hpp"

namespace homog {

/// Coupling strength eta in (0, pi/2], with cos^2 and sin^2 cached.
class Coupling {
 public:
  explicit Coupling(double eta);

  double eta() const { return eta_; }
  double c2() const { return c2_; }
  double s2() const { return s2_; }

 private:
  double eta_;
  double c2_;
  double s2_;
};

/// 4x4 partial swap in the |00>, |01>, |10>, |11> basis.
UnitaryMatrix partial_swap_unitary(const Coupling& coupling);
/// Same, for an unrestricted angle (the eta -> 0 limit is the identity).
UnitaryMatrix partial_swap_unitary(double eta);

/// Reusable scratch for apply_pair_inplace.
struct PairWorkspace {
  CMatrix scratch;
};

/// rho <- U_ab rho U_ab^dagger, with U acting on qubits (a, b) of the register
/// in that order. rho must be Hermitian: the second half-conjugation is taken
/// as the adjoint of the first. Runs on the active SIMD kernels.
void apply_pair_inplace(CMatrix& rho, int a, int b, const UnitaryMatrix& u, PairWorkspace& ws);
/// Same on an explicit kernel variant.
void apply_pair_inplace(CMatrix& rho, int a, int b, const UnitaryMatrix& u, PairWorkspace& ws,
                        const kernels::KernelTable& kernels);

DensityMatrix apply_pair(const DensityMatrix& joint, int a, int b, const Coupling& coupling);
DensityMatrix apply_pair(const DensityMatrix& joint, int a, int b, const UnitaryMatrix& u);

struct BlochPair {
  double alpha;  ///< reservoir qubit
  double beta;   ///< system qubit
};

/// alpha' = s^2 beta + c^2 alpha, beta' = c^2 beta + s^2 alpha.
BlochPair reduced_update(BlochScalar alpha, BlochScalar beta, const Coupling& coupling);

/// Unchecked form used by the recurrence inner loop.
inline BlochPair reduced_update(double alpha, double beta, double c2, double s2) {
  return {s2 * beta + c2 * alpha, c2 * beta + s2 * alpha};
}

}  // namespace homog
