#include "homog/collision.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "homog/errors.hpp"
#include "homog/kernels.hpp"

namespace homog {

Coupling::Coupling(double eta) : eta_(eta) {
  if (!(eta > 0.0) || eta > std::numbers::pi / 2 + 1e-15) {
    std::ostringstream os;
    os << "coupling eta=" << eta << " outside (0, pi/2]";
    throw ArgumentError(os.str());
  }
  const double c = std::cos(eta);
  const double s = std::sin(eta);
  c2_ = c * c;
  s2_ = s * s;
}

UnitaryMatrix partial_swap_unitary(double eta) {
  const double c = std::cos(eta);
  const double s = std::sin(eta);
  CMatrix u = CMatrix::Zero(4, 4);
  u(0, 0) = cplx(c, s);
  u(3, 3) = cplx(c, s);
  u(1, 1) = c;
  u(2, 2) = c;
  u(1, 2) = cplx(0.0, s);
  u(2, 1) = cplx(0.0, s);
  return UnitaryMatrix(std::move(u));
}

UnitaryMatrix partial_swap_unitary(const Coupling& coupling) { return partial_swap_unitary(coupling.eta()); }

void apply_pair_inplace(CMatrix& rho, int a, int b, const UnitaryMatrix& u, PairWorkspace& ws) {
  apply_pair_inplace(rho, a, b, u, ws, kernels::active());
}

void apply_pair_inplace(CMatrix& rho, int a, int b, const UnitaryMatrix& u, PairWorkspace& ws,
                        const kernels::KernelTable& kern) {
  const Eigen::Index dim = rho.rows();
  int m = 0;
  while ((Eigen::Index{1} << m) < dim) ++m;
  if (rho.cols() != dim || (Eigen::Index{1} << m) != dim) throw ArgumentError("apply_pair: bad register shape");
  if (a == b) throw ArgumentError("apply_pair: qubit indices must differ");
  if (a < 0 || b < 0 || a >= m || b >= m) throw ArgumentError("apply_pair: qubit index out of range");
  if (u.dim() != 4) throw ArgumentError("apply_pair: expected a two-qubit unitary");

  const Eigen::Index bit_a = Eigen::Index{1} << (m - 1 - a);
  const Eigen::Index bit_b = Eigen::Index{1} << (m - 1 - b);
  const Eigen::Index offsets[4] = {0, bit_b, bit_a, bit_a | bit_b};

  // Column mixing by conj(U) computes X = rho U_ab^dagger.
  kernels::Coeffs4 coeffs;
  for (int k = 0; k < 4; ++k) {
    for (int l = 0; l < 4; ++l) coeffs[4 * k + l] = std::conj(u.matrix()(k, l));
  }
  const auto mix_columns = [&](CMatrix& x) {
    cplx* base = x.data();
    for (Eigen::Index g = 0; g < dim; ++g) {
      if ((g & bit_a) != 0 || (g & bit_b) != 0) continue;
      std::array<cplx*, 4> lanes{};
      for (int k = 0; k < 4; ++k) lanes[k] = base + (g | offsets[k]) * dim;
      kern.mix4(coeffs, lanes, static_cast<std::size_t>(dim));
    }
  };

  // U rho U^dagger = (X^dagger U^dagger)^dagger, and the result is Hermitian,
  // so mixing the columns of X^dagger once more gives it directly.
  mix_columns(rho);
  ws.scratch.resize(dim, dim);
  kern.conj_transpose(rho.data(), ws.scratch.data(), static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));
  mix_columns(ws.scratch);
  rho.swap(ws.scratch);
}

DensityMatrix apply_pair(const DensityMatrix& joint, int a, int b, const UnitaryMatrix& u) {
  CMatrix m = joint.matrix();
  PairWorkspace ws;
  apply_pair_inplace(m, a, b, u, ws);
  return DensityMatrix(std::move(m));
}

DensityMatrix apply_pair(const DensityMatrix& joint, int a, int b, const Coupling& coupling) {
  return apply_pair(joint, a, b, partial_swap_unitary(coupling));
}

BlochPair reduced_update(BlochScalar alpha, BlochScalar beta, const Coupling& coupling) {
  return reduced_update(alpha.value(), beta.value(), coupling.c2(), coupling.s2());
}

}  // namespace homog
