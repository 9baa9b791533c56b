#pragma once

// Dense complex operators on multi-qubit registers.
//
// Qubit 0 is the leftmost tensor factor, i.e. the most significant bit of a
// basis index. partial_trace keeps surviving qubits in their original order.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "homog/tolerances.hpp"

namespace homog {

using cplx = std::complex<double>;
using CMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;
using Rng = std::mt19937_64;

/// Signed Bloch-vector length along the shared quantisation axis.
/// r corresponds to the qubit state diag((1+r)/2, (1-r)/2).
class BlochScalar {
 public:
  constexpr BlochScalar() = default;
  /// Values within 1e-12 outside [-1, 1] are clamped; anything further throws ArgumentError.
  explicit BlochScalar(double r);

  constexpr double value() const { return r_; }
  constexpr operator double() const { return r_; }  // NOLINT: reads as the scalar it is

 private:
  double r_ = 0.0;
};

/// Worst observed defect of each density-matrix invariant.
struct InvariantReport {
  double hermiticity = 0.0;  ///< max |rho_ij - conj(rho_ji)|
  double trace = 0.0;        ///< |Tr rho - 1|
  double min_eigenvalue = 1.0;

  bool ok(double tolerance = tol::kInvariant) const {
    return hermiticity <= tolerance && trace <= tolerance && min_eigenvalue >= -tolerance;
  }
};

class DensityMatrix {
 public:
  /// Wraps a square 2^m x 2^m matrix. Shape is checked; the physical
  /// invariants are not (see validated()).
  explicit DensityMatrix(CMatrix m);

  /// Throws InvariantError if any invariant is off by more than tolerance.
  static DensityMatrix validated(CMatrix m, double tolerance = tol::kInvariant);

  static DensityMatrix maximally_mixed(int qubits);
  /// |index><index| on `qubits` qubits.
  static DensityMatrix basis_state(int qubits, std::uint64_t index);
  static DensityMatrix from_bloch(BlochScalar r);
  static DensityMatrix pure(const Eigen::VectorXcd& psi);

  Eigen::Index dim() const { return m_.rows(); }
  int qubits() const { return qubits_; }
  const CMatrix& matrix() const { return m_; }
  CMatrix& matrix() { return m_; }
  cplx operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  /// Full check including an eigendecomposition.
  InvariantReport check() const;
  /// Ascending eigenvalues of the Hermitian part.
  Eigen::VectorXd eigenvalues() const;

 private:
  CMatrix m_;
  int qubits_ = 0;
};

class UnitaryMatrix {
 public:
  /// Throws ArgumentError unless max |U U^dagger - 1| <= tolerance.
  explicit UnitaryMatrix(CMatrix u, double tolerance = tol::kInvariant);

  Eigen::Index dim() const { return u_.rows(); }
  const CMatrix& matrix() const { return u_; }
  double unitarity_defect() const;

 private:
  CMatrix u_;
};

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Reduced state on `keep`. Indices must be distinct and in range; they are
/// emitted in ascending order regardless of the order given.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep);

/// U rho U^dagger.
DensityMatrix conjugate(const DensityMatrix& rho, const UnitaryMatrix& u);

/// (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 via Hermitian eigendecompositions.
double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Closed qubit form Tr(rho sigma) + 2 sqrt(det rho det sigma). Both inputs 2x2.
double qubit_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Fidelity of two states diagonal in the shared basis, from their Bloch scalars.
double qubit_fidelity_bloch(BlochScalar alpha, BlochScalar beta);

/// -Tr rho log2 rho, in bits.
double von_neumann_entropy(const DensityMatrix& rho);

/// h((1+|r|)/2) in bits with h(0) = h(1) = 0.
double binary_entropy_bloch(BlochScalar r);

/// Random full-rank state from a normalised Ginibre matrix G G^dagger.
DensityMatrix random_density(int qubits, Rng& rng);
/// Haar-random unitary via QR of a Ginibre matrix with phase fix.
UnitaryMatrix random_unitary(Eigen::Index dim, Rng& rng);

}  // namespace homog
