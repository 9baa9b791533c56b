#include "homog/densops.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "homog/errors.hpp"

namespace homog {

namespace {

int log2_exact(Eigen::Index dim) {
  if (dim <= 0) return -1;
  int m = 0;
  while ((Eigen::Index{1} << m) < dim) ++m;
  return (Eigen::Index{1} << m) == dim ? m : -1;
}

Eigen::VectorXd hermitian_eigenvalues(const CMatrix& m) {
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

// Eigenvalues below this are round-off of a rank-deficient PSD operator.
double psd_floor(Eigen::Index dim, double scale) {
  return 64.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(dim) * std::max(scale, 0.0);
}

CMatrix psd_sqrt(const CMatrix& m) {
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  Eigen::VectorXd lam = solver.eigenvalues();
  const double floor = psd_floor(h.rows(), lam.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < lam.size(); ++i) lam[i] = lam[i] <= floor ? 0.0 : std::sqrt(lam[i]);
  return solver.eigenvectors() * lam.asDiagonal() * solver.eigenvectors().adjoint();
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

BlochScalar::BlochScalar(double r) : r_(r) {
  if (!std::isfinite(r) || std::abs(r) > 1.0 + 1e-12) {
    std::ostringstream os;
    os << "Bloch scalar " << r << " outside [-1, 1]";
    throw ArgumentError(os.str());
  }
  r_ = std::clamp(r, -1.0, 1.0);
}

DensityMatrix::DensityMatrix(CMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw ArgumentError("density matrix must be square");
  qubits_ = log2_exact(m_.rows());
  if (qubits_ < 0) throw ArgumentError("density matrix dimension must be a power of two");
}

DensityMatrix DensityMatrix::validated(CMatrix m, double tolerance) {
  DensityMatrix rho(std::move(m));
  const InvariantReport r = rho.check();
  if (!r.ok(tolerance)) {
    std::ostringstream os;
    os << "density matrix invariant violated: hermiticity " << r.hermiticity << ", trace " << r.trace
       << ", min eigenvalue " << r.min_eigenvalue;
    throw InvariantError(os.str());
  }
  return rho;
}

DensityMatrix DensityMatrix::maximally_mixed(int qubits) {
  if (qubits < 0 || qubits > 30) throw ArgumentError("qubit count out of range");
  const Eigen::Index d = Eigen::Index{1} << qubits;
  return DensityMatrix(CMatrix::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::basis_state(int qubits, std::uint64_t index) {
  if (qubits < 0 || qubits > 30) throw ArgumentError("qubit count out of range");
  const Eigen::Index d = Eigen::Index{1} << qubits;
  if (index >= static_cast<std::uint64_t>(d)) throw ArgumentError("basis index out of range");
  CMatrix m = CMatrix::Zero(d, d);
  m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::from_bloch(BlochScalar r) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = 0.5 * (1.0 + r.value());
  m(1, 1) = 0.5 * (1.0 - r.value());
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi) {
  const double norm = psi.norm();
  if (norm == 0.0) throw ArgumentError("zero state vector");
  const Eigen::VectorXcd v = psi / norm;
  return DensityMatrix(v * v.adjoint());
}

InvariantReport DensityMatrix::check() const {
  InvariantReport r;
  r.hermiticity = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  r.trace = std::abs(m_.trace() - cplx(1.0, 0.0));
  r.min_eigenvalue = hermitian_eigenvalues(m_).minCoeff();
  return r;
}

Eigen::VectorXd DensityMatrix::eigenvalues() const { return hermitian_eigenvalues(m_); }

UnitaryMatrix::UnitaryMatrix(CMatrix u, double tolerance) : u_(std::move(u)) {
  if (u_.rows() != u_.cols()) throw ArgumentError("unitary must be square");
  if (unitarity_defect() > tolerance) throw ArgumentError("matrix is not unitary within tolerance");
}

double UnitaryMatrix::unitarity_defect() const {
  return (u_ * u_.adjoint() - CMatrix::Identity(u_.rows(), u_.cols())).cwiseAbs().maxCoeff();
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(CMatrix(Eigen::kroneckerProduct(a.matrix(), b.matrix())));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const int m = rho.qubits();
  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (kept[i] < 0 || kept[i] >= m) throw ArgumentError("partial_trace: qubit index out of range");
    if (i > 0 && kept[i] == kept[i - 1]) throw ArgumentError("partial_trace: duplicate qubit index");
  }
  std::vector<int> traced;
  for (int q = 0; q < m; ++q) {
    if (!std::binary_search(kept.begin(), kept.end(), q)) traced.push_back(q);
  }

  // Full basis index contributed by a reduced index over the given qubits.
  const auto scatter = [m](const std::vector<int>& qs) {
    const int k = static_cast<int>(qs.size());
    std::vector<Eigen::Index> bits(std::size_t{1} << k, 0);
    for (std::size_t i = 0; i < bits.size(); ++i) {
      Eigen::Index full = 0;
      for (int t = 0; t < k; ++t) {
        if ((i >> (k - 1 - t)) & 1U) full |= Eigen::Index{1} << (m - 1 - qs[t]);
      }
      bits[i] = full;
    }
    return bits;
  };
  const auto kb = scatter(kept);
  const auto tb = scatter(traced);

  const auto dk = static_cast<Eigen::Index>(kb.size());
  CMatrix out = CMatrix::Zero(dk, dk);
  const CMatrix& full = rho.matrix();
  for (Eigen::Index j = 0; j < dk; ++j) {
    for (Eigen::Index i = 0; i < dk; ++i) {
      cplx acc = 0.0;
      for (Eigen::Index t : tb) acc += full(kb[i] | t, kb[j] | t);
      out(i, j) = acc;
    }
  }
  return DensityMatrix(std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep) {
  return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()));
}

DensityMatrix conjugate(const DensityMatrix& rho, const UnitaryMatrix& u) {
  if (u.dim() != rho.dim()) throw ArgumentError("conjugate: dimension mismatch");
  return DensityMatrix(u.matrix() * rho.matrix() * u.matrix().adjoint());
}

double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw ArgumentError("uhlmann_fidelity: dimension mismatch");
  const CMatrix s = psd_sqrt(rho.matrix());
  const CMatrix inner = s * sigma.matrix() * s;
  const Eigen::VectorXd lam = hermitian_eigenvalues(inner);
  const double floor = psd_floor(inner.rows(), lam.cwiseAbs().maxCoeff());
  double root_sum = 0.0;
  for (double l : lam) {
    if (l > floor) root_sum += std::sqrt(l);
  }
  return clamp01(root_sum * root_sum);
}

double qubit_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != 2 || sigma.dim() != 2) throw ArgumentError("qubit_fidelity: inputs must be 2x2");
  const double overlap = (rho.matrix() * sigma.matrix()).trace().real();
  const double det_product = rho.matrix().determinant().real() * sigma.matrix().determinant().real();
  return clamp01(overlap + 2.0 * std::sqrt(std::max(det_product, 0.0)));
}

double qubit_fidelity_bloch(BlochScalar alpha, BlochScalar beta) {
  const double a = alpha.value();
  const double b = beta.value();
  const double mixedness = std::max((1.0 - a * a) * (1.0 - b * b), 0.0);
  return clamp01(0.5 * (1.0 + a * b + std::sqrt(mixedness)));
}

double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double l : rho.eigenvalues()) {
    if (l > tol::kEntropyEigenFloor) s -= l * std::log2(l);
  }
  return std::max(s, 0.0);
}

double binary_entropy_bloch(BlochScalar r) {
  const double a = std::abs(r.value());
  const double p = 0.5 * (1.0 + a);
  const double q = 0.5 * (1.0 - a);
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (q > 0.0) h -= q * std::log2(q);
  return h;
}

DensityMatrix random_density(int qubits, Rng& rng) {
  const Eigen::Index d = Eigen::Index{1} << qubits;
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix ginibre(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) ginibre(i, j) = cplx(g(rng), g(rng));
  }
  CMatrix m = ginibre * ginibre.adjoint();
  m /= m.trace().real();
  return DensityMatrix(0.5 * (m + m.adjoint()));
}

UnitaryMatrix random_unitary(Eigen::Index dim, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix ginibre(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) ginibre(i, j) = cplx(g(rng), g(rng));
  }
  Eigen::HouseholderQR<CMatrix> qr(ginibre);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < dim; ++k) {
    const cplx d = r(k, k);
    q.col(k) *= std::abs(d) > 0.0 ? d / std::abs(d) : cplx(1.0);
  }
  return UnitaryMatrix(std::move(q));
}

}  // namespace homog
