#pragma once

// Exact homogenizer: the full N-qubit reservoir is kept as a density matrix,
// with no product approximation. One fresh system qubit at a time is appended
// as the last tensor factor, partially swapped with reservoir qubits 0..N-1
// in order, read out, and traced away. Finished system qubits are never
// touched again, so tracing them immediately is exact and the live register
// stays at N + 1 qubits.

#include <cstdint>
#include <vector>

#include "homog/collision.hpp"
#include "homog/metrics.hpp"
#include "homog/recurrence.hpp"

namespace homog {

struct ExactOptions {
  /// Check Hermiticity, trace and positivity of the reservoir after every step.
  bool verify_each_step = true;
  double tolerance = tol::kInvariant;
};

class ExactHomogenizer {
 public:
  /// Reservoir starts as xi^{(x)N}: 1/2 per qubit (p2m) or |0><0| (m2p).
  /// Throws ResourceError when N exceeds caps.exact_qubits.
  static ExactHomogenizer init(TaskDirection direction, int reservoir_size, const Coupling& coupling,
                               const Caps& caps = {}, ExactOptions options = {});

  /// Runs one iteration and returns its exact error 1 - F(system, xi^0).
  /// Throws InvariantError if verification is on and the reservoir fails it.
  double step();

  /// F(reservoir, xi^{0 (x) N}) without the product approximation.
  double exact_robustness() const;

  TaskDirection direction() const { return direction_; }
  int reservoir_size() const { return n_res_; }
  const Coupling& coupling() const { return coupling_; }
  int iterations_done() const { return done_; }
  const DensityMatrix& reservoir() const { return reservoir_; }
  /// System qubit of the latest iteration after its N interactions.
  const DensityMatrix& last_system() const { return last_system_; }

 private:
  ExactHomogenizer(TaskDirection direction, int reservoir_size, const Coupling& coupling, ExactOptions options);

  TaskDirection direction_;
  int n_res_;
  Coupling coupling_;
  ExactOptions options_;
  UnitaryMatrix swap_;
  DensityMatrix reservoir_;
  DensityMatrix fresh_system_;
  DensityMatrix reference_;
  DensityMatrix last_system_;
  PairWorkspace workspace_;
  int done_ = 0;
};

/// Exact error, robustness and R after each of n iterations (records for n' = 1..n).
std::vector<MetricsRecord> exact_metrics(TaskDirection direction, int reservoir_size, int iterations,
                                         const Coupling& coupling, const Caps& caps = {}, ExactOptions options = {});

/// The reservoir map rho_C -> Tr_S(U (rho_C (x) rho_x) U^dagger), with U the
/// sequence of partial swaps of the system against reservoir qubits 0..N-1.
DensityMatrix homogenizer_channel(const DensityMatrix& machine, const DensityMatrix& system, const Coupling& coupling);

/// Max entry-wise deviation from affinity of homogenizer_channel over random
/// machine pairs, system states and mixing weights. N <= 3.
double channel_linearity_check(const Coupling& coupling, int reservoir_size, int trials, std::uint64_t seed = 7);

}  // namespace homog
