#pragma once

// Error, robustness and relative deterioration of a homogenizer run.
//
// Robustness is carried as log(delta): the N-factor fidelity product
// underflows long before the diverging mixed-to-pure branch stops being
// interesting.

#include <string_view>
#include <vector>

#include "homog/recurrence.hpp"

namespace homog {

enum class Engine { approx, exact };

std::string_view engine_name(Engine e);

struct MetricsRecord {
  Engine engine = Engine::approx;
  TaskDirection direction = TaskDirection::pure_to_mixed;
  double eta = 0.0;
  int N = 0;
  int n = 0;
  double epsilon = 0.0;
  double log_delta = 0.0;  ///< -inf flags total degradation
  double R = 0.0;          ///< epsilon / delta; may be +inf
  double log_R = 0.0;      ///< -inf when epsilon == 0

  double delta() const;
  bool total_degradation() const;
  /// Throws InvariantError if epsilon, delta or R break their invariants.
  void validate(double tolerance = tol::kIdentity) const;
};

/// Error of a system qubit with Bloch scalar beta, measured against the
/// initial reservoir state of `direction`:
///   p2m: (1 - sqrt(1 - beta^2)) / 2, evaluated as beta^2 / (2 (1 + sqrt(1 - beta^2)))
///   m2p: (1 - beta) / 2
double error_from_bloch(TaskDirection direction, double beta);

/// log of one reservoir qubit's fidelity with its initial state:
///   p2m: log((1 + sqrt(1 - alpha^2)) / 2);  m2p: log((1 + alpha) / 2)
double log_fidelity_factor(TaskDirection direction, double alpha);

/// The same two quantities from frame values (see recurrence.hpp). For m2p
/// these are (x / 2) and log1p(-x / 2), exact for x near 0.
double error_from_frame(TaskDirection direction, double x);
double log_fidelity_factor_frame(TaskDirection direction, double x);

/// Error of the last system qubit of the trace, epsilon^n_N.
double error(const ProtocolTrace& trace);
/// epsilon^n_N for a sub-run, N <= trace N, 1 <= n <= trace n.
double error(const ProtocolTrace& trace, int N, int n);

/// Product-state log robustness, sum_j log F(xi^n_j, xi^0).
double log_robustness(const ProtocolTrace& trace);
/// Sub-run form; n = 0 gives 0.
double log_robustness(const ProtocolTrace& trace, int N, int n);

MetricsRecord relative_deterioration(const ProtocolTrace& trace);
MetricsRecord relative_deterioration(const ProtocolTrace& trace, int N, int n);

/// Assembles a record from epsilon and log delta.
MetricsRecord make_record(Engine engine, TaskDirection direction, double eta, int N, int n, double epsilon,
                          double log_delta);

/// One record per (N, n) with 1 <= N <= N_max, 1 <= n <= n_max, ordered by
/// N then n. Built from a single trace with running sums over j.
std::vector<MetricsRecord> metrics_surface(TaskDirection direction, const Coupling& coupling, int N_max, int n_max,
                                           const Caps& caps = {});

}  // namespace homog
