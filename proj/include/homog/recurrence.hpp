#pragma once

// Product-state homogenizer: only single-qubit Bloch scalars are tracked.
//
// Index convention: alpha(I, j) is reservoir qubit j (1..N) after I (0..n)
// iterations; beta(I, j) is the system qubit of iteration I (1..n) after j
// (0..N) interactions. Interactions run iteration-major, position-minor:
//   (alpha(I, j), beta(I, j)) = reduced_update(alpha(I-1, j), beta(I, j-1)).
// Entries never depend on the total N or n, so one trace of size (N, n)
// contains every smaller (N', n') run as a sub-table.
//
// Storage is in the pure-to-mixed frame: the Bloch scalar for p2m and
// 1 - Bloch scalar for m2p. The update is linear and fixes (1, 1), so both
// directions follow the same recursion from the same start in this frame,
// and m2p errors, which live in 1 - beta, keep full relative precision.

#include <span>
#include <string_view>
#include <vector>

#include "homog/collision.hpp"
#include "homog/tolerances.hpp"

namespace homog {

enum class TaskDirection { pure_to_mixed, mixed_to_pure };

/// "p2m" / "m2p".
std::string_view direction_name(TaskDirection d);
/// Accepts p2m, m2p, pure-to-mixed, mixed-to-pure.
TaskDirection parse_direction(std::string_view s);

/// Maps a Bloch scalar to its frame value and back (the map is an involution).
constexpr double frame_flip(TaskDirection d, double x) { return d == TaskDirection::pure_to_mixed ? x : 1.0 - x; }

struct InitialConditions {
  double system;     ///< beta(I, 0) for every I
  double reservoir;  ///< alpha(0, j) for every j
};

/// p2m: pure system onto a maximally mixed reservoir; m2p: the transpose.
constexpr InitialConditions initial_conditions(TaskDirection d) {
  return d == TaskDirection::pure_to_mixed ? InitialConditions{1.0, 0.0} : InitialConditions{0.0, 1.0};
}

class ProtocolTrace {
 public:
  ProtocolTrace(TaskDirection direction, int reservoir_size, int iterations, Coupling coupling);

  TaskDirection direction() const { return direction_; }
  int reservoir_size() const { return n_res_; }
  int iterations() const { return n_it_; }
  const Coupling& coupling() const { return coupling_; }

  /// I in [0, n], j in [1, N]. Throws ArgumentError out of range.
  double alpha(int I, int j) const;
  /// I in [1, n], j in [0, N]. Throws ArgumentError out of range.
  double beta(int I, int j) const;

  /// Frame values of alpha(I, 1..N).
  std::span<const double> alpha_frame_row(int I) const;
  /// Frame values of beta(I, 0..N).
  std::span<const double> beta_frame_row(int I) const;

  std::span<double> alpha_frame_row_mut(int I);
  std::span<double> beta_frame_row_mut(int I);

 private:
  TaskDirection direction_;
  int n_res_;
  int n_it_;
  Coupling coupling_;
  std::vector<double> alpha_;  // (n+1) x N
  std::vector<double> beta_;   // n x (N+1)
};

/// Streams the protocol one system qubit at a time, holding O(N) state.
class ProtocolStepper {
 public:
  ProtocolStepper(TaskDirection direction, int reservoir_size, Coupling coupling);

  /// Sends the next fresh system qubit through positions 1..N.
  void advance();

  TaskDirection direction() const { return direction_; }
  int iterations_done() const { return done_; }
  /// Frame values of alpha(I, 1..N) for the current I.
  std::span<const double> reservoir_frame() const { return reservoir_; }
  /// Frame values of beta(I, 0..N) for the current I (I >= 1).
  std::span<const double> system_frame() const { return system_; }

 private:
  TaskDirection direction_;
  double c2_;
  double s2_;
  int done_ = 0;
  std::vector<double> reservoir_;
  std::vector<double> system_;
};

/// Iterates reduced_update over the full (N, n) table. O(N·n).
ProtocolTrace run_protocol(TaskDirection direction, int reservoir_size, int iterations, const Coupling& coupling,
                           const Caps& caps = {});

/// Same table from the decoupled double-sum forms, where each beta entry is a
/// weighted sum over earlier beta entries only and each alpha entry over
/// earlier alpha entries only. O((N·n)^2).
ProtocolTrace closed_form(TaskDirection direction, int reservoir_size, int iterations, const Coupling& coupling,
                          const Caps& caps = {});

/// Largest violations of the identities linking the two task directions,
/// scanned over 0 <= a <= min(N, n), 1 <= b <= min(N, n):
///   complement:        alpha(a, b) + beta(b, a) = 1   (either direction)
///   reservoir_system:  alpha(a, b) = beta~(b, a)
///   system_reservoir:  alpha~(a, b) = beta(b, a)
/// where ~ marks the mixed-to-pure trace.
struct SymmetryReport {
  double complement = 0.0;
  double reservoir_system = 0.0;
  double system_reservoir = 0.0;

  double worst() const;
};

SymmetryReport check_symmetries(const ProtocolTrace& pure_to_mixed, const ProtocolTrace& mixed_to_pure);

}  // namespace homog
