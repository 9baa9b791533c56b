#pragma once

#include <cstddef>

namespace homog {

/// Fixed numerical tolerances shared by the library, the CLI metadata
/// header and the acceptance suite.
namespace tol {

/// Hermiticity, unit trace, positivity, unitarity.
inline constexpr double kInvariant = 1e-10;
/// Algebraic identities between two evaluation routes.
inline constexpr double kIdentity = 1e-12;
/// Eigenvalues at or below this contribute nothing to an entropy.
inline constexpr double kEntropyEigenFloor = 1e-12;
/// Slack for strictness of consecutive log R differences in classification.
inline constexpr double kTrendSlack = 1e-12;

}  // namespace tol

/// Size limits. Every long-running entry point takes one of these.
struct Caps {
  /// Upper bound on N·n for recurrence grids.
  std::size_t grid = 10'000'000;
  /// Upper bound on reservoir qubits for the exact density-matrix engine.
  int exact_qubits = 10;
  /// Upper bound on N·n for the O((N·n)^2) closed-form evaluation.
  std::size_t closed_form = 40'000;
};

}  // namespace homog
