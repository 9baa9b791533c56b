#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "homog/exactsim.hpp"
#include "homog/metrics.hpp"

namespace homog {

// ---------------------------------------------------------------------------
// Entropy

/// Summed single-qubit entropies (bits) of both tasks' reservoirs after n
/// iterations, from product-state marginals:
///   S_tot = sum_{j<=N} h(alpha^n_j) + h(alpha~^n_j).
/// Equals N at n = 0; growth above N tracks correlations the marginals miss.
double entropy_total(const Coupling& coupling, int N, int n, const Caps& caps = {});

class EntropySurface {
 public:
  EntropySurface(double eta, int N_max, int n_max);

  double eta() const { return eta_; }
  int N_max() const { return N_max_; }
  int n_max() const { return n_max_; }
  /// 1 <= N <= N_max, 0 <= n <= n_max.
  double at(int N, int n) const;
  void set(int N, int n, double value);

 private:
  double eta_;
  int N_max_;
  int n_max_;
  std::vector<double> values_;
};

EntropySurface entropy_surface(const Coupling& coupling, int N_max, int n_max, const Caps& caps = {});

// ---------------------------------------------------------------------------
// Resources

struct ReservoirSearch {
  std::optional<int> N_min;  ///< empty when nothing up to `cap` works
  int cap = 0;
};

/// True if every iteration i <= n of a size-N reservoir has error <= epsilon_star.
bool meets_accuracy(TaskDirection direction, const Coupling& coupling, double epsilon_star, int N, int n);

/// Smallest N meeting the accuracy at every iteration up to n. Doubling then
/// bisection on N; the candidate bound is caps.grid / n.
ReservoirSearch find_min_reservoir(TaskDirection direction, const Coupling& coupling, double epsilon_star, int n,
                                   const Caps& caps = {});

struct ResourceCurve {
  TaskDirection direction;
  double eta;
  double epsilon_star;
  std::vector<std::pair<int, ReservoirSearch>> points;  ///< n -> search result
};

/// Points for n = 1..n_max. Throws InvariantError if N_min ever decreases.
ResourceCurve resource_curve(TaskDirection direction, const Coupling& coupling, double epsilon_star, int n_max,
                             const Caps& caps = {});

/// Largest n such that iterations 1..n all stay within epsilon_star, capped
/// at n_cap (default caps.grid / N). 0 if the first iteration already fails.
int lifetime(TaskDirection direction, const Coupling& coupling, double epsilon_star, int N, const Caps& caps = {},
             std::optional<int> n_cap = std::nullopt);

// ---------------------------------------------------------------------------
// Exact vs approximate

struct EngineComparison {
  int k = 0;
  MetricsRecord approx;
  MetricsRecord exact;

  /// |R_exact - R_approx| / R_exact.
  double relative_gap() const;
};

/// Diagonal N = n = k for k = 1..k_max from both engines.
std::vector<EngineComparison> compare_engines(TaskDirection direction, const Coupling& coupling, int k_max,
                                              const Caps& caps = {}, ExactOptions options = {});

// ---------------------------------------------------------------------------
// Possibility

enum class Verdict { converging, diverging, inconclusive };

std::string_view verdict_name(Verdict v);

struct DiagonalPoint {
  int k;
  double log_R;
};

struct PossibilityVerdict {
  TaskDirection direction = TaskDirection::pure_to_mixed;
  double eta = 0.0;
  Verdict verdict = Verdict::inconclusive;
  std::vector<DiagonalPoint> evidence;
};

/// Converging if log R strictly decreases across the last half of the series,
/// diverging if it strictly increases, inconclusive otherwise. Strictness is
/// judged on consecutive differences against tol::kTrendSlack. Needs >= 10 points.
Verdict classify_possibility(std::span<const DiagonalPoint> series);

/// (k, log R^k_k) for k = 1..k_max from the product-state engine.
std::vector<DiagonalPoint> diagonal_series(TaskDirection direction, const Coupling& coupling, int k_max,
                                           const Caps& caps = {});

PossibilityVerdict assess_possibility(TaskDirection direction, const Coupling& coupling, int k_max,
                                      const Caps& caps = {});

}  // namespace homog
