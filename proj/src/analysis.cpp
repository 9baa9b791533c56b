#include "homog/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "homog/errors.hpp"

namespace homog {

namespace {

void check_epsilon_star(double epsilon_star) {
  if (!(epsilon_star > 0.0 && epsilon_star < 0.5)) throw ArgumentError("epsilon* must lie in (0, 1/2)");
}

double entropy_of(const ProtocolStepper& stepper, int j) {
  return binary_entropy_bloch(BlochScalar(frame_flip(stepper.direction(), stepper.reservoir_frame()[j])));
}

}  // namespace

double entropy_total(const Coupling& coupling, int N, int n, const Caps& caps) {
  if (N < 1 || n < 0) throw ArgumentError("entropy_total: need N >= 1, n >= 0");
  if (static_cast<std::size_t>(N) * static_cast<std::size_t>(std::max(n, 1)) > caps.grid) {
    throw ResourceError("entropy_total: grid cap exceeded");
  }
  ProtocolStepper p2m(TaskDirection::pure_to_mixed, N, coupling);
  ProtocolStepper m2p(TaskDirection::mixed_to_pure, N, coupling);
  for (int i = 0; i < n; ++i) {
    p2m.advance();
    m2p.advance();
  }
  double s = 0.0;
  for (int j = 0; j < N; ++j) s += entropy_of(p2m, j) + entropy_of(m2p, j);
  return s;
}

EntropySurface::EntropySurface(double eta, int N_max, int n_max)
    : eta_(eta), N_max_(N_max), n_max_(n_max), values_(static_cast<std::size_t>(N_max) * (n_max + 1), 0.0) {
  if (N_max < 1 || n_max < 0) throw ArgumentError("entropy surface: need N_max >= 1, n_max >= 0");
}

double EntropySurface::at(int N, int n) const {
  if (N < 1 || N > N_max_ || n < 0 || n > n_max_) throw ArgumentError("entropy surface index out of range");
  return values_[static_cast<std::size_t>(N - 1) * (n_max_ + 1) + n];
}

void EntropySurface::set(int N, int n, double value) {
  if (N < 1 || N > N_max_ || n < 0 || n > n_max_) throw ArgumentError("entropy surface index out of range");
  values_[static_cast<std::size_t>(N - 1) * (n_max_ + 1) + n] = value;
}

EntropySurface entropy_surface(const Coupling& coupling, int N_max, int n_max, const Caps& caps) {
  if (static_cast<std::size_t>(N_max) * static_cast<std::size_t>(std::max(n_max, 1)) > caps.grid) {
    throw ResourceError("entropy_surface: grid cap exceeded");
  }
  EntropySurface surface(coupling.eta(), N_max, n_max);
  ProtocolStepper p2m(TaskDirection::pure_to_mixed, N_max, coupling);
  ProtocolStepper m2p(TaskDirection::mixed_to_pure, N_max, coupling);
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) {
      p2m.advance();
      m2p.advance();
    }
    double s = 0.0;
    for (int N = 1; N <= N_max; ++N) {
      s += entropy_of(p2m, N - 1) + entropy_of(m2p, N - 1);
      surface.set(N, n, s);
    }
  }
  return surface;
}

bool meets_accuracy(TaskDirection direction, const Coupling& coupling, double epsilon_star, int N, int n) {
  ProtocolStepper stepper(direction, N, coupling);
  for (int i = 1; i <= n; ++i) {
    stepper.advance();
    if (error_from_frame(direction, stepper.system_frame()[N]) > epsilon_star) return false;
  }
  return true;
}

ReservoirSearch find_min_reservoir(TaskDirection direction, const Coupling& coupling, double epsilon_star, int n,
                                   const Caps& caps) {
  check_epsilon_star(epsilon_star);
  if (n < 1) throw ArgumentError("find_min_reservoir: n must be >= 1");
  ReservoirSearch result;
  result.cap = static_cast<int>(std::min<std::size_t>(caps.grid / static_cast<std::size_t>(n), 1'000'000'000));
  if (result.cap < 1) return result;

  const auto ok = [&](int N) { return meets_accuracy(direction, coupling, epsilon_star, N, n); };
  int failing = 0;
  int passing = 1;
  while (!ok(passing)) {
    failing = passing;
    if (passing == result.cap) return result;
    passing = static_cast<int>(std::min<long long>(2LL * passing, result.cap));
  }
  while (passing - failing > 1) {
    const int mid = failing + (passing - failing) / 2;
    if (ok(mid)) {
      passing = mid;
    } else {
      failing = mid;
    }
  }
  result.N_min = passing;
  return result;
}

ResourceCurve resource_curve(TaskDirection direction, const Coupling& coupling, double epsilon_star, int n_max,
                             const Caps& caps) {
  if (n_max < 1) throw ArgumentError("resource_curve: n_max must be >= 1");
  ResourceCurve curve{direction, coupling.eta(), epsilon_star, {}};
  for (int n = 1; n <= n_max; ++n) {
    ReservoirSearch s = find_min_reservoir(direction, coupling, epsilon_star, n, caps);
    if (!curve.points.empty() && s.N_min) {
      // an unsatisfiable n followed by a satisfiable one is also a decrease
      const auto& prev = curve.points.back().second;
      if (!prev.N_min || *s.N_min < *prev.N_min) {
        std::ostringstream os;
        os << "resource curve decreased at n=" << n;
        throw InvariantError(os.str());
      }
    }
    curve.points.emplace_back(n, s);
  }
  return curve;
}

int lifetime(TaskDirection direction, const Coupling& coupling, double epsilon_star, int N, const Caps& caps,
             std::optional<int> n_cap) {
  check_epsilon_star(epsilon_star);
  if (N < 1) throw ArgumentError("lifetime: N must be >= 1");
  const int cap = n_cap.value_or(static_cast<int>(
      std::min<std::size_t>(caps.grid / static_cast<std::size_t>(N), 1'000'000'000)));
  ProtocolStepper stepper(direction, N, coupling);
  for (int i = 1; i <= cap; ++i) {
    stepper.advance();
    if (error_from_frame(direction, stepper.system_frame()[N]) > epsilon_star) return i - 1;
  }
  return cap;
}

double EngineComparison::relative_gap() const { return std::abs(exact.R - approx.R) / exact.R; }

std::vector<EngineComparison> compare_engines(TaskDirection direction, const Coupling& coupling, int k_max,
                                              const Caps& caps, ExactOptions options) {
  if (k_max < 1) throw ArgumentError("compare_engines: k_max must be >= 1");
  if (k_max > caps.exact_qubits) {
    std::ostringstream os;
    os << "compare_engines: k_max = " << k_max << " exceeds exact cap " << caps.exact_qubits;
    throw ResourceError(os.str());
  }
  const ProtocolTrace trace = run_protocol(direction, k_max, k_max, coupling, caps);
  std::vector<EngineComparison> out;
  for (int k = 1; k <= k_max; ++k) {
    EngineComparison row;
    row.k = k;
    row.approx = relative_deterioration(trace, k, k);
    row.exact = exact_metrics(direction, k, k, coupling, caps, options).back();
    out.push_back(row);
  }
  return out;
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::converging:
      return "converging";
    case Verdict::diverging:
      return "diverging";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

Verdict classify_possibility(std::span<const DiagonalPoint> series) {
  if (series.size() < 10) throw ArgumentError("classify_possibility: need at least 10 diagonal points");
  const std::size_t start = series.size() / 2;
  bool falling = true;
  bool rising = true;
  for (std::size_t i = start + 1; i < series.size(); ++i) {
    const double d = series[i].log_R - series[i - 1].log_R;
    falling = falling && d < -tol::kTrendSlack;
    rising = rising && d > tol::kTrendSlack;
  }
  if (falling) return Verdict::converging;
  if (rising) return Verdict::diverging;
  return Verdict::inconclusive;
}

std::vector<DiagonalPoint> diagonal_series(TaskDirection direction, const Coupling& coupling, int k_max,
                                           const Caps& caps) {
  const ProtocolTrace trace = run_protocol(direction, k_max, k_max, coupling, caps);
  std::vector<DiagonalPoint> out;
  out.reserve(static_cast<std::size_t>(k_max));
  for (int k = 1; k <= k_max; ++k) out.push_back({k, relative_deterioration(trace, k, k).log_R});
  return out;
}

PossibilityVerdict assess_possibility(TaskDirection direction, const Coupling& coupling, int k_max,
                                      const Caps& caps) {
  PossibilityVerdict v;
  v.direction = direction;
  v.eta = coupling.eta();
  v.evidence = diagonal_series(direction, coupling, k_max, caps);
  v.verdict = classify_possibility(v.evidence);
  return v;
}

}  // namespace homog
