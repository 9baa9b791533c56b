#include "homog/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "homog/errors.hpp"

namespace homog {

std::string_view engine_name(Engine e) { return e == Engine::approx ? "approx" : "exact"; }

double MetricsRecord::delta() const { return std::exp(log_delta); }

bool MetricsRecord::total_degradation() const { return std::isinf(log_delta) && log_delta < 0.0; }

void MetricsRecord::validate(double tolerance) const {
  std::ostringstream os;
  if (!(epsilon >= -tolerance && epsilon <= 1.0 + tolerance)) {
    os << "epsilon " << epsilon << " outside [0, 1]";
  } else if (std::isnan(log_delta) || log_delta > tolerance) {
    os << "log delta " << log_delta << " is not <= 0";
  } else if (std::isnan(R) || R < 0.0) {
    os << "R " << R << " is negative or NaN";
  } else if (std::isfinite(R) && !total_degradation()) {
    const double expected = epsilon * std::exp(-log_delta);
    if (std::abs(R - expected) > tolerance * std::max(1.0, std::abs(expected))) {
      os << "R " << R << " inconsistent with epsilon/delta " << expected;
    }
  }
  if (const std::string msg = os.str(); !msg.empty()) {
    std::ostringstream full;
    full << engine_name(engine) << ' ' << direction_name(direction) << " eta=" << eta << " N=" << N << " n=" << n
         << ": " << msg;
    throw InvariantError(full.str());
  }
}

double error_from_frame(TaskDirection direction, double x) {
  if (direction == TaskDirection::mixed_to_pure) return 0.5 * x;
  const double x2 = std::min(x * x, 1.0);
  return 0.5 * x2 / (1.0 + std::sqrt(1.0 - x2));
}

double log_fidelity_factor_frame(TaskDirection direction, double x) {
  if (direction == TaskDirection::mixed_to_pure) return std::log1p(-0.5 * x);
  const double x2 = std::min(x * x, 1.0);
  return std::log1p(-0.5 * x2 / (1.0 + std::sqrt(1.0 - x2)));
}

double error_from_bloch(TaskDirection direction, double beta) {
  return error_from_frame(direction, frame_flip(direction, beta));
}

double log_fidelity_factor(TaskDirection direction, double alpha) {
  return log_fidelity_factor_frame(direction, frame_flip(direction, alpha));
}

double error(const ProtocolTrace& trace) { return error(trace, trace.reservoir_size(), trace.iterations()); }

double error(const ProtocolTrace& trace, int N, int n) {
  if (N < 1 || N > trace.reservoir_size()) throw ArgumentError("error: N out of range");
  return error_from_frame(trace.direction(), trace.beta_frame_row(n)[N]);
}

double log_robustness(const ProtocolTrace& trace) {
  return log_robustness(trace, trace.reservoir_size(), trace.iterations());
}

double log_robustness(const ProtocolTrace& trace, int N, int n) {
  if (N < 1 || N > trace.reservoir_size()) throw ArgumentError("log_robustness: N out of range");
  const auto row = trace.alpha_frame_row(n);
  double sum = 0.0;
  for (int j = 0; j < N; ++j) sum += log_fidelity_factor_frame(trace.direction(), row[j]);
  return sum;
}

MetricsRecord make_record(Engine engine, TaskDirection direction, double eta, int N, int n, double epsilon,
                          double log_delta) {
  MetricsRecord r;
  r.engine = engine;
  r.direction = direction;
  r.eta = eta;
  r.N = N;
  r.n = n;
  r.epsilon = epsilon;
  r.log_delta = log_delta;
  if (epsilon <= 0.0) {
    r.R = 0.0;
    r.log_R = -std::numeric_limits<double>::infinity();
  } else {
    r.log_R = std::log(epsilon) - log_delta;
    r.R = epsilon * std::exp(-log_delta);
  }
  return r;
}

MetricsRecord relative_deterioration(const ProtocolTrace& trace) {
  return relative_deterioration(trace, trace.reservoir_size(), trace.iterations());
}

MetricsRecord relative_deterioration(const ProtocolTrace& trace, int N, int n) {
  return make_record(Engine::approx, trace.direction(), trace.coupling().eta(), N, n, error(trace, N, n),
                     log_robustness(trace, N, n));
}

std::vector<MetricsRecord> metrics_surface(TaskDirection direction, const Coupling& coupling, int N_max, int n_max,
                                           const Caps& caps) {
  const ProtocolTrace trace = run_protocol(direction, N_max, n_max, coupling, caps);
  std::vector<MetricsRecord> out(static_cast<std::size_t>(N_max) * n_max);
  for (int n = 1; n <= n_max; ++n) {
    const auto alpha = trace.alpha_frame_row(n);
    const auto beta = trace.beta_frame_row(n);
    double log_delta = 0.0;
    for (int N = 1; N <= N_max; ++N) {
      log_delta += log_fidelity_factor_frame(direction, alpha[N - 1]);
      out[static_cast<std::size_t>(N - 1) * n_max + (n - 1)] =
          make_record(Engine::approx, direction, coupling.eta(), N, n, error_from_frame(direction, beta[N]), log_delta);
    }
  }
  return out;
}

}  // namespace homog
