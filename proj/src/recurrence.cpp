#include "homog/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "homog/errors.hpp"

namespace homog {

namespace {

void check_sizes(int reservoir_size, int iterations, std::size_t cap, const char* what) {
  if (reservoir_size < 1 || iterations < 1) throw ArgumentError("reservoir size and iterations must be >= 1");
  const auto cells = static_cast<std::size_t>(reservoir_size) * static_cast<std::size_t>(iterations);
  if (cells > cap) {
    std::ostringstream os;
    os << what << ": N*n = " << cells << " exceeds cap " << cap;
    throw ResourceError(os.str());
  }
}

}  // namespace

std::string_view direction_name(TaskDirection d) {
  return d == TaskDirection::pure_to_mixed ? "p2m" : "m2p";
}

TaskDirection parse_direction(std::string_view s) {
  if (s == "p2m" || s == "pure-to-mixed") return TaskDirection::pure_to_mixed;
  if (s == "m2p" || s == "mixed-to-pure") return TaskDirection::mixed_to_pure;
  throw ArgumentError("unknown task direction '" + std::string(s) + "'");
}

ProtocolTrace::ProtocolTrace(TaskDirection direction, int reservoir_size, int iterations, Coupling coupling)
    : direction_(direction),
      n_res_(reservoir_size),
      n_it_(iterations),
      coupling_(coupling),
      alpha_(static_cast<std::size_t>(iterations + 1) * reservoir_size, 0.0),
      beta_(static_cast<std::size_t>(iterations) * (reservoir_size + 1), 0.0) {
  const InitialConditions init = initial_conditions(direction);
  std::fill_n(alpha_.begin(), reservoir_size, frame_flip(direction, init.reservoir));
  for (int I = 1; I <= iterations; ++I) beta_frame_row_mut(I)[0] = frame_flip(direction, init.system);
}

double ProtocolTrace::alpha(int I, int j) const {
  if (I < 0 || I > n_it_ || j < 1 || j > n_res_) throw ArgumentError("alpha index out of range");
  return frame_flip(direction_, alpha_[static_cast<std::size_t>(I) * n_res_ + (j - 1)]);
}

double ProtocolTrace::beta(int I, int j) const {
  if (I < 1 || I > n_it_ || j < 0 || j > n_res_) throw ArgumentError("beta index out of range");
  return frame_flip(direction_, beta_[static_cast<std::size_t>(I - 1) * (n_res_ + 1) + j]);
}

std::span<const double> ProtocolTrace::alpha_frame_row(int I) const {
  if (I < 0 || I > n_it_) throw ArgumentError("alpha row out of range");
  return {alpha_.data() + static_cast<std::size_t>(I) * n_res_, static_cast<std::size_t>(n_res_)};
}

std::span<const double> ProtocolTrace::beta_frame_row(int I) const {
  if (I < 1 || I > n_it_) throw ArgumentError("beta row out of range");
  return {beta_.data() + static_cast<std::size_t>(I - 1) * (n_res_ + 1), static_cast<std::size_t>(n_res_ + 1)};
}

std::span<double> ProtocolTrace::alpha_frame_row_mut(int I) {
  if (I < 0 || I > n_it_) throw ArgumentError("alpha row out of range");
  return {alpha_.data() + static_cast<std::size_t>(I) * n_res_, static_cast<std::size_t>(n_res_)};
}

std::span<double> ProtocolTrace::beta_frame_row_mut(int I) {
  if (I < 1 || I > n_it_) throw ArgumentError("beta row out of range");
  return {beta_.data() + static_cast<std::size_t>(I - 1) * (n_res_ + 1), static_cast<std::size_t>(n_res_ + 1)};
}

ProtocolStepper::ProtocolStepper(TaskDirection direction, int reservoir_size, Coupling coupling)
    : direction_(direction), c2_(coupling.c2()), s2_(coupling.s2()) {
  if (reservoir_size < 1) throw ArgumentError("reservoir size must be >= 1");
  // in frame values both directions start from a mixed reservoir and a pure system
  reservoir_.assign(static_cast<std::size_t>(reservoir_size), 0.0);
  system_.assign(static_cast<std::size_t>(reservoir_size) + 1, 1.0);
}

void ProtocolStepper::advance() {
  double beta = 1.0;
  system_[0] = beta;
  for (std::size_t j = 0; j < reservoir_.size(); ++j) {
    const BlochPair next = reduced_update(reservoir_[j], beta, c2_, s2_);
    reservoir_[j] = next.alpha;
    beta = next.beta;
    system_[j + 1] = beta;
  }
  ++done_;
}

ProtocolTrace run_protocol(TaskDirection direction, int reservoir_size, int iterations, const Coupling& coupling,
                           const Caps& caps) {
  check_sizes(reservoir_size, iterations, caps.grid, "run_protocol");
  ProtocolTrace trace(direction, reservoir_size, iterations, coupling);
  ProtocolStepper stepper(direction, reservoir_size, coupling);
  for (int I = 1; I <= iterations; ++I) {
    stepper.advance();
    std::ranges::copy(stepper.reservoir_frame(), trace.alpha_frame_row_mut(I).begin());
    std::ranges::copy(stepper.system_frame(), trace.beta_frame_row_mut(I).begin());
  }
  return trace;
}

ProtocolTrace closed_form(TaskDirection direction, int reservoir_size, int iterations, const Coupling& coupling,
                          const Caps& caps) {
  check_sizes(reservoir_size, iterations, caps.closed_form, "closed_form");
  const int N = reservoir_size;
  const int n = iterations;
  const double s4 = coupling.s2() * coupling.s2();
  const InitialConditions init = initial_conditions(direction);
  const double a0 = init.reservoir;
  const double b0 = init.system;

  // c^{2e} for e = 0..max(N, n); all exponents below are non-negative, so
  // the forms stay finite at eta = pi/2.
  std::vector<double> pw(static_cast<std::size_t>(std::max(N, n)) + 1, 1.0);
  for (std::size_t e = 1; e < pw.size(); ++e) pw[e] = pw[e - 1] * coupling.c2();

  ProtocolTrace trace(direction, N, n, coupling);
  const auto beta_at = [&](int l, int k) { return k == 0 ? b0 : trace.beta(l, k); };
  const auto alpha_at = [&](int l, int k) { return l == 0 ? a0 : trace.alpha(l, k); };

  for (int I = 1; I <= n; ++I) {
    auto alpha_row = trace.alpha_frame_row_mut(I);
    auto beta_row = trace.beta_frame_row_mut(I);
    for (int j = 1; j <= N; ++j) {
      // beta(I, j) = b0 c^{2j} + a0 c^{2(I-1)} (1 - c^{2j})
      //            + s^4 sum_{k<=j} sum_{l<I} c^{2(j-k)} c^{2(I-1-l)} beta(l, k-1)
      double beta_sum = 0.0;
      for (int k = 1; k <= j; ++k) {
        for (int l = 1; l <= I - 1; ++l) beta_sum += pw[j - k] * pw[I - 1 - l] * beta_at(l, k - 1);
      }
      beta_row[j] = frame_flip(direction, b0 * pw[j] + a0 * pw[I - 1] * (1.0 - pw[j]) + s4 * beta_sum);

      // alpha(I, j) = a0 c^{2I} + b0 c^{2(j-1)} (1 - c^{2I})
      //             + s^4 sum_{l<=I} sum_{k<j} c^{2(I-l)} c^{2(j-1-k)} alpha(l-1, k)
      double alpha_sum = 0.0;
      for (int l = 1; l <= I; ++l) {
        for (int k = 1; k <= j - 1; ++k) alpha_sum += pw[I - l] * pw[j - 1 - k] * alpha_at(l - 1, k);
      }
      alpha_row[j - 1] = frame_flip(direction, a0 * pw[I] + b0 * pw[j - 1] * (1.0 - pw[I]) + s4 * alpha_sum);
    }
  }
  return trace;
}

double SymmetryReport::worst() const { return std::max({complement, reservoir_system, system_reservoir}); }

SymmetryReport check_symmetries(const ProtocolTrace& p2m, const ProtocolTrace& m2p) {
  if (p2m.direction() != TaskDirection::pure_to_mixed || m2p.direction() != TaskDirection::mixed_to_pure) {
    throw ArgumentError("check_symmetries: expects a pure-to-mixed and a mixed-to-pure trace");
  }
  if (p2m.reservoir_size() != m2p.reservoir_size() || p2m.iterations() != m2p.iterations() ||
      p2m.coupling().eta() != m2p.coupling().eta()) {
    throw ArgumentError("check_symmetries: traces differ in N, n or eta");
  }
  const int m = std::min(p2m.reservoir_size(), p2m.iterations());
  SymmetryReport r;
  for (int a = 0; a <= m; ++a) {
    for (int b = 1; b <= m; ++b) {
      r.complement = std::max(r.complement, std::abs(p2m.alpha(a, b) + p2m.beta(b, a) - 1.0));
      r.complement = std::max(r.complement, std::abs(m2p.alpha(a, b) + m2p.beta(b, a) - 1.0));
      r.reservoir_system = std::max(r.reservoir_system, std::abs(p2m.alpha(a, b) - m2p.beta(b, a)));
      r.system_reservoir = std::max(r.system_reservoir, std::abs(m2p.alpha(a, b) - p2m.beta(b, a)));
    }
  }
  return r;
}

}  // namespace homog
