#include "homog/exactsim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "homog/errors.hpp"

namespace homog {

namespace {

DensityMatrix reservoir_qubit(TaskDirection d) {
  return DensityMatrix::from_bloch(BlochScalar(initial_conditions(d).reservoir));
}

DensityMatrix system_qubit(TaskDirection d) {
  return DensityMatrix::from_bloch(BlochScalar(initial_conditions(d).system));
}

std::vector<int> first_qubits(int count) {
  std::vector<int> q(static_cast<std::size_t>(count));
  std::iota(q.begin(), q.end(), 0);
  return q;
}

}  // namespace

ExactHomogenizer::ExactHomogenizer(TaskDirection direction, int reservoir_size, const Coupling& coupling,
                                   ExactOptions options)
    : direction_(direction),
      n_res_(reservoir_size),
      coupling_(coupling),
      options_(options),
      swap_(partial_swap_unitary(coupling)),
      reservoir_(direction == TaskDirection::pure_to_mixed ? DensityMatrix::maximally_mixed(reservoir_size)
                                                           : DensityMatrix::basis_state(reservoir_size, 0)),
      fresh_system_(system_qubit(direction)),
      reference_(reservoir_qubit(direction)),
      last_system_(system_qubit(direction)) {}

ExactHomogenizer ExactHomogenizer::init(TaskDirection direction, int reservoir_size, const Coupling& coupling,
                                        const Caps& caps, ExactOptions options) {
  if (reservoir_size < 1) throw ArgumentError("exact engine needs at least one reservoir qubit");
  if (reservoir_size > caps.exact_qubits) {
    std::ostringstream os;
    os << "exact engine: N = " << reservoir_size << " exceeds cap " << caps.exact_qubits;
    throw ResourceError(os.str());
  }
  return ExactHomogenizer(direction, reservoir_size, coupling, options);
}

double ExactHomogenizer::step() {
  DensityMatrix joint = tensor(reservoir_, fresh_system_);
  for (int k = 0; k < n_res_; ++k) apply_pair_inplace(joint.matrix(), n_res_, k, swap_, workspace_);

  last_system_ = partial_trace(joint, {n_res_});
  const auto keep = first_qubits(n_res_);
  reservoir_ = partial_trace(joint, keep);
  ++done_;

  if (options_.verify_each_step) {
    const InvariantReport r = reservoir_.check();
    if (!r.ok(options_.tolerance)) {
      std::ostringstream os;
      os << "exact reservoir after step " << done_ << ": hermiticity " << r.hermiticity << ", trace " << r.trace
         << ", min eigenvalue " << r.min_eigenvalue;
      throw InvariantError(os.str());
    }
  }
  return std::max(0.0, 1.0 - qubit_fidelity(last_system_, reference_));
}

double ExactHomogenizer::exact_robustness() const {
  if (direction_ == TaskDirection::mixed_to_pure) {
    // reference is the pure product |0...0>
    return std::clamp(reservoir_(0, 0).real(), 0.0, 1.0);
  }
  // reference is 1/2^N: F = (Tr sqrt(rho))^2 / 2^N
  double root_sum = 0.0;
  for (double l : reservoir_.eigenvalues()) root_sum += std::sqrt(std::max(l, 0.0));
  return std::clamp(root_sum * root_sum / static_cast<double>(reservoir_.dim()), 0.0, 1.0);
}

std::vector<MetricsRecord> exact_metrics(TaskDirection direction, int reservoir_size, int iterations,
                                         const Coupling& coupling, const Caps& caps, ExactOptions options) {
  if (iterations < 1) throw ArgumentError("exact_metrics: iterations must be >= 1");
  auto engine = ExactHomogenizer::init(direction, reservoir_size, coupling, caps, options);
  std::vector<MetricsRecord> out;
  out.reserve(static_cast<std::size_t>(iterations));
  for (int i = 1; i <= iterations; ++i) {
    const double eps = engine.step();
    const double delta = engine.exact_robustness();
    out.push_back(make_record(Engine::exact, direction, coupling.eta(), reservoir_size, i, eps, std::log(delta)));
  }
  return out;
}

DensityMatrix homogenizer_channel(const DensityMatrix& machine, const DensityMatrix& system, const Coupling& coupling) {
  if (system.qubits() != 1) throw ArgumentError("homogenizer_channel: system must be one qubit");
  const int n_res = machine.qubits();
  DensityMatrix joint = tensor(machine, system);
  const UnitaryMatrix u = partial_swap_unitary(coupling);
  PairWorkspace ws;
  for (int k = 0; k < n_res; ++k) apply_pair_inplace(joint.matrix(), n_res, k, u, ws);
  const auto keep = first_qubits(n_res);
  return partial_trace(joint, keep);
}

double channel_linearity_check(const Coupling& coupling, int reservoir_size, int trials, std::uint64_t seed) {
  if (reservoir_size < 1 || reservoir_size > 3) throw ArgumentError("channel_linearity_check: N must be in [1, 3]");
  if (trials < 1) throw ArgumentError("channel_linearity_check: trials must be >= 1");
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const DensityMatrix a = random_density(reservoir_size, rng);
    const DensityMatrix b = random_density(reservoir_size, rng);
    const DensityMatrix x = random_density(1, rng);
    const double lambda = unit(rng);
    const DensityMatrix mixed(lambda * a.matrix() + (1.0 - lambda) * b.matrix());
    const CMatrix lhs = homogenizer_channel(mixed, x, coupling).matrix();
    const CMatrix rhs = lambda * homogenizer_channel(a, x, coupling).matrix() +
                        (1.0 - lambda) * homogenizer_channel(b, x, coupling).matrix();
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace homog
