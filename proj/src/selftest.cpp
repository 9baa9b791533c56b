#include "homog/selftest.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>

#include "homog/analysis.hpp"
#include "homog/exactsim.hpp"
#include "homog/metrics.hpp"
#include "homog/recurrence.hpp"

namespace homog::selftest {

namespace {

constexpr std::array kDirections{TaskDirection::pure_to_mixed, TaskDirection::mixed_to_pure};

double rel_abs_gap(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

Outcome verdict(double measured, double threshold, std::string detail, bool extra = true) {
  return Outcome{extra && measured <= threshold, measured, threshold, std::move(detail)};
}

// 1. Product approximation is exact with one reservoir qubit.
Outcome oracle_equivalence() {
  double worst = 0.0;
  for (double eta : {0.01, 0.1, 0.3, 0.5}) {
    const Coupling c(eta);
    for (TaskDirection d : kDirections) {
      const auto exact = exact_metrics(d, 1, 50, c);
      const ProtocolTrace trace = run_protocol(d, 1, 50, c);
      for (const MetricsRecord& e : exact) {
        const MetricsRecord a = relative_deterioration(trace, 1, e.n);
        worst = std::max({worst, std::abs(a.epsilon - e.epsilon), std::abs(a.delta() - e.delta()),
                          rel_abs_gap(a.R, e.R)});
      }
    }
  }
  return verdict(worst, frozen::kOracleEquivalence, "max |approx - exact| over eps, delta, R; N=1, n<=50");
}

// 2. Decoupled double-sum forms against the iteration.
Outcome closed_form_equivalence() {
  double worst = 0.0;
  for (double eta : {0.01, 0.1, 0.3, 0.5}) {
    const Coupling c(eta);
    for (TaskDirection d : kDirections) {
      const ProtocolTrace it = run_protocol(d, 10, 10, c);
      const ProtocolTrace cf = closed_form(d, 10, 10, c);
      for (int I = 0; I <= 10; ++I) {
        for (int j = 1; j <= 10; ++j) worst = std::max(worst, std::abs(it.alpha(I, j) - cf.alpha(I, j)));
      }
      for (int I = 1; I <= 10; ++I) {
        for (int j = 0; j <= 10; ++j) worst = std::max(worst, std::abs(it.beta(I, j) - cf.beta(I, j)));
      }
    }
  }
  return verdict(worst, frozen::kClosedForm, "max entry-wise |iterative - closed form|, N=n=10");
}

// 3. The three identities between the two task directions.
Outcome symmetries() {
  double worst = 0.0;
  for (double eta : {0.01, 0.1, 0.5}) {
    const Coupling c(eta);
    const SymmetryReport r =
        check_symmetries(run_protocol(TaskDirection::pure_to_mixed, 20, 20, c),
                         run_protocol(TaskDirection::mixed_to_pure, 20, 20, c));
    worst = std::max(worst, r.worst());
  }
  return verdict(worst, frozen::kSymmetry, "max violation of the three identities, N=n=20");
}

// 4. Weak-coupling asymmetry on the diagonal.
Outcome weak_asymmetry() {
  const Coupling c(0.01);
  const auto p2m = assess_possibility(TaskDirection::pure_to_mixed, c, 60);
  const auto m2p = assess_possibility(TaskDirection::mixed_to_pure, c, 60);
  int violations = 0;
  double min_margin = INFINITY;
  for (std::size_t i = 0; i < p2m.evidence.size(); ++i) {
    const double margin = m2p.evidence[i].log_R - p2m.evidence[i].log_R;
    min_margin = std::min(min_margin, margin);
    if (!(margin > 0.0)) ++violations;
  }
  std::ostringstream os;
  os << "p2m " << verdict_name(p2m.verdict) << ", m2p " << verdict_name(m2p.verdict)
     << ", min log(R_m2p/R_p2m) " << min_margin << ", ordering violations";
  const bool verdicts = p2m.verdict == Verdict::converging && m2p.verdict == Verdict::diverging;
  return verdict(violations, 0.0, os.str(), verdicts);
}

// 5. Strong coupling: pure-to-mixed R turns around in the middle of the diagonal.
Outcome strong_interior_minimum() {
  const auto series = diagonal_series(TaskDirection::pure_to_mixed, Coupling(0.1), 60);
  const auto it = std::min_element(series.begin(), series.end(),
                                   [](const DiagonalPoint& a, const DiagonalPoint& b) { return a.log_R < b.log_R; });
  const int k = it->k;
  return Outcome{k >= 10 && k <= 30, static_cast<double>(k), 30.0, "argmin_k R^k_k at eta=0.1, required in [10, 30]"};
}

// 6. Exact 3x3 against the product approximation.
Outcome exact_comparison() {
  bool ordered = true;
  double weak_gap = 0.0;
  double strong_gap = 0.0;
  for (double eta : {0.01, 0.1}) {
    const Coupling c(eta);
    const auto p2m = compare_engines(TaskDirection::pure_to_mixed, c, 3);
    const auto m2p = compare_engines(TaskDirection::mixed_to_pure, c, 3);
    for (std::size_t i = 0; i < p2m.size(); ++i) {
      ordered = ordered && m2p[i].approx.R > p2m[i].approx.R && m2p[i].exact.R > p2m[i].exact.R;
      double& gap = eta == 0.01 ? weak_gap : strong_gap;
      gap = std::max({gap, p2m[i].relative_gap(), m2p[i].relative_gap()});
    }
  }
  std::ostringstream os;
  os << "R_m2p > R_p2m in both engines: " << (ordered ? "yes" : "NO") << "; eta=0.1 gap " << strong_gap
     << "; eta=0.01 max relative R gap";
  return verdict(weak_gap, frozen::kExactGapWeak, os.str(), ordered);
}

// 7. Entropy surfaces.
Outcome entropy_surfaces() {
  constexpr int kMax = 30;
  const EntropySurface weak = entropy_surface(Coupling(0.01), kMax, kMax);
  const EntropySurface strong = entropy_surface(Coupling(0.1), kMax, kMax);
  double deviation = 0.0;
  double drift = 0.0;
  bool boundary = true;
  bool strong_rises = true;
  for (int N = 1; N <= kMax; ++N) {
    boundary = boundary && weak.at(N, 0) == N && strong.at(N, 0) == N;
    for (int n = 0; n <= kMax; ++n) deviation = std::max(deviation, std::abs(weak.at(N, n) - N));
    drift = std::max(drift, (weak.at(N, kMax) - weak.at(N, 0)) / N);
    for (int n = 5; n <= kMax; ++n) {
      strong_rises = strong_rises && strong.at(N, n) > N && strong.at(N, n) > strong.at(N, n - 1);
    }
  }
  std::ostringstream os;
  os << "S_tot(N,0)=N: " << (boundary ? "yes" : "NO") << "; eta=0.1 above N and rising for n>=5: "
     << (strong_rises ? "yes" : "NO") << "; eta=0.01 drift/qubit " << drift << " (<= "
     << frozen::kEntropyWeakDriftPerQubit << "); eta=0.01 max |S_tot - N|";
  return verdict(deviation, frozen::kEntropyWeakDeviation, os.str(),
                 boundary && strong_rises && drift <= frozen::kEntropyWeakDriftPerQubit);
}

// 8. Resources at fixed accuracy.
Outcome resources() {
  const Coupling c(0.3);
  constexpr double kEps = 0.1;
  const auto p2m = resource_curve(TaskDirection::pure_to_mixed, c, kEps, 30);
  const auto m2p = resource_curve(TaskDirection::mixed_to_pure, c, kEps, 30);
  bool ok = p2m.points.front().second.N_min == frozen::kResourceP2M &&
            m2p.points.front().second.N_min == frozen::kResourceM2P;
  int violations = 0;
  for (std::size_t i = 0; i < p2m.points.size(); ++i) {
    const auto& a = p2m.points[i].second.N_min;
    const auto& b = m2p.points[i].second.N_min;
    if (!a || !b || *b < *a) ++violations;
    if (i > 0) {
      const auto& pa = p2m.points[i - 1].second.N_min;
      const auto& pb = m2p.points[i - 1].second.N_min;
      if (!a || !pa || *a < *pa || !b || !pb || *b < *pb) ++violations;
    }
  }
  std::ostringstream os;
  os << "N_min(n=1) p2m " << p2m.points.front().second.N_min.value_or(-1) << " (want " << frozen::kResourceP2M
     << "), m2p " << m2p.points.front().second.N_min.value_or(-1) << " (want " << frozen::kResourceM2P
     << "); N_min(30) p2m " << p2m.points.back().second.N_min.value_or(-1) << ", m2p "
     << m2p.points.back().second.N_min.value_or(-1) << "; monotonicity/dominance violations";
  return verdict(violations, 0.0, os.str(), ok);
}

// 9. Physical states throughout; the reservoir map is affine.
Outcome physicality() {
  ExactOptions opts;
  opts.verify_each_step = false;
  auto engine = ExactHomogenizer::init(TaskDirection::pure_to_mixed, 4, Coupling(0.3), {}, opts);
  auto engine_m2p = ExactHomogenizer::init(TaskDirection::mixed_to_pure, 4, Coupling(0.3), {}, opts);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    for (auto* e : {&engine, &engine_m2p}) {
      e->step();
      const InvariantReport r = e->reservoir().check();
      worst = std::max({worst, r.hermiticity, r.trace, -r.min_eigenvalue});
    }
  }
  const double linearity = channel_linearity_check(Coupling(0.3), 2, 100);
  std::ostringstream os;
  os << "channel linearity max deviation " << linearity << " (<= " << frozen::kChannelLinearity
     << "); worst reservoir invariant defect, N=4, n=10";
  return verdict(worst, frozen::kPhysicality, os.str(), linearity <= frozen::kChannelLinearity);
}

constexpr std::array<Criterion, 9> kCriteria{{
    {1, "oracle equivalence (N=1)", 10.0, &oracle_equivalence},
    {2, "closed-form equivalence", 5.0, &closed_form_equivalence},
    {3, "direction symmetries", 5.0, &symmetries},
    {4, "weak-coupling asymmetry", 30.0, &weak_asymmetry},
    {5, "strong-coupling interior minimum", 30.0, &strong_interior_minimum},
    {6, "exact 3x3 comparison", 60.0, &exact_comparison},
    {7, "entropy surfaces", 10.0, &entropy_surfaces},
    {8, "resources", 60.0, &resources},
    {9, "physicality", 30.0, &physicality},
}};

}  // namespace

std::span<const Criterion> criteria() { return kCriteria; }

Result run(const Criterion& c) {
  Result r;
  r.id = c.id;
  r.name = std::string(c.name);
  r.budget_seconds = c.budget_seconds;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    r.outcome = c.check();
  } catch (const std::exception& e) {
    r.outcome = Outcome{false, NAN, NAN, std::string("exception: ") + e.what()};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::string Result::line() const {
  char head[160];
  std::snprintf(head, sizeof head, "[%s] %d. %s: ", passed() ? "PASS" : "FAIL", id, name.c_str());
  std::ostringstream os;
  os << head << outcome.detail << " = " << outcome.measured << " (limit " << outcome.threshold << "); "
     << seconds << " s of " << budget_seconds << " s";
  return os.str();
}

}  // namespace homog::selftest
