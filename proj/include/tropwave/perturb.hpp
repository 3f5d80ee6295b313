#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tropwave/dynamics.hpp"
#include "tropwave/subdivision.hpp"

namespace tropwave {

/// Parameters of the perturbed flow. Unset values are derived from the
/// instance: eps_level = min(eps/4, min_p f(p)/2), eps_cap = eps_level,
/// delta = min(smallest positive trace increment / 4, eps / 16).
struct PerturbConfig {
  Scalar eps = Scalar(Rational(1, 4));
  std::optional<Scalar> eps_level;
  std::optional<Scalar> eps_cap;
  std::optional<Scalar> delta;
  std::uint64_t seed = 1;
  int retry_limit = 8;
  /// Flow samples per step: t = 1/k, 2/k, ..., 1.
  int flow_samples = 8;
  /// Probe grid resolution per axis; 0 picks 100 in the plane, 20 in space.
  std::size_t probe_grid = 0;
  /// Extra round-robin passes allowed after the recorded trace.
  std::size_t pass_cap = 1000;
};

class PerturbError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BuildResult {
  DomainPtr omega;
  std::vector<Point> points;
  /// Wave closure of 0 on the original domain.
  std::optional<TropicalSeries> f;
  FlowTrace trace;
  Scalar eps_level, eps_cap;
  /// The level set {f >= eps_level}.
  DomainPtr level;
  /// The mild Q-polytope and the starting series on it.
  DomainPtr q;
  std::optional<TropicalSeries> g;
  /// Random lowering of each completed exponent.
  std::map<LatticeVector, Scalar> lowered;
  int attempts = 0;
};

/// Builds Q and g: level set of the closure, shift and cap, completion of
/// the support to every lattice point of its hull with generically lowered
/// coefficients, and Q as the region where every monomial is non-negative.
/// Retries with fresh lowerings and a halved cap until C(g) and every face
/// of Q are mild. Throws PerturbError when retries run out.
BuildResult build_Q_and_g(const DomainPtr& omega, const std::vector<Point>& points, const PerturbConfig& config);

/// Mildness of one sampled intermediate series.
struct FlowCertificate {
  /// Replay step, or -1 for g itself.
  long step = -1;
  Scalar t;
  bool mild = true;
  std::optional<CellVerdict> offence;
};

struct ReplayStep {
  std::size_t point_index = 0;
  LatticeVector q;
  /// Full increment on the current series and the one applied (c - delta, clamped at 0).
  Scalar c_full, c_applied;
  /// False for steps of the extra passes that follow the recorded trace.
  bool from_trace = true;
  std::size_t samples = 0;
  bool mild = true;
};

struct PerturbReport {
  bool pass = false;
  std::string failure;

  Scalar eps, eps_level, eps_cap, delta;
  int attempts = 0;
  DomainPtr q;
  std::optional<TropicalSeries> g, result;

  std::vector<ReplayStep> steps;
  /// Non-mild certificates first; all certificates are counted in certificates_checked.
  std::vector<FlowCertificate> offences;
  std::size_t certificates_checked = 0;
  std::size_t extra_passes = 0;

  /// sup over probes in Q of |F - (f - eps_level)|.
  Scalar distance_q;
  Point worst_q;
  /// sup over probes in the original domain of |F extended by 0 - f|.
  Scalar distance_omega;
  Point worst_omega;
  std::size_t probes = 0;
};

/// Replays the recorded steps on Q from g with every increment reduced by
/// delta, then continues round-robin until every increment is at most delta.
/// Certifies mildness at sampled flow times of each step and measures the
/// distance to the unperturbed closure.
PerturbReport perturbed_replay(const BuildResult& build, const PerturbConfig& config);

/// build_Q_and_g followed by perturbed_replay; a failed build becomes a
/// failing report.
PerturbReport perturb_pipeline(const DomainPtr& omega, const std::vector<Point>& points,
                               const PerturbConfig& config);

}  // namespace tropwave
