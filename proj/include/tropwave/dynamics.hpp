#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tropwave/series.hpp"

namespace tropwave {

/// One application of a single-point wave operator.
struct WaveStep {
  std::size_t point_index = 0;
  LatticeVector q;
  Scalar c;
  Scalar value_before;
  Scalar value_after;
  /// Position in the global step sequence, zero-increment steps included.
  std::size_t order = 0;
};

/// Order in which the points of P are visited. Every pass visits each point
/// once, so every point is visited infinitely often.
struct Schedule {
  enum class Kind { round_robin, seeded_random };
  Kind kind = Kind::round_robin;
  std::uint64_t seed = 0;

  static Schedule round_robin() { return {}; }
  static Schedule seeded_random(std::uint64_t seed) { return {Kind::seeded_random, seed}; }
  std::string str() const;
};

enum class StopReason { stabilized, tolerance };

/// The non-zero steps of a closure run in order.
struct FlowTrace {
  std::vector<WaveStep> steps;
  Schedule schedule;
  StopReason status = StopReason::stabilized;
  std::size_t total_steps = 0;
  std::size_t passes = 0;
};

/// Raised when wave_closure hits its step cap; carries the partial trace.
class StepCapExceeded : public ResourceError {
 public:
  StepCapExceeded(const std::string& what, FlowTrace trace) : ResourceError(what), trace(std::move(trace)) {}
  FlowTrace trace;
};

/// a_q += c * t.
TropicalSeries add_monomial(const TropicalSeries& f, const LatticeVector& q, const Scalar& c,
                            const Scalar& t = 1);

struct WaveResult {
  TropicalSeries series;
  WaveStep step;
};

/// G_p: raises the unique minimal monomial at p until a second one ties.
/// Leaves f unchanged (c = 0) when p is already on the corner locus.
WaveResult wave_single(const TropicalSeries& f, const Point& p);
/// Same as wave_single, updating f in place.
WaveStep wave_single_in_place(TropicalSeries& f, const Point& p, std::size_t point_index = 0);

struct ClosureResult {
  TropicalSeries series;
  FlowTrace trace;
  WorkingSet working;
};

/// G_P: iterates wave_single over P until a full pass changes nothing (exact
/// mode) or the largest increment of a pass is below `tolerance`
/// (approximate mode).
ClosureResult wave_closure(const TropicalSeries& f_init, const std::vector<Point>& points,
                           const Schedule& schedule = Schedule::round_robin(), double tolerance = 1e-9,
                           std::size_t step_cap = 1'000'000);

/// Re-applies the recorded increments; reproduces the closure exactly.
TropicalSeries replay(const TropicalSeries& f_init, const FlowTrace& trace);

struct LevelSet {
  DomainPtr domain;
  /// f - eps on the level set, as a series of that domain.
  TropicalSeries restricted;
};

/// {z : f(z) >= eps} with f - eps restricted to it. Throws std::domain_error
/// ("eps too large") when the set has empty interior.
LevelSet level_set_polytope(const TropicalSeries& f, const Scalar& eps);

struct AvalancheRegion {
  std::optional<PolytopeGeometry> geometry;
  Scalar measure;
  std::optional<LatticeVector> q0;
};

/// The face of the monomial minimal at p, i.e. the set changed by G_p.
/// Empty with measure 0 when p lies on the corner locus.
AvalancheRegion avalanche_region(const TropicalSeries& f, const Point& p);

}  // namespace tropwave
