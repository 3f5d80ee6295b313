#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tropwave/dynamics.hpp"

namespace tropwave {

/// One random wave: where it struck, which monomial rose, and the measure of
/// the face that moved.
struct AvalancheSample {
  std::size_t index = 0;
  Point p;
  /// Empty when p landed on the corner locus.
  std::optional<LatticeVector> q0;
  Scalar measure;
  Scalar c;
  /// Non-zero steps so far, this one included.
  std::size_t steps = 0;
};

/// Grid resolution per axis used to estimate face measures on approximate domains.
inline constexpr int kApproxMeasureGrid = 200;

/// Stream of random waves starting from the zero series. Points are uniform
/// in the interior (rejection from the bounding box) with coordinates on a
/// 2^-32 grid; sample i draws from its own generator seeded by
/// splitmix64(seed, i), so the stream depends only on the seed.
/// Polytope domains give exact measures; balls estimate them on a grid.
std::vector<AvalancheSample> avalanche_experiment(const DomainPtr& omega, std::size_t sample_count,
                                                  std::uint64_t seed);

/// Same, also returning the final series.
std::vector<AvalancheSample> avalanche_experiment(const DomainPtr& omega, std::size_t sample_count,
                                                  std::uint64_t seed, TropicalSeries& final_series);

/// splitmix64 of seed combined with index.
std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index);

/// Random interior point of omega with coordinates on the 2^-32 grid of its bounding box.
Point random_interior_point(const OmegaDomain& omega, std::mt19937_64& rng);

enum class FitMethod { mle, log_binned };

struct PowerLawFit {
  double x_min = 0;
  /// Density exponent: p(x) ~ x^-alpha above x_min.
  double alpha = 0;
  std::size_t tail_count = 0;
  /// Kolmogorov-Smirnov distance between the tail and the fitted law.
  double ks = 0;
  FitMethod method = FitMethod::mle;
  /// Slope estimate from a log-binned histogram, for comparison.
  std::optional<double> alpha_regression;
};

/// x_min policy: a fixed value, or a scan over sample quantiles minimising KS.
struct XMinPolicy {
  std::optional<double> fixed;
  static XMinPolicy at(double x) { return {x}; }
  static XMinPolicy scan() { return {}; }
};

inline constexpr std::size_t kMinTailSamples = 50;

/// Continuous MLE alpha = 1 + N / sum ln(x_i / x_min). Throws
/// std::invalid_argument with fewer than 50 samples above x_min or when the
/// tail has no spread.
PowerLawFit fit_power_law(const std::vector<double>& samples, const XMinPolicy& policy);

/// n draws from the continuous Pareto law with density ~ x^-alpha on [x_min, inf).
std::vector<double> pareto_samples(double alpha, double x_min, std::size_t n, std::uint64_t seed);

/// index,px,py[,pz],q1..qn,measure,c followed by exact p/q columns.
void write_avalanche_csv(std::ostream& os, const std::vector<AvalancheSample>& samples, std::size_t dim);

std::string fit_method_name(FitMethod m);

}  // namespace tropwave
