#include "tropwave/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace tropwave {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t kGrid = std::uint64_t{1} << 32;

// Exact bounding box: polytope vertices, or the integer box around a ball.
std::pair<std::vector<Rational>, std::vector<Rational>> bounding_box(const OmegaDomain& omega) {
  const std::size_t n = omega.dim();
  std::vector<Rational> lo(n), hi(n);
  if (omega.kind() == OmegaDomain::Kind::polytope) {
    const auto& vs = omega.geometry().vertices;
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = hi[i] = vs.front()[i].rational();
      for (const auto& v : vs) {
        lo[i] = std::min(lo[i], v[i].rational());
        hi[i] = std::max(hi[i], v[i].rational());
      }
    }
    return {lo, hi};
  }
  if (omega.kind() != OmegaDomain::Kind::ball) {
    throw std::invalid_argument("avalanche experiments need a polytope or ball domain");
  }
  const double r = omega.radius().to_double();
  for (std::size_t i = 0; i < n; ++i) {
    const double c = omega.center()[i].to_double();
    lo[i] = Rational(static_cast<long long>(std::floor(c - r)));
    hi[i] = Rational(static_cast<long long>(std::ceil(c + r)));
  }
  return {lo, hi};
}

// Grid estimate of the face of q0 on an approximate domain.
Scalar estimated_face_measure(const TropicalSeries& f, const LatticeVector& q0) {
  const auto& omega = f.domain();
  const auto [lo, hi] = bounding_box(omega);
  const std::size_t n = omega.dim();
  std::vector<double> l(n), w(n);
  double cell = 1;
  for (std::size_t i = 0; i < n; ++i) {
    l[i] = to_double(lo[i]);
    w[i] = to_double(hi[i] - lo[i]) / kApproxMeasureGrid;
    cell *= w[i];
  }
  std::size_t total = 1, hits = 0;
  for (std::size_t i = 0; i < n; ++i) total *= kApproxMeasureGrid;
  Point z(n);
  for (std::size_t k = 0; k < total; ++k) {
    std::size_t rest = k;
    for (std::size_t i = 0; i < n; ++i) {
      z[i] = Scalar::approximate(l[i] + (static_cast<double>(rest % kApproxMeasureGrid) + 0.5) * w[i]);
      rest /= kApproxMeasureGrid;
    }
    if (!omega.interior(z)) continue;
    // Probes in the outer strip are pulled in radially to one cell width from
    // the boundary; closer ones make the default enumeration explode.
    double r2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = z[i].to_double() - omega.center()[i].to_double();
      r2 += d * d;
    }
    const double r = std::sqrt(r2), rmax = omega.radius().to_double() - w[0];
    if (r > rmax) {
      for (std::size_t i = 0; i < n; ++i) {
        const double c = omega.center()[i].to_double();
        z[i] = Scalar::approximate(c + (z[i].to_double() - c) * rmax / r);
      }
    }
    const auto e = f.evaluate_full(z);
    if (e.argmin.size() == 1 && e.argmin.front() == q0) ++hits;
  }
  return Scalar::approximate(static_cast<double>(hits) * cell);
}

}  // namespace

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ index);
}

Point random_interior_point(const OmegaDomain& omega, std::mt19937_64& rng) {
  const auto [lo, hi] = bounding_box(omega);
  const std::size_t n = omega.dim();
  for (int attempt = 0; attempt < 1'000'000; ++attempt) {
    Point z(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t k = rng() >> 32;
      z[i] = Scalar(lo[i] + (hi[i] - lo[i]) * Rational(static_cast<long long>(k), static_cast<long long>(kGrid)));
    }
    const Point a = omega.adapt(z);
    if (omega.interior(a)) return a;
  }
  throw ResourceError("rejection sampling found no interior point");
}

std::vector<AvalancheSample> avalanche_experiment(const DomainPtr& omega, std::size_t sample_count,
                                                  std::uint64_t seed) {
  TropicalSeries f = TropicalSeries::zero(omega);
  return avalanche_experiment(omega, sample_count, seed, f);
}

std::vector<AvalancheSample> avalanche_experiment(const DomainPtr& omega, std::size_t sample_count,
                                                  std::uint64_t seed, TropicalSeries& final_series) {
  if (sample_count == 0) throw std::invalid_argument("sample_count must be at least 1");
  const bool exact = omega->kind() == OmegaDomain::Kind::polytope;
  if (exact && omega->dim() != 2 && omega->dim() != 3) {
    throw std::invalid_argument("exact face measures need dimension 2 or 3");
  }
  TropicalSeries f = TropicalSeries::zero(omega);
  std::vector<AvalancheSample> out;
  out.reserve(sample_count);
  std::size_t steps = 0;
  for (std::size_t i = 0; i < sample_count; ++i) {
    std::mt19937_64 rng(sub_seed(seed, i));
    AvalancheSample s;
    s.index = i;
    s.p = random_interior_point(*omega, rng);
    if (exact) {
      auto region = avalanche_region(f, s.p);
      s.q0 = region.q0;
      s.measure = region.measure;
    } else {
      const auto e = f.evaluate_full(s.p);
      s.measure = Scalar::zero(NumericMode::approximate);
      if (e.argmin.size() == 1) {
        s.q0 = e.argmin.front();
        s.measure = estimated_face_measure(f, *s.q0);
      }
    }
    const WaveStep step = wave_single_in_place(f, s.p, i);
    s.c = step.c;
    if (step.c.sign() > 0) ++steps;
    s.steps = steps;
    out.push_back(std::move(s));
  }
  final_series = std::move(f);
  return out;
}

std::string fit_method_name(FitMethod m) { return m == FitMethod::mle ? "mle" : "log_binned"; }

namespace {

struct Tail {
  std::vector<double> xs;  // sorted, all >= x_min
  double x_min;
};

double mle_alpha(const Tail& t) {
  double s = 0;
  for (double x : t.xs) s += std::log(x / t.x_min);
  if (!(s > 0)) throw std::invalid_argument("power-law fit: samples have zero log-spread");
  return 1.0 + static_cast<double>(t.xs.size()) / s;
}

double ks_distance(const Tail& t, double alpha) {
  const double n = static_cast<double>(t.xs.size());
  double d = 0;
  for (std::size_t i = 0; i < t.xs.size(); ++i) {
    const double model = 1.0 - std::pow(t.xs[i] / t.x_min, 1.0 - alpha);
    d = std::max({d, std::abs(static_cast<double>(i + 1) / n - model), std::abs(static_cast<double>(i) / n - model)});
  }
  return d;
}

// Least-squares slope of log density against log bin centre on 20 log-spaced bins.
std::optional<double> regression_alpha(const Tail& t) {
  const double lo = std::log(t.x_min), hi = std::log(t.xs.back());
  if (!(hi > lo)) return std::nullopt;
  constexpr int kBins = 20;
  std::vector<std::size_t> counts(kBins, 0);
  for (double x : t.xs) {
    int b = static_cast<int>((std::log(x) - lo) / (hi - lo) * kBins);
    counts[std::clamp(b, 0, kBins - 1)]++;
  }
  std::vector<double> u, v;
  for (int b = 0; b < kBins; ++b) {
    if (counts[b] == 0) continue;
    const double a = std::exp(lo + (hi - lo) * b / kBins), z = std::exp(lo + (hi - lo) * (b + 1) / kBins);
    u.push_back(0.5 * (std::log(a) + std::log(z)));
    v.push_back(std::log(static_cast<double>(counts[b]) / (z - a)));
  }
  if (u.size() < 2) return std::nullopt;
  const double mu = std::accumulate(u.begin(), u.end(), 0.0) / u.size();
  const double mv = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    sxy += (u[k] - mu) * (v[k] - mv);
    sxx += (u[k] - mu) * (u[k] - mu);
  }
  return -sxy / sxx;
}

Tail tail_above(const std::vector<double>& sorted, double x_min) {
  Tail t{{}, x_min};
  auto it = std::lower_bound(sorted.begin(), sorted.end(), x_min);
  t.xs.assign(it, sorted.end());
  if (t.xs.size() < kMinTailSamples) {
    throw std::invalid_argument("power-law fit needs at least " + std::to_string(kMinTailSamples) +
                                " samples above x_min, got " + std::to_string(t.xs.size()));
  }
  return t;
}

}  // namespace

PowerLawFit fit_power_law(const std::vector<double>& samples, const XMinPolicy& policy) {
  std::vector<double> sorted;
  for (double x : samples) {
    if (x > 0 && std::isfinite(x)) sorted.push_back(x);
  }
  std::sort(sorted.begin(), sorted.end());

  std::optional<Tail> best;
  double best_alpha = 0, best_ks = 0;
  if (policy.fixed) {
    if (!(*policy.fixed > 0)) throw std::invalid_argument("power-law fit: x_min must be positive");
    best = tail_above(sorted, *policy.fixed);
    best_alpha = mle_alpha(*best);
    best_ks = ks_distance(*best, best_alpha);
  } else {
    if (sorted.size() < kMinTailSamples) tail_above(sorted, sorted.empty() ? 1.0 : sorted.front());
    // Candidates: distinct values at 50 quantiles, keeping at least 50 tail samples.
    std::vector<double> cands;
    const std::size_t last = sorted.size() - kMinTailSamples;
    for (int k = 0; k < 50; ++k) cands.push_back(sorted[last * k / 50]);
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    for (double xm : cands) {
      Tail t = tail_above(sorted, xm);
      double a;
      try {
        a = mle_alpha(t);
      } catch (const std::invalid_argument&) {
        continue;
      }
      const double d = ks_distance(t, a);
      if (!best || d < best_ks) {
        best = std::move(t);
        best_alpha = a;
        best_ks = d;
      }
    }
    if (!best) throw std::invalid_argument("power-law fit: samples have zero log-spread");
  }
  PowerLawFit fit;
  fit.x_min = best->x_min;
  fit.alpha = best_alpha;
  fit.tail_count = best->xs.size();
  fit.ks = best_ks;
  fit.method = FitMethod::mle;
  fit.alpha_regression = regression_alpha(*best);
  return fit;
}

std::vector<double> pareto_samples(double alpha, double x_min, std::size_t n, std::uint64_t seed) {
  if (!(alpha > 1) || !(x_min > 0)) throw std::invalid_argument("pareto: need alpha > 1 and x_min > 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> out(n);
  for (auto& x : out) x = x_min * std::pow(1.0 - u(rng), -1.0 / (alpha - 1.0));
  return out;
}

namespace {

std::string decimal(const Scalar& s) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", s.to_double());
  return buf;
}

}  // namespace

void write_avalanche_csv(std::ostream& os, const std::vector<AvalancheSample>& samples, std::size_t dim) {
  static const char* axes[] = {"px", "py", "pz"};
  os << "index";
  for (std::size_t i = 0; i < dim; ++i) os << ',' << axes[i];
  for (std::size_t i = 0; i < dim; ++i) os << ",q" << i + 1;
  os << ",measure,c";
  for (std::size_t i = 0; i < dim; ++i) os << ',' << axes[i] << "_exact";
  os << ",measure_exact,c_exact\n";
  for (const auto& s : samples) {
    os << s.index;
    for (std::size_t i = 0; i < dim; ++i) os << ',' << decimal(s.p[i]);
    for (std::size_t i = 0; i < dim; ++i) {
      os << ',';
      if (s.q0) os << (*s.q0)[i];
    }
    os << ',' << decimal(s.measure) << ',' << decimal(s.c);
    for (std::size_t i = 0; i < dim; ++i) os << ',' << s.p[i].str();
    os << ',' << s.measure.str() << ',' << s.c.str() << '\n';
  }
}

}  // namespace tropwave
