#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "tropwave/experiments.hpp"
#include "tropwave/perturb.hpp"
#include "tropwave/subdivision.hpp"

namespace tropwave {

using Json = nlohmann::ordered_json;

/// Scene problem with the position of the offending value (1-based; 0 when unknown).
class SceneError : public std::runtime_error {
 public:
  SceneError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  std::size_t line_, column_;
};

struct DomainSpec {
  OmegaDomain::Kind kind = OmegaDomain::Kind::polytope;
  std::size_t dim = 2;
  std::vector<HalfSpace> halfspaces;
  Point center;
  Scalar radius;
  std::string name;
};

struct InitialSeriesSpec {
  SeriesKind kind = SeriesKind::omega;
  std::vector<Monomial> terms;
};

struct ExperimentSpec {
  std::size_t samples = 1000;
  std::uint64_t seed = 42;
  /// Fixed x_min for the fit; unset scans quantiles.
  std::optional<double> x_min;
};

struct SceneConfig {
  std::string name;
  DomainSpec domain;
  /// Starting series; the zero series when unset.
  std::optional<InitialSeriesSpec> initial;
  std::vector<Point> points;
  Schedule schedule;
  std::size_t step_cap = 1'000'000;
  NumericMode mode = NumericMode::exact;
  PerturbConfig perturb;
  ExperimentSpec experiment;
  std::string output_dir = "out";
};

/// Parses a scene document. Syntax and schema errors carry line and column.
SceneConfig parse_scene(const std::string& text);
SceneConfig load_scene(const std::string& path);
Json scene_to_json(const SceneConfig& scene);
/// Pretty-printed scene; parse_scene(serialize_scene(s)) reproduces s.
std::string serialize_scene(const SceneConfig& scene);

DomainPtr make_domain(const SceneConfig& scene);
TropicalSeries initial_series(const SceneConfig& scene, const DomainPtr& domain);

Json monomials_to_json(const std::vector<Monomial>& terms);
/// Explicit terms plus the small canonical form when it can be computed.
Json series_to_json(const TropicalSeries& f, bool with_small_form = true);
Json trace_to_json(const FlowTrace& trace);
Json report_to_json(const PerturbReport& report);
Json fit_to_json(const PowerLawFit& fit);

/// "2x", "x+2/15", "1-y", "1/3".
std::string monomial_label(const Monomial& m);

struct SvgStyle {
  bool labels = true;
  int size = 1024;
};

/// Planar picture: dashed domain boundary, solid corner locus, P as dots,
/// optional monomial labels at face centroids.
std::string render_svg(const TropicalSeries& f, const std::vector<Point>& points, const SvgStyle& style = {});
/// Corner-locus polygons of a series on a 3-D polytope as a Wavefront mesh.
std::string render_obj(const CornerComplex& complex);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace tropwave
