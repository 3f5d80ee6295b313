#include "tropwave/selftest.hpp"

#include <functional>
#include <sstream>

#include "tropwave/io.hpp"

namespace tropwave {

namespace {

Scalar q(long long p, long long d = 1) { return Scalar(Rational(p, d)); }

DomainPtr square() {
  return OmegaDomain::polytope({HalfSpace::make({1, 0}, 0), HalfSpace::make({0, 1}, 0), HalfSpace::make({-1, 0}, -1),
                                HalfSpace::make({0, -1}, -1)},
                               2, "unit-square");
}

const char* kWaveStepScene = R"({
  "name": "square-wave",
  "domain": {"kind": "polytope", "halfspaces": [
    {"normal": [1, 0], "offset": "0"}, {"normal": [0, 1], "offset": "0"},
    {"normal": [-1, 0], "offset": "-1"}, {"normal": [0, -1], "offset": "-1"}]},
  "initial": {"kind": "omega", "terms": [{"q": [0, 0], "a": "1/3"}]},
  "points": [["1/5", "1/2"]]
})";

// The wave step at (1/5, 1/2) gives min(2x, x+2/15, y, 1-x, 1-y, 1/3).
std::string wave_step() {
  auto d = square();
  auto f = TropicalSeries::omega(d, {{{0, 0}, q(1, 3)}});
  auto g = wave_single(f, {q(1, 5), q(1, 2)}).series;
  const std::vector<Monomial> want{{{-1, 0}, q(1)}, {{0, -1}, q(1)}, {{0, 0}, q(1, 3)},
                                   {{0, 1}, q(0)},  {{1, 0}, q(2, 15)}, {{2, 0}, q(0)}};
  auto got = small_support(g);
  if (got != want) {
    std::ostringstream os;
    os << "small form has " << got.size() << " monomials:";
    for (const auto& m : got) os << ' ' << monomial_label(m);
    return os.str();
  }
  return {};
}

// Canonical form of min(x, 1-x, y, 1-y, 1/3): a_0 = 1/3 and every other
// coefficient at its default.
std::string canonical_example() {
  auto d = square();
  auto f = TropicalSeries::omega(d, {{{0, 0}, q(1, 3)}});
  auto c = canonical_form(f);
  if (c.coefficient({0, 0}) != q(1, 3)) return "a_0 = " + c.coefficient({0, 0}).str();
  for (int i = -3; i <= 3; ++i) {
    for (int j = -3; j <= 3; ++j) {
      if (i == 0 && j == 0) continue;
      const LatticeVector v{i, j};
      if (c.coefficient(v) != -d->support_value(v)) return "a_" + v.str() + " = " + c.coefficient(v).str();
    }
  }
  return {};
}

// G_p 0 = min(l(z), l(p)) on a 12 x 12 grid.
std::string closed_form() {
  auto d = square();
  const Point p{q(2, 7), q(3, 5)};
  auto g = wave_single(TropicalSeries::zero(d), p).series;
  const Scalar lp = d->weighted_distance(p).value;
  for (int i = 0; i <= 12; ++i) {
    for (int j = 0; j <= 12; ++j) {
      const Point z{q(i, 12), q(j, 12)};
      const Scalar want = min(d->weighted_distance(z).value, lp);
      if (g.evaluate(z) != want) return "mismatch at " + point_str(z);
    }
  }
  return {};
}

std::string run_artifacts() {
  const SceneConfig s = parse_scene(kWaveStepScene);
  auto d = make_domain(s);
  auto res = wave_closure(initial_series(s, d), s.points, s.schedule);
  const Json j = series_to_json(res.series);
  bool found = false;
  for (const auto& t : j["terms"]) found = found || (t["q"] == Json::array({1, 0}) && t["a"] == "2/15");
  if (!found) return "series JSON lacks a_(1,0) = 2/15";
  if (res.trace.steps.size() != 1) return "trace has " + std::to_string(res.trace.steps.size()) + " steps";
  const std::string svg = render_svg(res.series, s.points);
  for (const char* label : {">2x<", ">x+2/15<", ">y<", ">1-x<", ">1-y<", ">1/3<"}) {
    if (svg.find(label) == std::string::npos) return std::string("SVG lacks label ") + label;
  }
  if (svg.find("<circle") == std::string::npos) return "SVG lacks the marked point";
  if (parse_scene(serialize_scene(s)).points != s.points) return "scene round trip changed the points";
  return {};
}

std::string empty_run() {
  auto d = square();
  auto res = wave_closure(TropicalSeries::zero(d), {});
  if (!res.trace.steps.empty()) return "trace not empty";
  // The zero series stores only its constant term 0.
  const Json want = Json::array({Json{{"q", Json::array({0, 0})}, {"a", "0"}}});
  if (series_to_json(res.series)["terms"] != want) return "series is not the zero series";
  return {};
}

}  // namespace

std::vector<SelftestCase> run_selftest() {
  const std::vector<std::pair<std::string, std::function<std::string()>>> cases{
      {"wave step at (1/5,1/2) on the square", wave_step},
      {"canonical form of min(x,1-x,y,1-y,1/3)", canonical_example},
      {"wave from zero equals min(l(z), l(p))", closed_form},
      {"run and render artifacts of the wave step", run_artifacts},
      {"run with no points", empty_run},
  };
  std::vector<SelftestCase> out;
  for (const auto& [name, fn] : cases) {
    SelftestCase c{name, false, {}};
    try {
      c.detail = fn();
      c.pass = c.detail.empty();
    } catch (const std::exception& e) {
      c.detail = std::string("exception: ") + e.what();
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace tropwave
