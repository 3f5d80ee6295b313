#include "doctest.h"
#include "support.hpp"
#include "tropwave/io.hpp"
#include "tropwave/selftest.hpp"

using namespace testsupport;

namespace {

const char* kSquare = R"({
  "name": "square",
  "domain": {"kind": "polytope", "halfspaces": [
    {"normal": [1, 0], "offset": "0"},
    {"normal": [0, 1], "offset": "0"},
    {"normal": [-1, 0], "offset": "-1"},
    {"normal": [0, -1], "offset": "-1"}]},
  "points": [["1/5", "1/2"], ["2/3", "1/3"]]
})";

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto k = hay.find(needle); k != std::string::npos; k = hay.find(needle, k + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("scene parsing") {
  auto s = parse_scene(kSquare);
  CHECK(s.name == "square");
  CHECK(s.domain.dim == 2);
  CHECK(s.domain.halfspaces.size() == 4);
  CHECK(s.points == std::vector<Point>{P(R(1, 5), R(1, 2)), P(R(2, 3), R(1, 3))});
  CHECK(s.mode == NumericMode::exact);
  CHECK(s.schedule.kind == Schedule::Kind::round_robin);
  CHECK(s.perturb.eps == R(1, 4));
  CHECK(make_domain(s)->geometry().vertices.size() == 4);
}

TEST_CASE("scene round trip") {
  auto s = parse_scene(kSquare);
  s.initial = InitialSeriesSpec{SeriesKind::omega, {M({0, 0}, R(1, 3)), M({1, 0}, R(1, 7))}};
  s.schedule = Schedule::seeded_random(9);
  s.perturb.delta = R(1, 64);
  s.perturb.eps_level = R(1, 8);
  s.experiment.x_min = 0.125;
  s.experiment.samples = 77;
  s.output_dir = "elsewhere";
  const std::string once = serialize_scene(s);
  const auto back = parse_scene(once);
  CHECK(serialize_scene(back) == once);
  CHECK(back.points == s.points);
  CHECK(back.initial->terms == s.initial->terms);
  CHECK(*back.perturb.delta == R(1, 64));
  CHECK(back.schedule.seed == 9);

  const char* ball = R"({"domain": {"kind": "ball", "center": ["0", "0"], "radius": "3/2"}, "points": [["1/2", "0"]]})";
  auto b = parse_scene(ball);
  CHECK(b.mode == NumericMode::approximate);
  CHECK(serialize_scene(parse_scene(serialize_scene(b))) == serialize_scene(b));
}

TEST_CASE("syntax errors carry line and column") {
  const std::string text = "{\n  \"domain\": {\n    \"kind\": \"polytope\",,\n  }\n}";
  try {
    parse_scene(text);
    FAIL("no error");
  } catch (const SceneError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 24);
    CHECK(std::string(e.what()).rfind("line 3, column 24: syntax error", 0) == 0);
  }
}

TEST_CASE("non-primitive normals get a fix-it") {
  const std::string text = R"({
  "domain": {"halfspaces": [
    {"normal": [1, 0], "offset": "0"},
    {"normal": [0, 2], "offset": "1"},
    {"normal": [-1, 0], "offset": "-1"},
    {"normal": [0, -1], "offset": "-1"}]}
})";
  try {
    parse_scene(text);
    FAIL("no error");
  } catch (const SceneError& e) {
    CHECK(e.line() == 4);
    CHECK(e.column() == 16);
    CHECK(e.message() ==
          "domain.halfspaces[1].normal: normal [0,2] is not primitive; divide by 2: use normal [0,1] with offset \"1/2\"");
  }
}

TEST_CASE("schema errors") {
  auto message = [](const std::string& text) {
    try {
      parse_scene(text);
    } catch (const SceneError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message(R"({"points": []})") == "line 1, column 1: <root>: missing field \"domain\"");
  CHECK(message(R"({"domain": {"kind": "ball", "center": [0, 0], "radius": 1}, "mode": "exact"})") ==
        "line 1, column 69: mode: ball domains are approximate");
  CHECK(message(R"({"domain": {"kind": "ball", "center": [0, 0], "radius": 1}, "pionts": []})") ==
        "line 1, column 71: pionts: unknown field \"pionts\"");
  CHECK(message(R"({"domain": {"kind": "ball", "center": [0, 0], "radius": 0.5}})") ==
        "line 1, column 57: domain.radius: floating-point values are not exact; write the number as a \"p/q\" string");
  const std::string outside = std::string(kSquare).replace(std::string(kSquare).find("\"2/3\""), 5, "\"3/2\"");
  CHECK(message(outside).find("points[1]: point (3/2,1/3) is not interior to the domain") != std::string::npos);
  const std::string open = R"({"domain": {"halfspaces": [{"normal": [1, 0], "offset": "0"}]}})";
  CHECK(message(open).find("line 1, column 12: domain:") == 0);
}

TEST_CASE("monomial labels") {
  CHECK(monomial_label(M({2, 0}, R(0))) == "2x");
  CHECK(monomial_label(M({1, 0}, R(2, 15))) == "x+2/15");
  CHECK(monomial_label(M({-1, 0}, R(1))) == "1-x");
  CHECK(monomial_label(M({0, 0}, R(1, 3))) == "1/3");
  CHECK(monomial_label(M({1, -2}, R(-1, 2))) == "x-2y-1/2");
  CHECK(monomial_label(M({-1, 0}, R(-1))) == "-x-1");
}

TEST_CASE("series and trace JSON") {
  auto s = parse_scene(kSquare);
  auto d = make_domain(s);
  auto res = wave_closure(initial_series(s, d), s.points);
  const Json sj = series_to_json(res.series);
  CHECK(sj["kind"] == "omega");
  CHECK(sj["terms"].size() == res.series.explicit_size());
  CHECK(sj["small_form"].size() == small_support(res.series).size());
  const Json tj = trace_to_json(res.trace);
  CHECK(tj["steps"].size() == res.trace.steps.size());
  CHECK(tj["status"] == "stabilized");
  CHECK(tj["steps"][0]["c"] == res.trace.steps[0].c.str());
}

TEST_CASE("SVG rendering") {
  auto sq = unit_square();
  const std::string empty = render_svg(TropicalSeries::zero(sq), {});
  CHECK(count(empty, "<line") == 0);
  CHECK(count(empty, "<text") == 0);
  CHECK(count(empty, "stroke-dasharray") == 1);
  CHECK(empty.find("viewBox=\"0 0 1024 1024\"") != std::string::npos);

  // One solid line per exact segment of the locus.
  auto f = square_example(sq);
  const auto cx = extract_geometry(f);
  const std::string svg = render_svg(f, {P(R(1, 5), R(1, 2))});
  CHECK(count(svg, "<line") == cx.segments.size());
  CHECK(count(svg, "<circle") == 1);
  CHECK(count(svg, "<text") == 5);
  CHECK(svg == render_svg(f, {P(R(1, 5), R(1, 2))}));
  // The diagonal from (1/3,1/3) to (0,0) lands at the mapped corners.
  const bool corner = svg.find("x1=\"32.000\" y1=\"992.000\"") != std::string::npos ||
                      svg.find("x2=\"32.000\" y2=\"992.000\"") != std::string::npos;
  CHECK(corner);
  SvgStyle bare;
  bare.labels = false;
  CHECK(count(render_svg(f, {}, bare), "<text") == 0);
}

TEST_CASE("OBJ rendering of the cube") {
  auto cube = box(3, 1);
  auto g = wave_single(TropicalSeries::zero(cube), P3(R(1, 2), R(1, 2), R(1, 2))).series;
  const auto cx = extract_geometry(g);
  const std::string obj = render_obj(cx);
  CHECK(count(obj, "\nf ") == 12);
  // Centre, 8 corners and nothing else.
  CHECK(count(obj, "\nv ") == 9);
  CHECK(obj.find("v 0.5 0.5 0.5") != std::string::npos);
  CHECK(obj == render_obj(cx));
  CHECK_THROWS(render_obj(extract_geometry(square_example(unit_square()))));
}

TEST_CASE("perturb report JSON") {
  auto sq = unit_square();
  auto r = perturb_pipeline(sq, {P(R(1, 2), R(1, 2))}, PerturbConfig{});
  const Json j = report_to_json(r);
  CHECK(j["pass"] == true);
  CHECK(j["eps"] == "1/4");
  CHECK(j["steps"].size() == r.steps.size());
  CHECK(j["q"]["vertices"].size() == r.q->geometry().vertices.size());
}

TEST_CASE("selftest fixtures pass") {
  for (const auto& c : run_selftest()) {
    INFO(c.name << ": " << c.detail);
    CHECK(c.pass);
  }
}
