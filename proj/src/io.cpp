#include "tropwave/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <variant>

namespace tropwave {

SceneError::SceneError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(line ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message
                              : message),
      message_(message),
      line_(line),
      column_(column) {}

namespace {

using PathElem = std::variant<std::string, std::size_t>;
using Path = std::vector<PathElem>;

Path operator/(Path p, PathElem e) {
  p.push_back(std::move(e));
  return p;
}

// Locating a value in already-validated JSON text, for error positions.
std::size_t skip_ws(const std::string& t, std::size_t i) {
  while (i < t.size() && (t[i] == ' ' || t[i] == '\t' || t[i] == '\n' || t[i] == '\r')) ++i;
  return i;
}

std::size_t skip_string(const std::string& t, std::size_t i) {
  for (++i; i < t.size() && t[i] != '"'; ++i) {
    if (t[i] == '\\') ++i;
  }
  return i + 1;
}

std::size_t skip_value(const std::string& t, std::size_t i) {
  i = skip_ws(t, i);
  if (i >= t.size()) return i;
  if (t[i] == '"') return skip_string(t, i);
  if (t[i] == '{' || t[i] == '[') {
    int depth = 0;
    for (; i < t.size(); ++i) {
      if (t[i] == '"') {
        i = skip_string(t, i) - 1;
      } else if (t[i] == '{' || t[i] == '[') {
        ++depth;
      } else if (t[i] == '}' || t[i] == ']') {
        if (--depth == 0) return i + 1;
      }
    }
    return i;
  }
  while (i < t.size() && t[i] != ',' && t[i] != '}' && t[i] != ']' && t[i] != ' ' && t[i] != '\n') ++i;
  return i;
}

// Offset of the value at `path`, or of the deepest container found.
std::size_t locate(const std::string& t, const Path& path) {
  std::size_t i = skip_ws(t, 0);
  for (const auto& e : path) {
    const std::size_t container = i;
    if (i >= t.size()) return container;
    bool found = false;
    if (const auto* key = std::get_if<std::string>(&e)) {
      if (t[i] != '{') return container;
      i = skip_ws(t, i + 1);
      while (i < t.size() && t[i] == '"') {
        const std::size_t end = skip_string(t, i);
        const std::string k = t.substr(i + 1, end - i - 2);
        i = skip_ws(t, end);
        i = skip_ws(t, i + 1);  // ':'
        if (k == *key) {
          found = true;
          break;
        }
        i = skip_ws(t, skip_value(t, i));
        if (i < t.size() && t[i] == ',') i = skip_ws(t, i + 1);
      }
    } else {
      if (t[i] != '[') return container;
      i = skip_ws(t, i + 1);
      for (std::size_t k = 0; i < t.size() && t[i] != ']'; ++k) {
        if (k == std::get<std::size_t>(e)) {
          found = true;
          break;
        }
        i = skip_ws(t, skip_value(t, i));
        if (i < t.size() && t[i] == ',') i = skip_ws(t, i + 1);
      }
    }
    if (!found) return container;
  }
  return i;
}

std::pair<std::size_t, std::size_t> line_column(const std::string& t, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < t.size(); ++i) {
    if (t[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::string path_str(const Path& p) {
  std::string s;
  for (const auto& e : p) {
    if (const auto* k = std::get_if<std::string>(&e)) {
      s += (s.empty() ? "" : ".") + *k;
    } else {
      s += "[" + std::to_string(std::get<std::size_t>(e)) + "]";
    }
  }
  return s.empty() ? "<root>" : s;
}

class Reader {
 public:
  explicit Reader(const std::string& text) : text_(text) {}

  [[noreturn]] void fail(const Path& p, const std::string& msg) const {
    const auto [line, col] = line_column(text_, locate(text_, p));
    throw SceneError(path_str(p) + ": " + msg, line, col);
  }

  const Json& require(const Json& obj, const std::string& key, const Path& p) const {
    if (!obj.contains(key)) fail(p, "missing field \"" + key + "\"");
    return obj.at(key);
  }

  void object(const Json& j, const Path& p, std::initializer_list<const char*> allowed) const {
    if (!j.is_object()) fail(p, "expected an object");
    for (const auto& [k, v] : j.items()) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || k == a;
      if (!ok) fail(p / k, "unknown field \"" + k + "\"");
    }
  }

  const Json& array(const Json& j, const Path& p) const {
    if (!j.is_array()) fail(p, "expected an array");
    return j;
  }

  Rational rational(const Json& j, const Path& p) const {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) {
      try {
        return parse_rational(j.get<std::string>());
      } catch (const std::exception& e) {
        fail(p, "bad rational \"" + j.get<std::string>() + "\"");
      }
    }
    if (j.is_number_float()) fail(p, "floating-point values are not exact; write the number as a \"p/q\" string");
    fail(p, "expected a rational as a \"p/q\" string");
  }

  long long integer(const Json& j, const Path& p) const {
    if (!j.is_number_integer()) fail(p, "expected an integer");
    return j.get<long long>();
  }

  std::uint64_t unsigned_integer(const Json& j, const Path& p) const {
    if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<long long>() < 0)) {
      fail(p, "expected a non-negative integer");
    }
    return j.get<std::uint64_t>();
  }

  double real(const Json& j, const Path& p) const {
    if (j.is_number()) return j.get<double>();
    return to_double(rational(j, p));
  }

  std::string string(const Json& j, const Path& p) const {
    if (!j.is_string()) fail(p, "expected a string");
    return j.get<std::string>();
  }

  LatticeVector lattice(const Json& j, const Path& p, std::optional<std::size_t> dim) const {
    array(j, p);
    if (dim && j.size() != *dim) fail(p, "expected " + std::to_string(*dim) + " coordinates");
    LatticeVector q(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) q[i] = integer(j[i], p / i);
    return q;
  }

  Point point(const Json& j, const Path& p, std::size_t dim) const {
    array(j, p);
    if (j.size() != dim) fail(p, "expected " + std::to_string(dim) + " coordinates");
    Point z;
    for (std::size_t i = 0; i < dim; ++i) z.push_back(Scalar(rational(j[i], p / i)));
    return z;
  }

 private:
  const std::string& text_;
};

std::string lattice_text(const LatticeVector& q) {
  std::string s = "[";
  for (std::size_t i = 0; i < q.dim(); ++i) s += (i ? "," : "") + std::to_string(q[i]);
  return s + "]";
}

Json lattice_json(const LatticeVector& q) {
  Json a = Json::array();
  for (std::size_t i = 0; i < q.dim(); ++i) a.push_back(q[i]);
  return a;
}

Json point_json(const Point& z) {
  Json a = Json::array();
  for (const auto& x : z) a.push_back(x.str());
  return a;
}

DomainPtr build_domain(const DomainSpec& d) {
  if (d.kind == OmegaDomain::Kind::ball) return OmegaDomain::ball(d.center, d.radius, d.name);
  return OmegaDomain::polytope(d.halfspaces, d.dim, d.name);
}

}  // namespace

SceneConfig parse_scene(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string what = e.what();
    // Drop the library prefix "[json.exception.parse_error.101] parse error at line L, column C: ".
    if (auto k = what.find(": "); k != std::string::npos) what = what.substr(k + 2);
    throw SceneError("syntax error: " + what, line, col);
  }
  Reader r(text);
  const Path root_path;
  r.object(root, root_path,
           {"name", "domain", "initial", "points", "schedule", "step_cap", "mode", "perturb", "experiment", "output"});
  SceneConfig s;
  if (root.contains("name")) s.name = r.string(root["name"], {"name"});

  // Domain.
  const Path dp{"domain"};
  const Json& dj = r.require(root, "domain", root_path);
  r.object(dj, dp, {"kind", "dim", "halfspaces", "center", "radius", "name"});
  const std::string kind = dj.contains("kind") ? r.string(dj["kind"], dp / "kind") : "polytope";
  if (dj.contains("name")) s.domain.name = r.string(dj["name"], dp / "name");
  if (kind == "polytope") {
    s.domain.kind = OmegaDomain::Kind::polytope;
    const Json& hs = r.array(r.require(dj, "halfspaces", dp), dp / "halfspaces");
    if (hs.empty()) r.fail(dp / "halfspaces", "a polytope needs halfspaces");
    std::optional<std::size_t> dim;
    if (dj.contains("dim")) dim = static_cast<std::size_t>(r.integer(dj["dim"], dp / "dim"));
    for (std::size_t i = 0; i < hs.size(); ++i) {
      const Path hp = dp / "halfspaces" / i;
      r.object(hs[i], hp, {"normal", "offset"});
      const LatticeVector nrm = r.lattice(r.require(hs[i], "normal", hp), hp / "normal", dim);
      if (!dim) dim = nrm.dim();
      const Rational off = r.rational(r.require(hs[i], "offset", hp), hp / "offset");
      if (nrm.is_zero()) r.fail(hp / "normal", "normal must be non-zero");
      const std::int64_t g = nrm.content();
      if (g != 1) {
        r.fail(hp / "normal", "normal " + lattice_text(nrm) + " is not primitive; divide by " + std::to_string(g) +
                                  ": use normal " + lattice_text(nrm.primitive()) + " with offset \"" +
                                  to_string(off / g) + "\"");
      }
      s.domain.halfspaces.push_back(HalfSpace{nrm, Scalar(off)});
    }
    s.domain.dim = *dim;
    if (s.domain.dim < 1 || s.domain.dim > 3) r.fail(dp / "dim", "dimension must be 1, 2 or 3");
  } else if (kind == "ball") {
    s.domain.kind = OmegaDomain::Kind::ball;
    const Json& cj = r.array(r.require(dj, "center", dp), dp / "center");
    s.domain.dim = cj.size();
    if (dj.contains("dim") && static_cast<std::size_t>(r.integer(dj["dim"], dp / "dim")) != s.domain.dim) {
      r.fail(dp / "dim", "dim disagrees with the center");
    }
    s.domain.center = r.point(cj, dp / "center", s.domain.dim);
    s.domain.radius = Scalar(r.rational(r.require(dj, "radius", dp), dp / "radius"));
    if (s.domain.radius.sign() <= 0) r.fail(dp / "radius", "radius must be positive");
  } else {
    r.fail(dp / "kind", "unknown domain kind \"" + kind + "\" (expected \"polytope\" or \"ball\")");
  }
  DomainPtr domain;
  try {
    domain = build_domain(s.domain);
  } catch (const std::exception& e) {
    r.fail(dp, e.what());
  }

  // Mode: balls are approximate, polytopes exact.
  s.mode = domain->mode();
  if (root.contains("mode")) {
    const std::string m = r.string(root["mode"], {"mode"});
    if (m != "exact" && m != "approximate") r.fail({"mode"}, "mode must be \"exact\" or \"approximate\"");
    const NumericMode want = m == "exact" ? NumericMode::exact : NumericMode::approximate;
    if (want != domain->mode()) {
      r.fail({"mode"}, std::string(domain->kind() == OmegaDomain::Kind::ball ? "ball domains are approximate"
                                                                             : "polytope domains are exact"));
    }
  }

  if (root.contains("initial")) {
    const Path ip{"initial"};
    const Json& ij = root["initial"];
    r.object(ij, ip, {"kind", "terms"});
    InitialSeriesSpec spec;
    const std::string k = ij.contains("kind") ? r.string(ij["kind"], ip / "kind") : "omega";
    if (k == "polynomial") {
      spec.kind = SeriesKind::polynomial;
    } else if (k != "omega") {
      r.fail(ip / "kind", "unknown series kind \"" + k + "\" (expected \"omega\" or \"polynomial\")");
    }
    const Json& tj = r.array(r.require(ij, "terms", ip), ip / "terms");
    std::set<LatticeVector> seen;
    for (std::size_t i = 0; i < tj.size(); ++i) {
      const Path tp = ip / "terms" / i;
      r.object(tj[i], tp, {"q", "a"});
      Monomial m{r.lattice(r.require(tj[i], "q", tp), tp / "q", s.domain.dim),
                 Scalar(r.rational(r.require(tj[i], "a", tp), tp / "a"))};
      if (!seen.insert(m.q).second) r.fail(tp / "q", "duplicate exponent " + lattice_text(m.q));
      spec.terms.push_back(std::move(m));
    }
    s.initial = std::move(spec);
    try {
      initial_series(s, domain);
    } catch (const std::exception& e) {
      r.fail(ip, e.what());
    }
  }

  if (root.contains("points")) {
    const Json& pj = r.array(root["points"], {"points"});
    for (std::size_t i = 0; i < pj.size(); ++i) {
      const Path pp = Path{"points"} / i;
      Point z = r.point(pj[i], pp, s.domain.dim);
      if (!domain->interior(domain->adapt(z))) r.fail(pp, "point " + point_str(z) + " is not interior to the domain");
      s.points.push_back(std::move(z));
    }
  }

  if (root.contains("schedule")) {
    const Path sp{"schedule"};
    const Json& sj = root["schedule"];
    r.object(sj, sp, {"kind", "seed"});
    const std::string k = sj.contains("kind") ? r.string(sj["kind"], sp / "kind") : "round_robin";
    if (k == "round_robin") {
      if (sj.contains("seed")) r.fail(sp / "seed", "round_robin takes no seed");
      s.schedule = Schedule::round_robin();
    } else if (k == "seeded_random") {
      s.schedule = Schedule::seeded_random(sj.contains("seed") ? r.unsigned_integer(sj["seed"], sp / "seed") : 0);
    } else {
      r.fail(sp / "kind", "unknown schedule \"" + k + "\" (expected \"round_robin\" or \"seeded_random\")");
    }
  }
  if (root.contains("step_cap")) s.step_cap = r.unsigned_integer(root["step_cap"], {"step_cap"});

  if (root.contains("perturb")) {
    const Path pp{"perturb"};
    const Json& pj = root["perturb"];
    r.object(pj, pp,
             {"eps", "eps_level", "eps_cap", "delta", "seed", "retry_limit", "flow_samples", "probe_grid", "pass_cap"});
    auto& c = s.perturb;
    auto opt = [&](const char* key, std::optional<Scalar>& out) {
      if (pj.contains(key)) out = Scalar(r.rational(pj[key], pp / key));
    };
    if (pj.contains("eps")) c.eps = Scalar(r.rational(pj["eps"], pp / "eps"));
    if (c.eps.sign() <= 0) r.fail(pp / "eps", "eps must be positive");
    opt("eps_level", c.eps_level);
    opt("eps_cap", c.eps_cap);
    opt("delta", c.delta);
    if (pj.contains("seed")) c.seed = r.unsigned_integer(pj["seed"], pp / "seed");
    if (pj.contains("retry_limit")) c.retry_limit = static_cast<int>(r.unsigned_integer(pj["retry_limit"], pp / "retry_limit"));
    if (pj.contains("flow_samples")) {
      c.flow_samples = static_cast<int>(r.unsigned_integer(pj["flow_samples"], pp / "flow_samples"));
      if (c.flow_samples < 1) r.fail(pp / "flow_samples", "flow_samples must be at least 1");
    }
    if (pj.contains("probe_grid")) c.probe_grid = r.unsigned_integer(pj["probe_grid"], pp / "probe_grid");
    if (pj.contains("pass_cap")) c.pass_cap = r.unsigned_integer(pj["pass_cap"], pp / "pass_cap");
  }

  if (root.contains("experiment")) {
    const Path ep{"experiment"};
    const Json& ej = root["experiment"];
    r.object(ej, ep, {"samples", "seed", "x_min"});
    if (ej.contains("samples")) {
      s.experiment.samples = r.unsigned_integer(ej["samples"], ep / "samples");
      if (s.experiment.samples == 0) r.fail(ep / "samples", "samples must be at least 1");
    }
    if (ej.contains("seed")) s.experiment.seed = r.unsigned_integer(ej["seed"], ep / "seed");
    if (ej.contains("x_min") && !ej["x_min"].is_null()) {
      s.experiment.x_min = r.real(ej["x_min"], ep / "x_min");
      if (!(*s.experiment.x_min > 0)) r.fail(ep / "x_min", "x_min must be positive");
    }
  }

  if (root.contains("output")) {
    const Path op{"output"};
    r.object(root["output"], op, {"dir"});
    if (root["output"].contains("dir")) s.output_dir = r.string(root["output"]["dir"], op / "dir");
  }
  return s;
}

SceneConfig load_scene(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SceneError("cannot open scene file " + path, 0, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scene(ss.str());
}

Json scene_to_json(const SceneConfig& s) {
  Json j;
  j["name"] = s.name;
  Json d;
  if (s.domain.kind == OmegaDomain::Kind::ball) {
    d["kind"] = "ball";
    d["dim"] = s.domain.dim;
    d["center"] = point_json(s.domain.center);
    d["radius"] = s.domain.radius.str();
  } else {
    d["kind"] = "polytope";
    d["dim"] = s.domain.dim;
    Json hs = Json::array();
    for (const auto& h : s.domain.halfspaces) hs.push_back({{"normal", lattice_json(h.normal)}, {"offset", h.offset.str()}});
    d["halfspaces"] = hs;
  }
  if (!s.domain.name.empty()) d["name"] = s.domain.name;
  j["domain"] = d;
  if (s.initial) {
    j["initial"] = {{"kind", s.initial->kind == SeriesKind::omega ? "omega" : "polynomial"},
                    {"terms", monomials_to_json(s.initial->terms)}};
  }
  Json pts = Json::array();
  for (const auto& p : s.points) pts.push_back(point_json(p));
  j["points"] = pts;
  if (s.schedule.kind == Schedule::Kind::round_robin) {
    j["schedule"] = {{"kind", "round_robin"}};
  } else {
    j["schedule"] = {{"kind", "seeded_random"}, {"seed", s.schedule.seed}};
  }
  j["step_cap"] = s.step_cap;
  j["mode"] = s.mode == NumericMode::exact ? "exact" : "approximate";
  const auto& c = s.perturb;
  Json pj;
  pj["eps"] = c.eps.str();
  if (c.eps_level) pj["eps_level"] = c.eps_level->str();
  if (c.eps_cap) pj["eps_cap"] = c.eps_cap->str();
  if (c.delta) pj["delta"] = c.delta->str();
  pj["seed"] = c.seed;
  pj["retry_limit"] = c.retry_limit;
  pj["flow_samples"] = c.flow_samples;
  pj["probe_grid"] = c.probe_grid;
  pj["pass_cap"] = c.pass_cap;
  j["perturb"] = pj;
  Json ej;
  ej["samples"] = s.experiment.samples;
  ej["seed"] = s.experiment.seed;
  ej["x_min"] = s.experiment.x_min ? Json(*s.experiment.x_min) : Json(nullptr);
  j["experiment"] = ej;
  j["output"] = {{"dir", s.output_dir}};
  return j;
}

std::string serialize_scene(const SceneConfig& s) { return scene_to_json(s).dump(2) + "\n"; }

DomainPtr make_domain(const SceneConfig& s) { return build_domain(s.domain); }

TropicalSeries initial_series(const SceneConfig& s, const DomainPtr& domain) {
  if (!s.initial) return TropicalSeries::zero(domain);
  std::vector<Monomial> terms = s.initial->terms;
  if (domain->mode() == NumericMode::approximate) {
    for (auto& m : terms) m.a = Scalar::approximate(m.a.to_double());
  }
  return s.initial->kind == SeriesKind::omega ? TropicalSeries::omega(domain, terms)
                                              : TropicalSeries::polynomial(domain, terms);
}

Json monomials_to_json(const std::vector<Monomial>& terms) {
  Json a = Json::array();
  for (const auto& m : terms) a.push_back({{"q", lattice_json(m.q)}, {"a", m.a.str()}});
  return a;
}

Json series_to_json(const TropicalSeries& f, bool with_small_form) {
  Json j;
  j["kind"] = f.kind() == SeriesKind::omega ? "omega" : "polynomial";
  j["dim"] = f.dim();
  j["mode"] = f.mode() == NumericMode::exact ? "exact" : "approximate";
  j["terms"] = monomials_to_json(f.monomials());
  if (with_small_form && f.domain().kind() == OmegaDomain::Kind::polytope) {
    Json small = Json::array();
    for (const auto& m : small_support(f)) small.push_back({{"q", lattice_json(m.q)}, {"a", m.a.str()}, {"label", monomial_label(m)}});
    j["small_form"] = small;
  }
  return j;
}

Json trace_to_json(const FlowTrace& t) {
  Json j;
  j["schedule"] = t.schedule.str();
  j["status"] = t.status == StopReason::stabilized ? "stabilized" : "tolerance";
  j["total_steps"] = t.total_steps;
  j["passes"] = t.passes;
  Json steps = Json::array();
  for (const auto& s : t.steps) {
    steps.push_back({{"point", s.point_index},
                     {"q", lattice_json(s.q)},
                     {"c", s.c.str()},
                     {"value_before", s.value_before.str()},
                     {"value_after", s.value_after.str()},
                     {"order", s.order}});
  }
  j["steps"] = steps;
  return j;
}

Json report_to_json(const PerturbReport& r) {
  Json j;
  j["pass"] = r.pass;
  j["failure"] = r.failure;
  j["eps"] = r.eps.str();
  j["eps_level"] = r.eps_level.str();
  j["eps_cap"] = r.eps_cap.str();
  j["delta"] = r.delta.str();
  j["attempts"] = r.attempts;
  if (r.q) {
    Json hs = Json::array();
    for (const auto& h : r.q->geometry().nonredundant_halfspaces()) {
      hs.push_back({{"normal", lattice_json(h.normal)}, {"offset", h.offset.str()}});
    }
    j["q"] = {{"halfspaces", hs}};
    Json vs = Json::array();
    for (const auto& v : r.q->geometry().vertices) vs.push_back(point_json(v));
    j["q"]["vertices"] = vs;
  }
  if (r.g) j["g"] = series_to_json(*r.g, false);
  if (r.result) j["result"] = series_to_json(*r.result, false);
  Json steps = Json::array();
  for (const auto& s : r.steps) {
    steps.push_back({{"point", s.point_index},
                     {"q", lattice_json(s.q)},
                     {"c_full", s.c_full.str()},
                     {"c_applied", s.c_applied.str()},
                     {"from_trace", s.from_trace},
                     {"samples", s.samples},
                     {"mild", s.mild}});
  }
  j["steps"] = steps;
  Json offences = Json::array();
  for (const auto& o : r.offences) {
    Json e{{"step", o.step}, {"t", o.t.str()}, {"mild", o.mild}};
    if (o.offence) {
      Json cell = Json::array();
      for (const auto& q : o.offence->exponents) cell.push_back(lattice_json(q));
      e["cell"] = cell;
      if (o.offence->offending) e["offending"] = lattice_json(*o.offence->offending);
    }
    offences.push_back(e);
  }
  j["offences"] = offences;
  j["certificates_checked"] = r.certificates_checked;
  j["extra_passes"] = r.extra_passes;
  j["distance_q"] = r.distance_q.str();
  j["worst_q"] = point_json(r.worst_q);
  j["distance_omega"] = r.distance_omega.str();
  j["worst_omega"] = point_json(r.worst_omega);
  j["probes"] = r.probes;
  return j;
}

Json fit_to_json(const PowerLawFit& f) {
  Json j;
  j["method"] = fit_method_name(f.method);
  j["x_min"] = f.x_min;
  j["alpha"] = f.alpha;
  j["tail_count"] = f.tail_count;
  j["ks"] = f.ks;
  j["alpha_regression"] = f.alpha_regression ? Json(*f.alpha_regression) : Json(nullptr);
  return j;
}

std::string monomial_label(const Monomial& m) {
  static const char* names[] = {"x", "y", "z"};
  std::string lin;
  for (std::size_t i = 0; i < m.q.dim(); ++i) {
    const std::int64_t c = m.q[i];
    if (c == 0) continue;
    std::string term = (c < 0 ? "-" : (lin.empty() ? "" : "+"));
    if (std::abs(c) != 1) term += std::to_string(std::abs(c));
    lin += term + (m.q.dim() <= 3 ? names[i] : "z" + std::to_string(i + 1));
  }
  const std::string a = m.a.str();
  const int sa = m.a.sign();
  if (lin.empty()) return a;
  if (sa == 0) return lin;
  if (lin[0] == '-') return sa > 0 ? a + lin : lin + a;
  return sa > 0 ? lin + "+" + a : lin + a;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') {
      out += "&lt;";
    } else if (c == '>') {
      out += "&gt;";
    } else if (c == '&') {
      out += "&amp;";
    } else {
      out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const TropicalSeries& f, const std::vector<Point>& points, const SvgStyle& style) {
  const auto& d = f.domain();
  if (d.dim() != 2) throw std::invalid_argument("render_svg needs a planar domain");
  // Boundary outline in world coordinates.
  std::vector<std::array<double, 2>> outline;
  if (d.kind() == OmegaDomain::Kind::polytope) {
    for (const auto& v : d.geometry().vertices) outline.push_back({v[0].to_double(), v[1].to_double()});
  } else if (d.kind() == OmegaDomain::Kind::ball) {
    const double cx = d.center()[0].to_double(), cy = d.center()[1].to_double(), r = d.radius().to_double();
    for (int k = 0; k < 128; ++k) {
      const double t = 2 * M_PI * k / 128;
      outline.push_back({cx + r * std::cos(t), cy + r * std::sin(t)});
    }
  } else {
    throw std::invalid_argument("render_svg needs a polytope or ball domain");
  }
  double x0 = outline[0][0], x1 = x0, y0 = outline[0][1], y1 = y0;
  for (const auto& p : outline) {
    x0 = std::min(x0, p[0]);
    x1 = std::max(x1, p[0]);
    y0 = std::min(y0, p[1]);
    y1 = std::max(y1, p[1]);
  }
  const double size = style.size, margin = 32;
  const double scale = (size - 2 * margin) / std::max(x1 - x0, y1 - y0);
  auto X = [&](double x) { return margin + (x - x0) * scale; };
  auto Y = [&](double y) { return size - margin - (y - y0) * scale; };

  std::ostringstream os;
  const std::string sz = std::to_string(style.size);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 " << sz << ' ' << sz
     << "\" width=\"" << sz << "\" height=\"" << sz << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  os << "<polygon class=\"boundary\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\" stroke-dasharray=\"10 6\" points=\"";
  for (std::size_t i = 0; i < outline.size(); ++i) os << (i ? " " : "") << fmt(X(outline[i][0])) << ',' << fmt(Y(outline[i][1]));
  os << "\"/>\n";

  if (d.kind() == OmegaDomain::Kind::polytope) {
    const CornerComplex cx = extract_geometry(f);
    os << "<g class=\"locus\" stroke=\"#1f4e9c\" stroke-width=\"3\" stroke-linecap=\"round\">\n";
    for (const auto& s : cx.segments) {
      os << "<line x1=\"" << fmt(X(s.a[0].to_double())) << "\" y1=\"" << fmt(Y(s.a[1].to_double())) << "\" x2=\""
         << fmt(X(s.b[0].to_double())) << "\" y2=\"" << fmt(Y(s.b[1].to_double())) << "\"/>\n";
    }
    os << "</g>\n";
    if (style.labels) {
      const auto rs = f.regions();
      if (rs->regions.size() > 1) {
        os << "<g class=\"labels\" font-family=\"sans-serif\" font-size=\"20\" text-anchor=\"middle\" fill=\"#333333\">\n";
        for (const auto& reg : rs->regions) {
          double cxw = 0, cyw = 0;
          for (const auto& v : reg.geometry.vertices) {
            cxw += v[0].to_double();
            cyw += v[1].to_double();
          }
          cxw /= static_cast<double>(reg.geometry.vertices.size());
          cyw /= static_cast<double>(reg.geometry.vertices.size());
          os << "<text x=\"" << fmt(X(cxw)) << "\" y=\"" << fmt(Y(cyw) + 7) << "\">"
             << xml_escape(monomial_label(reg.monomial)) << "</text>\n";
        }
        os << "</g>\n";
      }
    }
  }
  os << "<g class=\"points\" fill=\"#c0392b\">\n";
  for (const auto& p : points) {
    os << "<circle cx=\"" << fmt(X(p[0].to_double())) << "\" cy=\"" << fmt(Y(p[1].to_double())) << "\" r=\"7\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

std::string render_obj(const CornerComplex& cx) {
  if (cx.dim != 3) throw std::invalid_argument("render_obj needs a corner locus in three dimensions");
  std::ostringstream os;
  os << "o corner_locus\n";
  std::map<std::vector<Rational>, std::size_t> index;
  std::vector<std::vector<std::size_t>> faces;
  std::vector<const Point*> order;
  for (const auto& poly : cx.polygons) {
    std::vector<std::size_t> face;
    for (const auto& v : poly.vertices) {
      std::vector<Rational> key;
      for (const auto& c : v) key.push_back(c.rational());
      auto [it, fresh] = index.emplace(key, order.size() + 1);
      if (fresh) order.push_back(&v);
      face.push_back(it->second);
    }
    faces.push_back(std::move(face));
  }
  char buf[128];
  for (const Point* v : order) {
    std::snprintf(buf, sizeof buf, "v %.12g %.12g %.12g\n", (*v)[0].to_double(), (*v)[1].to_double(),
                  (*v)[2].to_double());
    os << buf;
  }
  for (const auto& f : faces) {
    os << 'f';
    for (auto i : f) os << ' ' << i;
    os << '\n';
  }
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace tropwave
