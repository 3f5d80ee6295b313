// tropwave: command-line front end.
//
// Exit codes: 0 pass, 1 fail, 2 usage or scene error, 3 resource cap.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tropwave/io.hpp"
#include "tropwave/selftest.hpp"

using namespace tropwave;
namespace fs = std::filesystem;

namespace {

constexpr int kPass = 0, kFail = 1, kUsage = 2, kResource = 3;

struct Common {
  std::string scene;
  std::string out;
};

std::string out_dir(const Common& c, const SceneConfig& s) {
  const std::string dir = c.out.empty() ? s.output_dir : c.out;
  fs::create_directories(dir);
  return dir;
}

std::string join(const std::string& dir, const std::string& file) { return (fs::path(dir) / file).string(); }

int cmd_run(const Common& c) {
  const SceneConfig s = load_scene(c.scene);
  auto d = make_domain(s);
  const std::string dir = out_dir(c, s);
  try {
    auto res = wave_closure(initial_series(s, d), s.points, s.schedule, 1e-9, s.step_cap);
    write_text_file(join(dir, "series.json"), series_to_json(res.series).dump(2) + "\n");
    write_text_file(join(dir, "trace.json"), trace_to_json(res.trace).dump(2) + "\n");
    std::cout << "run: " << res.trace.steps.size() << " non-zero steps in " << res.trace.passes << " passes, "
              << res.series.explicit_size() << " explicit terms -> " << dir << "\n";
  } catch (const StepCapExceeded& e) {
    write_text_file(join(dir, "trace.json"), trace_to_json(e.trace).dump(2) + "\n");
    throw;
  }
  return kPass;
}

int cmd_perturb(const Common& c) {
  const SceneConfig s = load_scene(c.scene);
  auto d = make_domain(s);
  const std::string dir = out_dir(c, s);
  const PerturbReport r = perturb_pipeline(d, s.points, s.perturb);
  write_text_file(join(dir, "perturb.json"), report_to_json(r).dump(2) + "\n");
  std::cout << "perturb: " << (r.pass ? "PASS" : "FAIL") << ", " << r.steps.size() << " steps, "
            << r.certificates_checked << " certificates, distance " << r.distance_q << " on Q / "
            << r.distance_omega << " on the domain (eps " << r.eps << ")\n";
  if (!r.pass) std::cout << "  " << r.failure << "\n";
  return r.pass ? kPass : kFail;
}

int cmd_avalanche(const Common& c, std::optional<std::size_t> samples, std::optional<std::uint64_t> seed) {
  const SceneConfig s = load_scene(c.scene);
  auto d = make_domain(s);
  const std::string dir = out_dir(c, s);
  const auto n = samples.value_or(s.experiment.samples);
  const auto sd = seed.value_or(s.experiment.seed);
  const auto stream = avalanche_experiment(d, n, sd);
  std::ostringstream csv;
  write_avalanche_csv(csv, stream, d->dim());
  write_text_file(join(dir, "avalanche.csv"), csv.str());
  std::vector<double> sizes;
  for (const auto& a : stream) sizes.push_back(a.measure.to_double());
  Json j{{"samples", n}, {"seed", sd}};
  int code = kPass;
  try {
    const auto fit = fit_power_law(sizes, s.experiment.x_min ? XMinPolicy::at(*s.experiment.x_min) : XMinPolicy::scan());
    j["fit"] = fit_to_json(fit);
    std::cout << "avalanche: " << n << " samples, alpha " << fit.alpha << " above x_min " << fit.x_min << " ("
              << fit.tail_count << " samples, KS " << fit.ks << ")\n";
  } catch (const std::invalid_argument& e) {
    j["fit"] = nullptr;
    j["error"] = e.what();
    std::cout << "avalanche: " << n << " samples, no fit: " << e.what() << "\n";
    code = kFail;
  }
  write_text_file(join(dir, "fit.json"), j.dump(2) + "\n");
  return code;
}

int cmd_render(const Common& c, bool frames, bool labels) {
  const SceneConfig s = load_scene(c.scene);
  auto d = make_domain(s);
  const std::string dir = out_dir(c, s);
  const TropicalSeries f0 = initial_series(s, d);
  auto res = wave_closure(f0, s.points, s.schedule, 1e-9, s.step_cap);
  SvgStyle style;
  style.labels = labels;
  if (d->dim() == 2) {
    write_text_file(join(dir, "series.svg"), render_svg(res.series, s.points, style));
    if (frames) {
      TropicalSeries f = f0;
      char name[32];
      std::snprintf(name, sizeof name, "frame_%04d.svg", 0);
      write_text_file(join(dir, name), render_svg(f, s.points, style));
      int k = 0;
      for (const auto& st : res.trace.steps) {
        f.raise(st.q, st.c);
        std::snprintf(name, sizeof name, "frame_%04d.svg", ++k);
        write_text_file(join(dir, name), render_svg(f, s.points, style));
      }
    }
    std::cout << "render: " << join(dir, "series.svg") << "\n";
  } else if (d->dim() == 3) {
    write_text_file(join(dir, "series.obj"), render_obj(extract_geometry(res.series)));
    std::cout << "render: " << join(dir, "series.obj") << "\n";
  } else {
    throw std::invalid_argument("render needs a domain of dimension 2 or 3");
  }
  return kPass;
}

int cmd_selftest() {
  bool all = true;
  for (const auto& c : run_selftest()) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (!c.pass) std::cout << ": " << c.detail;
    std::cout << "\n";
    all = all && c.pass;
  }
  return all ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact wave dynamics of tropical series on convex domains"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("scene", common.scene, "Scene JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--out", common.out, "Output directory (overrides the scene)");
  };
  auto* run = app.add_subcommand("run", "Wave closure: series.json and trace.json");
  add_common(run);
  auto* perturb = app.add_subcommand("perturb", "Perturbed flow with mildness certificates: perturb.json");
  add_common(perturb);
  auto* aval = app.add_subcommand("avalanche", "Random waves from zero: avalanche.csv and fit.json");
  add_common(aval);
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  aval->add_option("-n,--samples", samples, "Sample count (overrides the scene)");
  aval->add_option("-s,--seed", seed, "Seed (overrides the scene)");
  auto* render = app.add_subcommand("render", "Corner locus of the closure: series.svg (2-D) or series.obj (3-D)");
  add_common(render);
  bool frames = false, no_labels = false;
  render->add_flag("--frames", frames, "Also write one SVG per wave step");
  render->add_flag("--no-labels", no_labels, "Omit face labels");
  auto* selftest = app.add_subcommand("selftest", "Check the worked examples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*run) return cmd_run(common);
    if (*perturb) return cmd_perturb(common);
    if (*aval) return cmd_avalanche(common, samples, seed);
    if (*render) return cmd_render(common, frames, !no_labels);
    if (*selftest) return cmd_selftest();
  } catch (const SceneError& e) {
    std::cerr << common.scene << ": " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const ModeMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
