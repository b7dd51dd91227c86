#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lvseasons/io.hpp"
#include "lvseasons/presets.hpp"

namespace fs = std::filesystem;
using namespace lvseasons;

namespace {

struct Options {
  std::string params_path;
  int example = 0;
  std::string x0_text;
  double horizon = -1.0;
  int samples = 1201;
  bool samples_set = false;
  int iterates = -1;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  std::string out_dir;
  std::string format = "csv";
};

std::uint64_t seed_from_env() {
  const char* env = std::getenv("LVSEASONS_SEED");
  if (!env || !*env) return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0')
    throw io::ConfigError("BadArguments",
                          "LVSEASONS_SEED must be an unsigned integer");
  return v;
}

SeasonalParams resolve_params(const Options& opt) {
  if (!opt.params_path.empty() && opt.example != 0)
    throw io::ConfigError("BadArguments",
                          "--params and --example are mutually exclusive");
  if (!opt.params_path.empty()) return io::params_from_file(opt.params_path);
  if (opt.example != 0) {
    if (opt.example < 1 || opt.example > 3)
      throw io::ConfigError("BadArguments", "--example must be 1, 2 or 3");
    return builtin_example(opt.example).params;
  }
  throw io::ConfigError("BadArguments", "need --params FILE or --example N");
}

Vec3 resolve_x0(const Options& opt) {
  if (opt.x0_text.empty()) {
    if (opt.example != 0) return builtin_example(opt.example).orbit_start;
    throw io::ConfigError("BadArguments", "--x0 is required with --params");
  }
  Vec3 x;
  std::string text = opt.x0_text;
  for (auto& ch : text)
    if (ch == ',') ch = ' ';
  std::istringstream is(text);
  for (int i = 0; i < 3; ++i)
    if (!(is >> x[i]))
      throw io::ConfigError("BadArguments",
                            "--x0 must be three comma-separated numbers");
  std::string rest;
  if (is >> rest)
    throw io::ConfigError("BadArguments",
                          "--x0 must be three comma-separated numbers");
  return x;
}

IntegratorConfig resolve_cfg(const Options& opt) {
  IntegratorConfig cfg;
  cfg.rel_tol = opt.rel_tol;
  cfg.abs_tol = opt.abs_tol;
  validate_config(cfg);
  return cfg;
}

void emit(const Options& opt, const std::string& filename,
          const std::string& content) {
  if (opt.out_dir.empty()) {
    std::cout << content;
    return;
  }
  fs::create_directories(opt.out_dir);
  io::write_file((fs::path(opt.out_dir) / filename).string(), content);
}

std::vector<Vec3> collect_fixed_points(const SeasonalParams& p,
                                       const IntegratorConfig& cfg,
                                       std::uint64_t seed) {
  std::vector<Vec3> pts;
  for (int i = 0; i < 3; ++i)
    if (auto fp = axial_fixed_point(p, i, cfg)) pts.push_back(fp->point);
  for (int k = 0; k < 3; ++k)
    for (const auto& fp : planar_fixed_points(p, k, cfg, seed))
      pts.push_back(fp.point);
  for (const auto& fp : interior_fixed_points(p, cfg, seed))
    pts.push_back(fp.point);
  return pts;
}

int run_classify(const Options& opt) {
  const auto params = resolve_params(opt);
  const auto cfg = resolve_cfg(opt);
  const auto verdict = classify_permanence(params, cfg, seed_from_env());
  const auto doc = io::verdict_to_json(verdict);
  if (opt.format == "text")
    std::cout << io::verdict_summary(verdict);
  else
    std::cout << doc.dump(2) << "\n";
  if (!opt.out_dir.empty()) {
    fs::create_directories(opt.out_dir);
    io::write_file((fs::path(opt.out_dir) / "verdict.json").string(),
                   doc.dump(2) + "\n");
  }
  const bool ok = verdict.verdict != PermanenceVerdict::Kind::Indeterminate;
  return ok ? 0 : 3;
}

int run_simulate(const Options& opt) {
  const auto params = resolve_params(opt);
  const auto cfg = resolve_cfg(opt);
  const Vec3 x0 = resolve_x0(opt);
  double horizon = opt.horizon;
  int samples = opt.samples;
  if (horizon < 0.0) {
    if (opt.example == 0)
      throw io::ConfigError("BadArguments", "--t is required with --params");
    horizon = builtin_example(opt.example).horizon;
    if (!opt.samples_set) samples = builtin_example(opt.example).samples;
  }
  const auto rows = sample_trajectory(params, x0, horizon, samples, cfg);
  if (opt.format == "csv") {
    emit(opt, "timeseries.csv", io::series_csv(rows));
  } else if (opt.format == "svg") {
    emit(opt, "timeseries.svg", io::svg_time_series(rows));
  } else if (opt.format == "json") {
    nlohmann::json doc;
    doc["t"] = nlohmann::json::array();
    doc["x"] = nlohmann::json::array();
    for (const auto& [t, x] : rows) {
      doc["t"].push_back(t);
      doc["x"].push_back(nlohmann::json::array({x[0], x[1], x[2]}));
    }
    emit(opt, "timeseries.json", doc.dump(2) + "\n");
  } else {
    throw io::ConfigError("BadArguments", "--format must be csv, json or svg");
  }
  return 0;
}

int run_orbit(const Options& opt) {
  const auto params = resolve_params(opt);
  const auto cfg = resolve_cfg(opt);
  const Vec3 x0 = resolve_x0(opt);
  int n = opt.iterates;
  if (n < 0)
    n = opt.example != 0 ? builtin_example(opt.example).orbit_length : 2000;
  const auto orbit = iterate_orbit(params, x0, n, cfg);

  if (opt.format == "csv") {
    emit(opt, "orbit.csv", io::orbit_csv(orbit.points));
  } else if (opt.format == "svg") {
    emit(opt, "orbit.svg", io::svg_orbit(orbit.points));
  } else if (opt.format == "json") {
    const auto seed = seed_from_env();
    const auto fps = collect_fixed_points(params, cfg, seed);
    const auto report = attractor_detect(
        orbit, fps, [&](const Vec3& x) { return poincare_map(params, x, cfg); });
    nlohmann::json doc = io::attractor_to_json(report);
    doc["iterates"] = n;
    emit(opt, "attractor.json", doc.dump(2) + "\n");
  } else {
    throw io::ConfigError("BadArguments", "--format must be csv, json or svg");
  }
  return 0;
}

int run_fixed_points(const Options& opt) {
  const auto params = resolve_params(opt);
  const auto cfg = resolve_cfg(opt);
  const auto seed = seed_from_env();
  nlohmann::json list = nlohmann::json::array();
  for (int i = 0; i < 3; ++i)
    if (auto fp = axial_fixed_point(params, i, cfg))
      list.push_back(io::fixed_point_to_json(*fp));
  for (int k = 0; k < 3; ++k)
    for (const auto& fp : planar_fixed_points(params, k, cfg, seed))
      list.push_back(io::fixed_point_to_json(fp));
  for (const auto& fp : interior_fixed_points(params, cfg, seed))
    list.push_back(io::fixed_point_to_json(fp));
  nlohmann::json doc{{"fixed_points", list},
                     {"count", list.size()},
                     {"params", io::params_to_json(params)}};
  std::cout << doc.dump(2) << "\n";
  if (!opt.out_dir.empty()) {
    fs::create_directories(opt.out_dir);
    io::write_file((fs::path(opt.out_dir) / "fixed_points.json").string(),
                   doc.dump(2) + "\n");
  }
  return 0;
}

int run_example(Options opt) {
  if (opt.example < 1 || opt.example > 3)
    throw io::ConfigError("BadArguments", "example index must be 1, 2 or 3");
  const auto& sys = builtin_example(opt.example);
  if (opt.out_dir.empty())
    opt.out_dir = "lvseasons-example-" + std::to_string(opt.example);
  fs::create_directories(opt.out_dir);
  const auto cfg = resolve_cfg(opt);
  const auto seed = seed_from_env();
  const fs::path dir(opt.out_dir);

  std::vector<std::string> files;
  auto write_out = [&](const std::string& name, const std::string& content) {
    io::write_file((dir / name).string(), content);
    files.push_back(name);
  };

  write_out("params.json", io::params_to_json(sys.params).dump(2) + "\n");

  const auto verdict = classify_permanence(sys.params, cfg, seed);
  write_out("verdict.json", io::verdict_to_json(verdict).dump(2) + "\n");

  const auto rows =
      sample_trajectory(sys.params, sys.orbit_start, sys.horizon, sys.samples,
                        cfg);
  write_out("timeseries.csv", io::series_csv(rows));
  write_out("timeseries.svg", io::svg_time_series(rows));

  auto orbit =
      iterate_orbit(sys.params, sys.orbit_start, sys.orbit_length, cfg);
  write_out("orbit.csv", io::orbit_csv(orbit.points));
  write_out("orbit.svg", io::svg_orbit(orbit.points));

  std::vector<Vec3> fps;
  if (verdict.portrait) {
    for (const auto& fp : verdict.portrait->axial)
      if (fp) fps.push_back(fp->point);
    for (const auto& plane : verdict.portrait->planar)
      for (const auto& fp : plane) fps.push_back(fp.point);
  }
  for (const auto& fp : interior_fixed_points(sys.params, cfg, seed))
    fps.push_back(fp.point);

  // The plotted orbit mirrors the demo horizon; the attractor verdict wants
  // the long-run answer. Keep iterating (doubling, capped) while the tail is
  // still in transit, e.g. a slow spiral into a weakly attracting point.
  auto detect = [&] {
    return attractor_detect(orbit, fps, [&](const Vec3& x) {
      return poincare_map(sys.params, x, cfg);
    });
  };
  auto report = detect();
  constexpr std::size_t kIterationCap = 256000;
  while (report.kind == AttractorReport::Kind::Unresolved &&
         orbit.points.size() - 1 < kIterationCap) {
    const std::size_t target =
        std::min(kIterationCap, 2 * (orbit.points.size() - 1));
    Vec3 x = orbit.points.back();
    while (orbit.points.size() - 1 < target) {
      x = poincare_map(sys.params, x, cfg);
      orbit.points.push_back(x);
    }
    orbit.transient_cut =
        std::max<std::size_t>((orbit.points.size() - 1) / 2, 500);
    report = detect();
  }
  write_out("attractor.json", io::attractor_to_json(report).dump(2) + "\n");

  nlohmann::json manifest{
      {"example", opt.example},
      {"name", sys.name},
      {"verdict", io::verdict_to_json(verdict)["verdict"]},
      {"attractor", io::attractor_to_json(report)["kind"]},
      {"iterations_used", report.iterations_used},
      {"out_dir", opt.out_dir},
      {"files", files}};
  std::cout << manifest.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simulator and permanence classifier for three competing "
               "species under seasonal succession"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool with_format,
                        const std::string& default_format) {
    sub->add_option("--params", opt.params_path,
                    "JSON parameter document (omega, phi, mu, b, a)");
    sub->add_option("--example", opt.example, "bundled parameter set (1-3)");
    sub->add_option("--rel-tol", opt.rel_tol, "integrator relative tolerance");
    sub->add_option("--abs-tol", opt.abs_tol, "integrator absolute tolerance");
    sub->add_option("--out-dir", opt.out_dir, "write outputs into this directory");
    if (with_format) {
      opt.format = default_format;
      sub->add_option("--format", opt.format, "output format: csv, json or svg");
    }
  };

  auto* classify = app.add_subcommand("classify", "decide permanence");
  add_common(classify, true, "json");

  auto* simulate =
      app.add_subcommand("simulate", "sample the switched flow over time");
  add_common(simulate, true, "csv");
  simulate->add_option("--x0", opt.x0_text, "initial state x1,x2,x3");
  simulate->add_option("--t", opt.horizon, "time horizon");
  simulate->add_option("--samples", opt.samples, "number of sample rows")
      ->each([&](const std::string&) { opt.samples_set = true; });

  auto* orbit = app.add_subcommand("orbit", "iterate the period map");
  add_common(orbit, true, "csv");
  orbit->add_option("--x0", opt.x0_text, "initial state x1,x2,x3");
  orbit->add_option("--n", opt.iterates, "number of iterates");

  auto* fixed =
      app.add_subcommand("fixed-points", "locate and report all fixed points");
  add_common(fixed, false, "json");

  auto* example =
      app.add_subcommand("example", "run a bundled system end to end");
  example->add_option("index", opt.example, "bundled parameter set (1-3)")
      ->required();
  example->add_option("--out-dir", opt.out_dir, "output directory");
  example->add_option("--rel-tol", opt.rel_tol, "integrator relative tolerance");
  example->add_option("--abs-tol", opt.abs_tol, "integrator absolute tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << io::error_to_json("BadArguments", e.what()).dump() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(classify)) return run_classify(opt);
    if (app.got_subcommand(simulate)) return run_simulate(opt);
    if (app.got_subcommand(orbit)) return run_orbit(opt);
    if (app.got_subcommand(fixed)) return run_fixed_points(opt);
    if (app.got_subcommand(example)) return run_example(opt);
    std::cerr << io::error_to_json("BadArguments", "unknown subcommand").dump()
              << "\n";
    return 2;
  } catch (const InvalidParams& e) {
    std::vector<std::string> details;
    for (const auto& v : e.violations)
      details.push_back(v.code + " " + v.field + "=" +
                        io::format_double(v.value));
    std::cerr << io::error_to_json("InvalidParams", e.what(), details).dump()
              << "\n";
    return 2;
  } catch (const io::ConfigError& e) {
    std::cerr << io::error_to_json(e.code, e.what()).dump() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << io::error_to_json("BadArguments", e.what()).dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << io::error_to_json("Internal", e.what()).dump() << "\n";
    return 1;
  }
}
