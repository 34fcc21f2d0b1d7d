// flatfront: construct, analyze, verify and export flat fronts.
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "flatfront/error.hpp"
#include "flatfront/json_io.hpp"
#include "flatfront/mesh.hpp"
#include "flatfront_acceptance/acceptance.hpp"

namespace ff = flatfront;

namespace {

struct Settings {
  std::string config;
  ff::Tolerances tol;
};

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    ff::write_text(out, text);
  }
}

std::vector<ff::SpherePoint> parse_points(const std::string& list) {
  std::vector<ff::SpherePoint> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(ff::parse_sphere_point(item));
  return out;
}

// "N" or "NUxNV".
std::pair<int, int> parse_resolution(const std::string& s) {
  const auto x = s.find('x');
  try {
    if (x == std::string::npos) {
      const int n = std::stoi(s);
      return {n, n};
    }
    return {std::stoi(s.substr(0, x)), std::stoi(s.substr(x + 1))};
  } catch (const std::exception&) {
    throw ff::Error(ff::ErrorCode::kParseError, "bad resolution '" + s + "'");
  }
}

ff::Rect parse_rect(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  try {
    while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
  } catch (const std::exception&) {
    v.clear();
  }
  if (v.size() != 4) throw ff::Error(ff::ErrorCode::kParseError, "rect needs x0,x1,y0,y1");
  return {v[0], v[1], v[2], v[3]};
}

int fail(const std::string& name, const std::string& message, int code) {
  const nlohmann::json j = {{"error", name}, {"message", message}};
  std::cerr << j.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flat fronts in hyperbolic 3-space"};
  app.require_subcommand(1);
  Settings settings;
  app.add_option("--config", settings.config, "key = value tolerance overrides");

  // construct
  auto* construct = app.add_subcommand("construct", "Write Weierstrass data as JSON");
  construct->require_subcommand(1);
  std::string construct_out;
  construct->add_option("--out", construct_out, "Output file (default stdout)");
  auto* revolution = construct->add_subcommand("revolution", "Front of revolution");
  double alpha = 0.0, c = 1.0;
  revolution->add_option("--alpha", alpha)->required();
  revolution->add_option("--c", c)->required();
  revolution->add_option("--out", construct_out, "Output file (default stdout)");
  auto* voss = construct->add_subcommand("voss", "Voss-type data with ends at the given points");
  std::string points;
  voss->add_option("--points", points, "Comma separated, e.g. \"1,-1,inf\"")->required();
  voss->add_option("--out", construct_out, "Output file (default stdout)");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Verification report for a data file");
  std::string analyze_in, analyze_out, grid_res, grid_rect, grid_chart = "plane";
  int samples = 50;
  bool no_monodromy = false;
  analyze->add_option("--in", analyze_in)->required();
  analyze->add_option("--out", analyze_out, "Output file (default stdout)");
  analyze->add_option("--grid", grid_res, "Contour grid resolution, N or NUxNV");
  analyze->add_option("--rect", grid_rect, "Contour grid rectangle x0,x1,y0,y1");
  analyze->add_option("--chart", grid_chart, "Contour grid chart")
      ->check(CLI::IsMember({"plane", "log"}));
  analyze->add_option("--samples", samples, "Flatness samples")->check(CLI::PositiveNumber);
  analyze->add_flag("--no-monodromy", no_monodromy);

  // verify
  auto* verify = app.add_subcommand("verify", "Run an acceptance suite");
  std::string suite = "paper-examples";
  verify->add_option("--suite", suite)
      ->check(CLI::IsMember({"paper-examples", "sharpness", "islands", "all"}));

  // export
  auto* exporter = app.add_subcommand("export", "Mesh a parallel front into OBJ or PLY");
  std::string export_in, export_out, format = "obj";
  double t = 0.0;
  int resolution = 64;
  bool no_overlays = false;
  exporter->add_option("--in", export_in)->required();
  exporter->add_option("--out", export_out)->required();
  exporter->add_option("--t", t, "Parallel front distance");
  exporter->add_option("--format", format)->check(CLI::IsMember({"obj", "ply"}));
  exporter->add_option("--resolution", resolution, "Lattice points per side")
      ->check(CLI::Range(2, 4096));
  exporter->add_flag("--no-overlays", no_overlays);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("UsageError", e.what(), 1);
  }

  try {
    if (!settings.config.empty()) settings.tol = ff::load_tolerances(settings.config);
    const ff::Tolerances& tol = settings.tol;

    if (*construct) {
      const ff::WeierstrassData d = *revolution ? ff::revolution_data({alpha, c})
                                                : ff::voss_data(parse_points(points));
      emit(ff::dump(ff::to_json(d)), construct_out);
      return 0;
    }
    if (*analyze) {
      const ff::WeierstrassData d = ff::read_data(analyze_in);
      ff::ReportOptions opts;
      opts.flatness_samples = samples;
      opts.monodromy = !no_monodromy;
      if (!grid_res.empty() || !grid_rect.empty() || grid_chart != "plane") {
        ff::ChartGrid g;
        g.chart = grid_chart == "log" ? ff::ChartKind::kLog : ff::ChartKind::kPlane;
        g.rect = grid_rect.empty() ? ff::Rect{-2.0, 2.0, -2.0, 2.0} : parse_rect(grid_rect);
        g.nu = g.nv = 256;
        if (!grid_res.empty()) std::tie(g.nu, g.nv) = parse_resolution(grid_res);
        opts.grid = g;
      }
      emit(ff::dump(ff::verification_report(d, opts, tol)), analyze_out);
      return 0;
    }
    if (*verify) {
      namespace acc = ff::acceptance;
      int failed = 0;
      for (const acc::CriterionResult& r : acc::run_suite(acc::parse_suite(suite))) {
        std::printf("%s\n", acc::format_line(r).c_str());
        failed += !r.passed;
      }
      std::printf("%d criteria failed\n", failed);
      return failed == 0 ? 0 : 1;
    }
    if (*exporter) {
      const ff::WeierstrassData d = ff::read_data(export_in);
      ff::MeshOptions opts;
      opts.overlays = !no_overlays;
      const ff::FrontMesh m = ff::mesh_front(d, ff::default_grid(d, resolution), t, opts, tol);
      ff::export_mesh(m, format == "ply" ? ff::MeshFormat::kPly : ff::MeshFormat::kObj,
                      export_out);
      if (!m.audit.passed) {
        return fail("LoopClosure",
                    "loop closure audit failed, max defect " +
                        std::to_string(m.audit.max_defect),
                    2);
      }
      return 0;
    }
  } catch (const ff::Error& e) {
    return fail(std::string(ff::error_name(e.code())), e.what(),
                ff::is_validation_error(e.code()) ? 1 : 2);
  } catch (const std::exception& e) {
    return fail("RuntimeError", e.what(), 2);
  }
  return 2;
}
