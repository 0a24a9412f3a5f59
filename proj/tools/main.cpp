#include "commands.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <sstream>

namespace {

using namespace helixgeom;

void add_common(CLI::App* cmd, cli::Options& opt, std::string& scene, std::string& report) {
  cmd->add_option("scene", scene, "scene file (JSON)")->required();
  cmd->add_option("--samples", opt.samples, "uniform curve samples and surface grid size");
  cmd->add_option("--tol", opt.tol, "conclusion tolerance (analyze: null-space tolerance)");
  cmd->add_option("--seed", opt.seed, "random seed");
  cmd->add_option("--report", report, "write the JSON output to this path instead of stdout");
}

int fail(const std::exception& e, int code) {
  std::cerr << canonical_dump(error_json(e), 0) << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"helixgeom: helix directions, Frenet frames, geodesics and theorem checks for hypersurfaces"};
  app.require_subcommand(1);
  cli::Options opt;
  std::string scene_path;
  std::string report;

  auto* gallery = app.add_subcommand("gallery", "list built-in surfaces and curves");
  auto* analyze = app.add_subcommand("analyze", "compute H(M) and classify the surface");
  add_common(analyze, opt, scene_path, report);
  analyze->add_option("--dump-normals", opt.dump_normals, "CSV of sampled normals");
  auto* frenet = app.add_subcommand("frenet", "Frenet frames and curvatures of a named curve");
  add_common(frenet, opt, scene_path, report);
  frenet->add_option("--curve", opt.curve, "curve name")->required();
  frenet->add_option("--at", opt.at, "single parameter value");
  frenet->add_option("--csv", opt.csv, "also write t,x..,k.. samples as CSV");
  auto* geodesic = app.add_subcommand("geodesic", "integrate a named geodesic spec");
  add_common(geodesic, opt, scene_path, report);
  geodesic->add_option("--curve", opt.curve, "geodesic name")->required();
  geodesic->add_option("--csv", opt.csv, "write the trace CSV here (diagnostics go to stdout)");
  auto* verify = app.add_subcommand("verify", "run every theorem check on the scene");
  add_common(verify, opt, scene_path, report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    return fail(Error("UsageError", e.what()), cli::kUsageError);
  }

  try {
    if (gallery->parsed()) return cli::gallery_list(std::cout);
    Scene scene = load_scene(scene_path);
    std::ostringstream buf;
    std::ostream& out = report.empty() ? static_cast<std::ostream&>(std::cout) : buf;
    int code = 0;
    if (analyze->parsed()) code = cli::analyze(std::move(scene), opt, out);
    if (frenet->parsed()) code = cli::frenet_cmd(std::move(scene), opt, out);
    if (geodesic->parsed()) {
      // Without --csv the trace goes to stdout and --report receives the diagnostics.
      std::ostream& trace_out = opt.csv.empty() ? static_cast<std::ostream&>(std::cout) : out;
      code = cli::geodesic_cmd(std::move(scene), opt, trace_out, report.empty() ? nullptr : &buf);
    }
    if (verify->parsed()) code = cli::verify(std::move(scene), opt, out);
    if (!report.empty()) cli::write_file(report, buf.str());
    return code;
  } catch (const std::exception& e) {
    return fail(e, cli::exit_code_for(e));
  }
}
