#include "commands.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace helixgeom {
namespace {

const std::string kScenes = HELIXGEOM_SCENES_DIR;

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

// Runs the CLI binary; output files live in the test working directory.
CliRun run(const std::string& args) {
  const std::string cmd = std::string(HELIXGEOM_CLI) + " " + args + " > cli_out.txt 2> cli_err.txt";
  const int status = std::system(cmd.c_str());
  CliRun r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp("cli_out.txt");
  r.err = slurp("cli_err.txt");
  return r;
}

std::string scene(const std::string& name) { return kScenes + "/" + name + ".json"; }

TEST(CliCommandTest, AnalyzeCone) {
  std::ostringstream os;
  EXPECT_EQ(cli::analyze(load_scene(scene("cone")), {}, os), cli::kSuccess);
  const Json j = Json::parse(os.str());
  EXPECT_EQ(j["helix_space"]["r"], 1);
  EXPECT_TRUE(j["classification"]["strong_r_helix"].get<bool>());
  EXPECT_NEAR(j["helix_space"]["constants"][0].get<double>(), 0.5, 1e-10);
}

TEST(CliCommandTest, SamplesOverrideBothPlans) {
  Scene s = load_scene(scene("cone"));
  cli::Options opt;
  opt.samples = 10;
  cli::apply_overrides(s, opt);
  EXPECT_EQ(s.config.curve_plan.uniform, 10);
  EXPECT_EQ(s.config.surface_plan.grid, 10);
  opt.samples = 1;
  EXPECT_THROW(cli::apply_overrides(s, opt), std::invalid_argument);
}

TEST(CliCommandTest, FrenetAtPoint) {
  std::ostringstream os;
  cli::Options opt;
  opt.curve = "helix";
  opt.at = 1.0;
  EXPECT_EQ(cli::frenet_cmd(load_scene(scene("curves")), opt, os), cli::kSuccess);
  const Json j = Json::parse(os.str());
  EXPECT_NEAR(j["curvatures"][0].get<double>(), 0.5, 1e-12);
  EXPECT_NEAR(j["curvatures"][1].get<double>(), 0.5, 1e-12);
  EXPECT_EQ(j["valid_depth"], 3);
}

TEST(CliCommandTest, GeodesicDiagnostics) {
  std::ostringstream trace, diag;
  cli::Options opt;
  opt.curve = "helix45";
  EXPECT_EQ(cli::geodesic_cmd(load_scene(scene("cylinder")), opt, trace, &diag), cli::kSuccess);
  EXPECT_EQ(trace.str().substr(0, trace.str().find('\n')), "s,u1,u2,x1,x2,x3,v1,v2,v3");
  const Json d = Json::parse(diag.str());
  EXPECT_LE(d["max_speed_drift"].get<double>(), 1e-7);
  EXPECT_LE(d["is_geodesic_residual"].get<double>(), 1e-8);
  EXPECT_FALSE(d["domain_exit"].get<bool>());
}

TEST(CliCommandTest, GeodesicNeedsGeodesicSpec) {
  std::ostringstream os;
  cli::Options opt;
  opt.curve = "circle";
  EXPECT_THROW(cli::geodesic_cmd(load_scene(scene("cylinder")), opt, os), SceneError);
}

TEST(CliCommandTest, ExitCodeMapping) {
  EXPECT_EQ(cli::exit_code_for(SceneError("/x", "bad")), cli::kUsageError);
  EXPECT_EQ(cli::exit_code_for(std::invalid_argument("bad")), cli::kUsageError);
  EXPECT_EQ(cli::exit_code_for(StepTooLarge("drift", 1.0)), cli::kNumericalError);
  EXPECT_EQ(cli::exit_code_for(RankDeficient("rank")), cli::kNumericalError);
}

TEST(CliBinaryTest, VerifyConeSucceeds) {
  const CliRun r = run("verify " + scene("cone"));
  EXPECT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  ASSERT_TRUE(j.is_array());
  int pass = 0;
  for (const auto& rep : j) pass += rep["status"] == "pass";
  EXPECT_GE(pass, 20);
}

TEST(CliBinaryTest, VerifyIsDeterministic) {
  const CliRun a = run("verify " + scene("explicit_cone") + " --seed 3");
  const CliRun b = run("verify " + scene("explicit_cone") + " --seed 3");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const CliRun c = run("analyze " + scene("cone") + " --report cli_report.json");
  EXPECT_EQ(c.code, 0);
  EXPECT_TRUE(c.out.empty());
  EXPECT_EQ(Json::parse(slurp("cli_report.json"))["helix_space"]["r"], 1);
}

TEST(CliBinaryTest, UsageErrorsExitTwoWithJson) {
  for (const std::string& args :
       {std::string("frobnicate"), std::string(""), "analyze " + scene("nope"), "frenet " + scene("curves"),
        "frenet " + scene("curves") + " --curve missing", "verify " + scene("cone") + " --samples 1"}) {
    const CliRun r = run(args);
    EXPECT_EQ(r.code, 2) << args;
    const Json e = Json::parse(r.err);
    EXPECT_TRUE(e.contains("error")) << args;
    EXPECT_TRUE(e["error"].contains("kind")) << args;
  }
}

TEST(CliBinaryTest, GalleryListing) {
  const CliRun r = run("gallery");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"cone\""), std::string::npos);
}

TEST(CliBinaryTest, FrenetCsvAndGeodesicCsv) {
  const CliRun f = run("frenet " + scene("w_curve") + " --curve w --samples 5 --csv cli_frenet.csv");
  EXPECT_EQ(f.code, 0) << f.err;
  const std::string csv = slurp("cli_frenet.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,x1,x2,x3,x4,k1,k2,k3");
  const CliRun g = run("geodesic " + scene("cone") + " --curve geodesic_60 --csv cli_trace.csv");
  EXPECT_EQ(g.code, 0) << g.err;
  EXPECT_LE(Json::parse(g.out)["max_speed_drift"].get<double>(), 1e-7);
  EXPECT_EQ(slurp("cli_trace.csv").substr(0, 9), "s,u1,u2,x");
}

}  // namespace
}  // namespace helixgeom
