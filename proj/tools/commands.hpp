#pragma once

// Subcommand bodies shared by the command-line tool and its tests. Each
// writes its primary output to `out` and returns the process exit code.

#include "helixgeom/curve.hpp"
#include "helixgeom/geodesic.hpp"
#include "helixgeom/helix_space.hpp"
#include "helixgeom/report.hpp"
#include "helixgeom/scene.hpp"
#include "helixgeom/theorems.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <string>

namespace helixgeom::cli {

enum ExitCode { kSuccess = 0, kVerificationFailure = 1, kUsageError = 2, kNumericalError = 3 };

struct Options {
  std::optional<int> samples;          // curve samples and surface grid size
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::string dump_normals;            // analyze: CSV path
  std::string curve;                   // frenet / geodesic: curve name
  std::optional<double> at;            // frenet: single parameter
  std::string csv;                     // frenet / geodesic: CSV path
};

inline void apply_overrides(Scene& scene, const Options& opt) {
  if (opt.samples) {
    if (*opt.samples < 2) throw std::invalid_argument("--samples must be at least 2");
    scene.config.curve_plan.uniform = *opt.samples;
    scene.config.surface_plan.grid = *opt.samples;
  }
  if (opt.tol) {
    if (!(*opt.tol > 0)) throw std::invalid_argument("--tol must be positive");
    scene.config.tol = *opt.tol;
  }
  if (opt.seed) {
    scene.config.curve_plan.seed = *opt.seed;
    scene.config.surface_plan.seed = *opt.seed;
  }
}

inline const Hypersurface& require_surface(const Scene& scene) {
  if (!scene.surface) throw SceneError("/surface", "this command needs a surface");
  return *scene.surface;
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw SceneError("", "cannot write '" + path + "'");
  f << text;
}

/// H(M) and the strong r-helix classification.
inline int analyze(Scene scene, const Options& opt, std::ostream& out) {
  apply_overrides(scene, opt);
  const Hypersurface& s = require_surface(scene);
  const double tol = opt.tol.value_or(kNullSpaceTol);
  const auto cls = classify_strong_r_helix(s, tol, scene.config.surface_plan);
  Json report = {{"surface", {{"label", scene.surface_label}, {"dim", s.dim()}, {"domain", report_detail::box(s.box())}}},
                 {"helix_space", to_json(cls.space)},
                 {"classification", {{"strong_r_helix", cls.is_helix}, {"r", cls.r}}}};
  out << canonical_dump(report) << '\n';
  if (!opt.dump_normals.empty()) {
    std::ofstream f(opt.dump_normals);
    if (!f) throw SceneError("", "cannot write '" + opt.dump_normals + "'");
    write_normals_csv(f, s, scene.config.surface_plan.points(s.box(), s.dim()));
  }
  return kSuccess;
}

/// Ambient curve for a named space or surface curve.
inline Curve named_curve(const Scene& scene, const std::string& name) {
  if (const auto* c = scene.find_space_curve(name)) return c->curve;
  if (const auto* c = scene.find_surface_curve(name)) return build_curve(require_surface(scene), *c).ambient();
  throw SceneError("/curves", "no curve named '" + name + "'");
}

inline int frenet_cmd(Scene scene, const Options& opt, std::ostream& out) {
  apply_overrides(scene, opt);
  if (opt.curve.empty()) throw std::invalid_argument("frenet needs --curve");
  const Curve c = named_curve(scene, opt.curve);
  if (opt.at) {
    if (!c.domain().contains(*opt.at)) throw std::invalid_argument("--at lies outside the curve domain");
    Json j = to_json(frenet(c, *opt.at));
    j["curve"] = opt.curve;
    j["position"] = report_detail::vec(c.position(*opt.at));
    out << canonical_dump(j) << '\n';
    return kSuccess;
  }
  SamplePlan grid = scene.config.curve_plan;
  grid.random = 0;
  const auto ts = grid.parameters(c.domain());
  if (!opt.csv.empty()) {
    std::ofstream f(opt.csv);
    if (!f) throw SceneError("", "cannot write '" + opt.csv + "'");
    write_frenet_csv(f, c, ts);
  }
  Json samples = Json::array();
  for (double t : ts) {
    Json j = to_json(frenet(c, t));
    j["position"] = report_detail::vec(c.position(t));
    samples.push_back(std::move(j));
  }
  out << canonical_dump(Json{{"curve", opt.curve}, {"samples", samples}}) << '\n';
  return kSuccess;
}

/// CSV trace to --csv (or `out`); diagnostics JSON to `out` when the CSV
/// goes to a file, otherwise to `diag` if given.
inline int geodesic_cmd(Scene scene, const Options& opt, std::ostream& out, std::ostream* diag = nullptr) {
  apply_overrides(scene, opt);
  const Hypersurface& s = require_surface(scene);
  if (opt.curve.empty()) throw std::invalid_argument("geodesic needs --curve");
  const CurveSpec* spec = scene.find_surface_curve(opt.curve);
  if (spec == nullptr) throw SceneError("/curves", "no surface curve named '" + opt.curve + "'");
  const auto* g = std::get_if<GeodesicSpec>(&spec->shape);
  if (g == nullptr) throw SceneError("/curves", "curve '" + opt.curve + "' is not a geodesic spec");
  const GeodesicTrace trace = integrate(s, *g);
  Json d = geodesic_diagnostics(trace);
  d["curve"] = opt.curve;
  d["is_geodesic_residual"] = is_geodesic(s, trace_to_surface_curve(trace), scene.config.tol, scene.config.curve_plan).residual;
  if (!opt.csv.empty()) {
    std::ofstream f(opt.csv);
    if (!f) throw SceneError("", "cannot write '" + opt.csv + "'");
    write_trace_csv(f, trace);
    out << canonical_dump(d) << '\n';
  } else {
    write_trace_csv(out, trace);
    if (diag != nullptr) *diag << canonical_dump(d) << '\n';
  }
  return kSuccess;
}

inline int verify(Scene scene, const Options& opt, std::ostream& out) {
  apply_overrides(scene, opt);
  const Hypersurface& s = require_surface(scene);
  const SuiteResult res = run_suite(s, scene.surface_curves, scene.config);
  out << canonical_dump(to_json(res.reports)) << '\n';
  return suite_exit_code(res.reports);
}

inline int gallery_list(std::ostream& out) {
  Json list = Json::array();
  for (const auto& g : gallery_listing())
    list.push_back({{"name", g.name}, {"kind", g.kind}, {"dim", g.dim}, {"params", g.params}});
  out << canonical_dump(list) << '\n';
  return kSuccess;
}

/// Exit code for an exception escaping a command.
inline int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const SceneError*>(&e) || dynamic_cast<const SyntaxError*>(&e) ||
      dynamic_cast<const std::invalid_argument*>(&e))
    return kUsageError;
  if (const auto* he = dynamic_cast<const Error*>(&e); he != nullptr && he->kind() == "OutOfDomain") return kUsageError;
  return kNumericalError;
}

}  // namespace helixgeom::cli
