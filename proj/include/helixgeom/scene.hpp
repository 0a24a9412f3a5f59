#pragma once

// JSON scene files (schema 1):
//
// {
//   "schema": 1,
//   "dim": 3,
//   "surface": {"gallery": "cone", "params": {"half_angle": 0.5235987755982988}}
//            | {"components": ["u1", "u2", "0"], "domain": [[-1, 1], [-1, 1]],
//               "singular": [{"param": 1, "at": 0}], "margin": 0.001},
//   "curves": [
//     {"name": "c", "kind": "surface", "u": ["t", "0.4"], "var": "t", "domain": [0.5, 2.5]},
//     {"name": "g", "kind": "geodesic", "u0": [1.5, 3.14], "w0": [0, 1] | "v0": [...],
//      "length": 2, "step": 0.001},
//     {"name": "h", "kind": "space", "components": ["cos(t)", "sin(t)", "t"], "domain": [0, 6]},
//     {"name": "w", "kind": "space", "gallery": "w-curve-e4", "params": {...}}
//   ],
//   "analysis": {"samples": 64, "random_samples": 16, "surface_samples": 0, "tol": 1e-6,
//                "hypothesis_tol": 1e-8, "separation": 1e-6, "angle_margin": 0.001, "seed": 42}
// }
//
// Without "curves", a gallery surface brings its default curve family.

#include "helixgeom/curve.hpp"
#include "helixgeom/errors.hpp"
#include "helixgeom/expr.hpp"
#include "helixgeom/gallery.hpp"
#include "helixgeom/hypersurface.hpp"
#include "helixgeom/theorems.hpp"

#include "json.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace helixgeom {

using Json = nlohmann::json;

struct SpaceCurveEntry {
  std::string name;
  Curve curve;
};

struct Scene {
  int dim = 3;
  std::string surface_label;  // gallery name or "explicit"
  std::optional<Hypersurface> surface;
  std::vector<CurveSpec> surface_curves;
  std::vector<SpaceCurveEntry> space_curves;
  CheckConfig config;

  const CurveSpec* find_surface_curve(const std::string& name) const {
    for (const auto& c : surface_curves)
      if (c.name == name) return &c;
    return nullptr;
  }
  const SpaceCurveEntry* find_space_curve(const std::string& name) const {
    for (const auto& c : space_curves)
      if (c.name == name) return &c;
    return nullptr;
  }
};

namespace scene_detail {

inline std::string child(const std::string& ptr, const std::string& key) { return ptr + "/" + key; }
inline std::string child(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

inline const Json& require(const Json& obj, const std::string& key, const std::string& ptr) {
  if (!obj.is_object()) throw SceneError(ptr, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SceneError(child(ptr, key), "missing required field");
  return *it;
}

inline double number(const Json& j, const std::string& ptr) {
  if (!j.is_number()) throw SceneError(ptr, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SceneError(ptr, "expected a finite number");
  return v;
}

inline int integer(const Json& j, const std::string& ptr) {
  if (!j.is_number_integer()) throw SceneError(ptr, "expected an integer");
  return j.get<int>();
}

inline std::string string(const Json& j, const std::string& ptr) {
  if (!j.is_string()) throw SceneError(ptr, "expected a string");
  return j.get<std::string>();
}

inline std::vector<std::string> strings(const Json& j, const std::string& ptr) {
  if (!j.is_array()) throw SceneError(ptr, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(string(j[i], child(ptr, i)));
  return out;
}

inline Vec vector(const Json& j, const std::string& ptr, int expected) {
  if (!j.is_array()) throw SceneError(ptr, "expected an array of numbers");
  if (static_cast<int>(j.size()) != expected)
    throw SceneError(ptr, "expected " + std::to_string(expected) + " numbers, got " + std::to_string(j.size()));
  Vec out(expected);
  for (int i = 0; i < expected; ++i) out[i] = number(j[static_cast<std::size_t>(i)], child(ptr, static_cast<std::size_t>(i)));
  return out;
}

inline Interval interval(const Json& j, const std::string& ptr) {
  const Vec v = vector(j, ptr, 2);
  if (!(v[0] < v[1])) throw SceneError(ptr, "interval needs lo < hi");
  return {v[0], v[1]};
}

/// Reads optional parameters, rejecting unknown keys.
class Params {
 public:
  Params(const Json* j, std::string ptr) : j_(j), ptr_(std::move(ptr)) {
    if (j_ != nullptr && !j_->is_object()) throw SceneError(ptr_, "expected an object");
  }

  double number(const std::string& key, double fallback) {
    used_.insert(key);
    if (j_ == nullptr || !j_->contains(key)) return fallback;
    return scene_detail::number(j_->at(key), child(ptr_, key));
  }
  int integer(const std::string& key, int fallback) {
    used_.insert(key);
    if (j_ == nullptr || !j_->contains(key)) return fallback;
    return scene_detail::integer(j_->at(key), child(ptr_, key));
  }
  std::string text(const std::string& key, const std::string& fallback) {
    used_.insert(key);
    if (j_ == nullptr || !j_->contains(key)) return fallback;
    return scene_detail::string(j_->at(key), child(ptr_, key));
  }
  Vec vector(const std::string& key, const Vec& fallback) {
    used_.insert(key);
    if (j_ == nullptr || !j_->contains(key)) return fallback;
    return scene_detail::vector(j_->at(key), child(ptr_, key), static_cast<int>(fallback.size()));
  }
  Interval interval(const std::string& key, Interval fallback) {
    used_.insert(key);
    if (j_ == nullptr || !j_->contains(key)) return fallback;
    return scene_detail::interval(j_->at(key), child(ptr_, key));
  }
  void finish() const {
    if (j_ == nullptr) return;
    for (auto it = j_->begin(); it != j_->end(); ++it)
      if (!used_.count(it.key())) throw SceneError(child(ptr_, it.key()), "unknown parameter");
  }

 private:
  const Json* j_;
  std::string ptr_;
  std::set<std::string> used_;
};

struct GallerySurface {
  int dim;
  Hypersurface surface;
  std::vector<CurveSpec> curves;
};

inline void require_dim(int dim, int expected, const std::string& name) {
  if (dim != expected)
    throw SceneError("/dim", "gallery surface '" + name + "' lives in dimension " + std::to_string(expected));
}

/// Dispatch wrapper turning invalid_argument from gallery builders into
/// scene errors at the params pointer.
template <class F>
auto guarded(const std::string& ptr, F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw SceneError(ptr, e.what());
  }
}

inline GallerySurface gallery_surface(const std::string& name, const Json* params, int dim, const std::string& ptr) {
  const std::string pptr = child(ptr, "params");
  Params p(params, pptr);
  GallerySurface out{dim, gallery::hyperplane(3), {}};
  if (name == "hyperplane") {
    const int n = p.integer("n", dim);
    p.finish();
    require_dim(dim, n, name);
    out.surface = guarded(pptr, [&] { return gallery::hyperplane(n); });
    out.curves = gallery::hyperplane_curves(n);
  } else if (name == "sphere") {
    const int n = p.integer("n", dim);
    p.finish();
    require_dim(dim, n, name);
    out.surface = guarded(pptr, [&] { return gallery::sphere(n); });
    out.curves = gallery::sphere_curves(n);
  } else if (name == "cylinder") {
    const double r = p.number("radius", 1.0);
    p.finish();
    require_dim(dim, 3, name);
    out.surface = guarded(pptr, [&] { return gallery::cylinder(r); });
    out.curves = gallery::cylinder_curves(r);
  } else if (name == "cone") {
    const double g = p.number("half_angle", std::numbers::pi / 6);
    p.finish();
    require_dim(dim, 3, name);
    out.surface = guarded(pptr, [&] { return gallery::cone(g); });
    out.curves = gallery::cone_curves(g);
  } else if (name == "generalized-cylinder-e4") {
    p.finish();
    require_dim(dim, 4, name);
    out.surface = gallery::generalized_cylinder_e4();
    out.curves = gallery::generalized_cylinder_e4_curves();
  } else if (name == "helicoid") {
    p.finish();
    require_dim(dim, 3, name);
    out.surface = gallery::helicoid();
    out.curves = gallery::helicoid_curves();
  } else if (name == "plane-curve-cylinder") {
    const std::string x = p.text("x", "u1");
    const std::string y = p.text("y", "u1^2");
    const Interval dom = p.interval("domain", {-1.0, 1.0});
    p.finish();
    require_dim(dim, 3, name);
    out.surface = gallery::plane_curve_cylinder(x, y, dom);
    out.curves = gallery::plane_curve_cylinder_curves(dom);
  } else {
    throw SceneError(child(ptr, "gallery"), "unknown gallery surface '" + name + "'");
  }
  return out;
}

inline Curve gallery_space_curve(const std::string& name, const Json* params, int dim, const std::string& ptr) {
  const std::string pptr = child(ptr, "params");
  Params p(params, pptr);
  auto need = [&](int n) {
    if (dim != n) throw SceneError("/dim", "gallery curve '" + name + "' lives in dimension " + std::to_string(n));
  };
  if (name == "helix") {
    const double a = p.number("a", 1.0);
    const double b = p.number("b", 1.0);
    const Interval d = p.interval("domain", {0.0, 2.0 * std::numbers::pi});
    p.finish();
    need(3);
    return gallery::helix(a, b, d);
  }
  if (name == "circle") {
    const double r = p.number("radius", 1.0);
    const Interval d = p.interval("domain", {0.0, 2.0 * std::numbers::pi});
    p.finish();
    need(3);
    return gallery::circle(r, d);
  }
  if (name == "line") {
    Vec e1 = Vec::Zero(dim);
    e1[0] = 1.0;
    const Vec point = p.vector("point", Vec::Zero(dim));
    const Vec direction = p.vector("direction", e1);
    const Interval d = p.interval("domain", {-1.0, 1.0});
    p.finish();
    return gallery::line(point, direction, d);
  }
  if (name == "w-curve-e4") {
    const double a = p.number("a", 1.0);
    const double pp = p.number("p", 1.0);
    const double b = p.number("b", 0.5);
    const double q = p.number("q", 2.0);
    const Interval d = p.interval("domain", {0.0, 2.0 * std::numbers::pi});
    p.finish();
    need(4);
    return gallery::w_curve_e4(a, pp, b, q, d);
  }
  throw SceneError(child(ptr, "gallery"), "unknown gallery curve '" + name + "'");
}

/// Shrinks the box away from singular loci u_k = at by margin.
inline void apply_singular_margins(std::vector<Interval>& box, const Json& list, double margin, const std::string& ptr) {
  if (!list.is_array()) throw SceneError(ptr, "expected an array");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string eptr = child(ptr, i);
    const int k = integer(require(list[i], "param", eptr), child(eptr, "param"));
    const double at = number(require(list[i], "at", eptr), child(eptr, "at"));
    if (k < 1 || k > static_cast<int>(box.size())) throw SceneError(child(eptr, "param"), "parameter index out of range");
    Interval& iv = box[static_cast<std::size_t>(k - 1)];
    if (at <= iv.lo) {
      iv.lo = std::max(iv.lo, at + margin);
    } else if (at >= iv.hi) {
      iv.hi = std::min(iv.hi, at - margin);
    } else {
      throw SceneError(eptr, "singular locus lies inside the domain; split the patch");
    }
    if (!(iv.lo < iv.hi)) throw SceneError(eptr, "margin leaves an empty domain");
  }
}

inline Hypersurface explicit_surface(const Json& s, int dim, const std::string& ptr) {
  const auto comps = strings(require(s, "components", ptr), child(ptr, "components"));
  if (static_cast<int>(comps.size()) != dim)
    throw SceneError(child(ptr, "components"), "expected " + std::to_string(dim) + " components");
  const Json& dom = require(s, "domain", ptr);
  if (!dom.is_array() || static_cast<int>(dom.size()) != dim - 1)
    throw SceneError(child(ptr, "domain"), "expected " + std::to_string(dim - 1) + " intervals");
  std::vector<Interval> box;
  for (std::size_t i = 0; i < dom.size(); ++i) box.push_back(interval(dom[i], child(child(ptr, "domain"), i)));
  double margin = gallery::kSingularMargin;
  if (s.contains("margin")) {
    margin = number(s["margin"], child(ptr, "margin"));
    if (!(margin > 0)) throw SceneError(child(ptr, "margin"), "margin must be positive");
  }
  if (s.contains("singular")) apply_singular_margins(box, s["singular"], margin, child(ptr, "singular"));
  return Hypersurface::parse(comps, std::move(box));
}

inline void validate_expressions(const std::vector<std::string>& comps, const std::vector<std::string>& vars) {
  for (const auto& c : comps) (void)helixgeom::parse(c, vars);
}

inline CurveSpec surface_curve(const Json& c, const std::string& name, int dim, const std::string& ptr) {
  const std::string kind = string(require(c, "kind", ptr), child(ptr, "kind"));
  if (kind == "surface") {
    ParameterCurveSpec spec;
    spec.u = strings(require(c, "u", ptr), child(ptr, "u"));
    if (static_cast<int>(spec.u.size()) != dim - 1)
      throw SceneError(child(ptr, "u"), "expected " + std::to_string(dim - 1) + " parameter components");
    if (c.contains("var")) spec.variable = string(c["var"], child(ptr, "var"));
    spec.domain = interval(require(c, "domain", ptr), child(ptr, "domain"));
    validate_expressions(spec.u, {spec.variable});
    return {name, spec};
  }
  GeodesicSpec spec;
  spec.u0 = vector(require(c, "u0", ptr), child(ptr, "u0"), dim - 1);
  const bool has_v = c.contains("v0");
  const bool has_w = c.contains("w0");
  if (has_v == has_w) throw SceneError(ptr, "geodesic needs exactly one of v0 (ambient) or w0 (parameter)");
  spec.ambient_direction = has_v;
  spec.direction = has_v ? vector(c["v0"], child(ptr, "v0"), dim) : vector(c["w0"], child(ptr, "w0"), dim - 1);
  spec.length = number(require(c, "length", ptr), child(ptr, "length"));
  if (!(spec.length > 0)) throw SceneError(child(ptr, "length"), "length must be positive");
  if (c.contains("step")) {
    spec.step = number(c["step"], child(ptr, "step"));
    if (!(spec.step > 0)) throw SceneError(child(ptr, "step"), "step must be positive");
  }
  return {name, spec};
}

inline void read_analysis(const Json& a, CheckConfig& cfg, const std::string& ptr) {
  Params p(&a, ptr);
  const int samples = p.integer("samples", cfg.curve_plan.uniform);
  const int random = p.integer("random_samples", cfg.curve_plan.random);
  const int surface = p.integer("surface_samples", cfg.surface_plan.grid);
  cfg.tol = p.number("tol", cfg.tol);
  cfg.hypothesis_tol = p.number("hypothesis_tol", cfg.hypothesis_tol);
  cfg.separation = p.number("separation", cfg.separation);
  cfg.angle_margin = p.number("angle_margin", cfg.angle_margin);
  std::uint64_t seed = cfg.curve_plan.seed;
  if (a.contains("seed")) {
    if (!a["seed"].is_number_unsigned() && !(a["seed"].is_number_integer() && a["seed"].get<long long>() >= 0))
      throw SceneError(child(ptr, "seed"), "seed must be a non-negative integer");
    seed = a["seed"].get<std::uint64_t>();
  }
  p.integer("seed", 0);
  p.finish();
  if (samples < 2) throw SceneError(child(ptr, "samples"), "need at least 2 samples");
  if (random < 0) throw SceneError(child(ptr, "random_samples"), "must be non-negative");
  if (surface < 0) throw SceneError(child(ptr, "surface_samples"), "must be non-negative");
  for (const char* key : {"tol", "hypothesis_tol", "separation", "angle_margin"})
    if (a.contains(key) && !(a[key].get<double>() > 0)) throw SceneError(child(ptr, key), "must be positive");
  cfg.curve_plan.uniform = samples;
  cfg.curve_plan.random = random;
  cfg.curve_plan.seed = seed;
  cfg.surface_plan.grid = surface;
  cfg.surface_plan.seed = seed;
}

}  // namespace scene_detail

/// Builds a scene from parsed JSON. Expressions are parsed (and syntax
/// errors raised) here, not at first use.
inline Scene scene_from_json(const Json& j) {
  using namespace scene_detail;
  if (!j.is_object()) throw SceneError("", "scene must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    static const std::set<std::string> known = {"schema", "dim", "surface", "curves", "analysis", "name", "description"};
    if (!known.count(it.key())) throw SceneError("/" + it.key(), "unknown field");
  }
  if (j.contains("schema") && integer(j["schema"], "/schema") != 1) throw SceneError("/schema", "unsupported schema version");
  Scene scene;
  scene.dim = integer(require(j, "dim", ""), "/dim");
  if (scene.dim < 2) throw SceneError("/dim", "dimension must be at least 2");
  if (j.contains("analysis")) read_analysis(j["analysis"], scene.config, "/analysis");

  std::vector<CurveSpec> defaults;
  if (j.contains("surface")) {
    const Json& s = j["surface"];
    if (!s.is_object()) throw SceneError("/surface", "expected an object");
    const bool gal = s.contains("gallery");
    const bool expl = s.contains("components");
    if (gal == expl) throw SceneError("/surface", "give exactly one of 'gallery' or 'components'");
    if (scene.dim < 3) throw SceneError("/dim", "hypersurfaces need dimension >= 3");
    if (gal) {
      for (auto it = s.begin(); it != s.end(); ++it)
        if (it.key() != "gallery" && it.key() != "params") throw SceneError("/surface/" + it.key(), "unknown field");
      const std::string name = string(s["gallery"], "/surface/gallery");
      auto g = gallery_surface(name, s.contains("params") ? &s["params"] : nullptr, scene.dim, "/surface");
      scene.surface = std::move(g.surface);
      scene.surface_label = name;
      defaults = std::move(g.curves);
    } else {
      for (auto it = s.begin(); it != s.end(); ++it) {
        static const std::set<std::string> known = {"components", "domain", "singular", "margin"};
        if (!known.count(it.key())) throw SceneError("/surface/" + it.key(), "unknown field");
      }
      scene.surface = explicit_surface(s, scene.dim, "/surface");
      scene.surface_label = "explicit";
    }
  }

  std::set<std::string> names;
  if (j.contains("curves")) {
    const Json& cs = j["curves"];
    if (!cs.is_array()) throw SceneError("/curves", "expected an array");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const std::string ptr = child("/curves", i);
      const Json& c = cs[i];
      const std::string name = string(require(c, "name", ptr), child(ptr, "name"));
      if (!names.insert(name).second) throw SceneError(child(ptr, "name"), "duplicate curve name '" + name + "'");
      const std::string kind = string(require(c, "kind", ptr), child(ptr, "kind"));
      if (kind == "space") {
        const bool gal = c.contains("gallery");
        const bool expl = c.contains("components");
        if (gal == expl) throw SceneError(ptr, "give exactly one of 'gallery' or 'components'");
        if (gal) {
          const std::string gname = string(c["gallery"], child(ptr, "gallery"));
          scene.space_curves.push_back(
              {name, gallery_space_curve(gname, c.contains("params") ? &c["params"] : nullptr, scene.dim, ptr)});
        } else {
          const auto comps = strings(c["components"], child(ptr, "components"));
          if (static_cast<int>(comps.size()) != scene.dim)
            throw SceneError(child(ptr, "components"), "expected " + std::to_string(scene.dim) + " components");
          const std::string var = c.contains("var") ? string(c["var"], child(ptr, "var")) : "t";
          const Interval dom = interval(require(c, "domain", ptr), child(ptr, "domain"));
          scene.space_curves.push_back({name, Curve::parse(comps, var, dom)});
        }
      } else if (kind == "surface" || kind == "geodesic") {
        if (!scene.surface) throw SceneError(child(ptr, "kind"), "surface curves need a surface");
        scene.surface_curves.push_back(surface_curve(c, name, scene.dim, ptr));
      } else {
        throw SceneError(child(ptr, "kind"), "kind must be 'space', 'surface' or 'geodesic'");
      }
    }
  } else {
    scene.surface_curves = std::move(defaults);
  }
  return scene;
}

inline Scene parse_scene(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SceneError("", std::string("invalid JSON: ") + e.what());
  }
  return scene_from_json(j);
}

inline Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SceneError("", "cannot open scene file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scene(buf.str());
}

struct GalleryListing {
  std::string name;
  std::string kind;  // surface | curve
  int dim;
  std::string params;
};

inline std::vector<GalleryListing> gallery_listing() {
  return {
      {"hyperplane", "surface", 0, "n (default: scene dim)"},
      {"sphere", "surface", 0, "n (default: scene dim)"},
      {"cylinder", "surface", 3, "radius = 1"},
      {"cone", "surface", 3, "half_angle = pi/6"},
      {"generalized-cylinder-e4", "surface", 4, ""},
      {"helicoid", "surface", 3, ""},
      {"plane-curve-cylinder", "surface", 3, "x = \"u1\", y = \"u1^2\", domain = [-1, 1]"},
      {"helix", "curve", 3, "a = 1, b = 1, domain = [0, 2pi]"},
      {"circle", "curve", 3, "radius = 1, domain = [0, 2pi]"},
      {"line", "curve", 0, "point, direction, domain = [-1, 1]"},
      {"w-curve-e4", "curve", 4, "a = 1, p = 1, b = 0.5, q = 2, domain = [0, 2pi]"},
  };
}

}  // namespace helixgeom
