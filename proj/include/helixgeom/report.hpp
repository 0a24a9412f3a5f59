#pragma once

// JSON serialization of results. Output is canonical: object keys sorted,
// floating-point numbers printed with 17 significant digits, non-finite
// numbers as null.

#include "helixgeom/expr.hpp"
#include "helixgeom/geodesic.hpp"
#include "helixgeom/helix_space.hpp"
#include "helixgeom/scene.hpp"
#include "helixgeom/theorems.hpp"

#include "json.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <string>

namespace helixgeom {

namespace report_detail {

inline void write_string(std::ostream& os, const std::string& s) {
  os << Json(s).dump();
}

inline void write(std::ostream& os, const Json& j, int indent, int depth) {
  const std::string pad = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* sep = indent > 0 ? ": " : ":";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // nlohmann objects iterate in key order
        if (!first) os << ',';
        first = false;
        os << pad;
        write_string(os, it.key());
        os << sep;
        write(os, it.value(), indent, depth + 1);
      }
      os << close << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) os << ',';
        os << pad;
        write(os, j[i], indent, depth + 1);
      }
      os << close << ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        os << "null";
      } else {
        os << detail::format_double(v);
      }
      return;
    }
    default:
      os << j.dump();
  }
}

inline Json vec(const Vec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

inline Json box(const std::vector<Interval>& b) {
  Json out = Json::array();
  for (const auto& iv : b) out.push_back(Json::array({iv.lo, iv.hi}));
  return out;
}

}  // namespace report_detail

inline std::string canonical_dump(const Json& j, int indent = 2) {
  std::ostringstream os;
  report_detail::write(os, j, indent, 0);
  return os.str();
}

inline Json to_json(const HelixDirectionSpace& h) {
  Json basis = Json::array();
  for (int j = 0; j < h.r(); ++j) basis.push_back(report_detail::vec(h.direction(j)));
  return {{"r", h.r()},
          {"ambient_dim", h.ambient_dim},
          {"basis", basis},
          {"constants", h.constants},
          {"angles", h.angles},
          {"residuals", h.residuals},
          {"sv_spectrum", h.spectrum},
          {"tolerance", h.tolerance},
          {"seed", h.seed},
          {"samples", h.samples},
          {"verification_residual", h.verification_residual}};
}

inline Json to_json(const TheoremReport& r) {
  Json out = {{"theorem", r.theorem()},
              {"subject", r.subject()},
              {"status", r.status()},
              {"hypothesis", to_string(r.hypothesis())},
              {"hypothesis_residual", r.hypothesis_residual()},
              {"conclusion", to_string(r.conclusion())},
              {"max_residual", r.max_residual()},
              {"tolerance", r.tolerance()},
              {"samples", r.samples()},
              {"diagnostics", Json::object()},
              {"notes", r.notes()},
              {"error", nullptr}};
  for (const auto& [k, v] : r.diagnostics()) out["diagnostics"][k] = v;
  if (r.error_kind()) out["error"] = {{"kind", *r.error_kind()}, {"message", *r.error_message()}};
  return out;
}

inline Json to_json(const std::vector<TheoremReport>& reports) {
  Json out = Json::array();
  for (const auto& r : reports) out.push_back(to_json(r));
  return out;
}

inline Json to_json(const FrenetData& f) {
  Json frame = Json::array();
  for (const auto& v : f.frame) frame.push_back(report_detail::vec(v));
  return {{"t", f.t}, {"speed", f.speed}, {"frame", frame}, {"curvatures", f.curvatures}, {"valid_depth", f.valid_depth}};
}

inline Json geodesic_diagnostics(const GeodesicTrace& g) {
  return {{"samples", g.samples.size()},
          {"length", g.length()},
          {"step", g.step},
          {"max_speed_drift", g.max_speed_drift},
          {"max_tangential_residual", g.max_tangential_residual},
          {"max_margin_violation", g.max_margin_violation},
          {"domain_exit", g.domain_exit},
          {"end_position", report_detail::vec(g.samples.back().position)},
          {"end_parameters", report_detail::vec(g.samples.back().u)}};
}

inline Json error_json(const std::exception& e) {
  Json out = {{"kind", "Error"}, {"message", e.what()}};
  if (const auto* he = dynamic_cast<const Error*>(&e)) out["kind"] = he->kind();
  if (const auto* se = dynamic_cast<const SyntaxError*>(&e)) {
    out["position"] = se->position();
    out["detail"] = se->detail();
  }
  if (const auto* sc = dynamic_cast<const SceneError*>(&e)) out["pointer"] = sc->pointer();
  if (const auto* de = dynamic_cast<const DomainError*>(&e)) out["subexpression"] = de->subexpression();
  return {{"error", out}};
}

}  // namespace helixgeom
