#pragma once

// Built-in surfaces and curves with known helix-direction spaces, plus a
// default family of curves for each surface.

#include "helixgeom/curve.hpp"
#include "helixgeom/expr.hpp"
#include "helixgeom/hypersurface.hpp"
#include "helixgeom/theorems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace helixgeom::gallery {

/// Margin kept from singular loci (cone apex, sphere poles).
inline constexpr double kSingularMargin = 1e-3;

namespace detail {

inline std::string num(double v) { return "(" + helixgeom::detail::format_double(v) + ")"; }

inline Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

inline CurveSpec geodesic(std::string name, Vec u0, Vec w0, double length) {
  return {std::move(name), GeodesicSpec{std::move(u0), std::move(w0), false, length, kDefaultGeodesicStep}};
}

inline CurveSpec on_surface(std::string name, std::vector<std::string> u, Interval domain) {
  return {std::move(name), ParameterCurveSpec{std::move(u), "t", domain}};
}

}  // namespace detail

/// z = 0 style hyperplane (u1, .., u_{n-1}, 0) over [-1, 1]^{n-1}.
inline Hypersurface hyperplane(int n = 3) {
  if (n < 3) throw std::invalid_argument("hyperplane needs n >= 3");
  std::vector<std::string> comps;
  for (int i = 1; i < n; ++i) comps.push_back("u" + std::to_string(i));
  comps.push_back("0");
  return Hypersurface::parse(comps, std::vector<Interval>(static_cast<std::size_t>(n - 1), Interval{-1.0, 1.0}));
}

/// Unit sphere in hyperspherical coordinates with the outward normal.
/// For n = 3: (sin u1 cos u2, sin u1 sin u2, cos u1), u1 polar.
inline Hypersurface sphere(int n = 3) {
  if (n < 3) throw std::invalid_argument("sphere needs n >= 3");
  std::vector<std::string> y;
  std::string prefix;
  for (int i = 1; i < n; ++i) {
    const std::string ui = "u" + std::to_string(i);
    y.push_back(prefix + "cos(" + ui + ")");
    prefix += "sin(" + ui + ")*";
  }
  y.push_back(prefix.substr(0, prefix.size() - 1));
  std::vector<std::string> comps(y.begin() + 1, y.end());
  comps.push_back(y.front());
  std::vector<Interval> box(static_cast<std::size_t>(n - 1),
                            Interval{kSingularMargin, std::numbers::pi - kSingularMargin});
  box.back() = Interval{-std::numbers::pi, 3.0 * std::numbers::pi};
  Hypersurface s = Hypersurface::parse(comps, box);
  Vec mid(n - 1);
  for (int i = 0; i < n - 1; ++i) mid[i] = 0.5 * (box[static_cast<std::size_t>(i)].lo + box[static_cast<std::size_t>(i)].hi);
  if (s.normal(mid).dot(s.position(mid)) < 0) {
    std::swap(comps[0], comps[1]);
    s = Hypersurface::parse(comps, box);
  }
  return s;
}

/// (r cos u1, r sin u1, u2).
inline Hypersurface cylinder(double radius = 1.0) {
  if (!(radius > 0)) throw std::invalid_argument("cylinder radius must be positive");
  const std::string r = detail::num(radius);
  return Hypersurface::parse({r + "*cos(u1)", r + "*sin(u1)", "u2"},
                             {{-std::numbers::pi, 3.0 * std::numbers::pi}, {-10.0, 10.0}});
}

/// Cone with half-angle gamma from the axis e3:
/// (u1 sin g cos u2, u1 sin g sin u2, u1 cos g), apex excluded.
inline Hypersurface cone(double half_angle = std::numbers::pi / 6) {
  if (!(half_angle > 0 && half_angle < std::numbers::pi / 2))
    throw std::invalid_argument("cone half-angle must lie in (0, pi/2)");
  const std::string sg = detail::num(std::sin(half_angle));
  const std::string cg = detail::num(std::cos(half_angle));
  return Hypersurface::parse({"u1*" + sg + "*cos(u2)", "u1*" + sg + "*sin(u2)", "u1*" + cg},
                             {{kSingularMargin, 3.0}, {-std::numbers::pi, 3.0 * std::numbers::pi}});
}

/// (cos u1, sin u1, u2, u3) in E^4.
inline Hypersurface generalized_cylinder_e4() {
  return Hypersurface::parse({"cos(u1)", "sin(u1)", "u2", "u3"},
                             {{-std::numbers::pi, 3.0 * std::numbers::pi}, {-5.0, 5.0}, {-5.0, 5.0}});
}

/// (u1 cos u2, u1 sin u2, u2).
inline Hypersurface helicoid() {
  return Hypersurface::parse({"u1*cos(u2)", "u1*sin(u2)", "u2"}, {{-1.0, 1.0}, {-std::numbers::pi, std::numbers::pi}});
}

/// Cylinder over a plane curve (x(u1), y(u1), u2).
inline Hypersurface plane_curve_cylinder(const std::string& x = "u1", const std::string& y = "u1^2",
                                         Interval curve_domain = {-1.0, 1.0}) {
  return Hypersurface::parse({x, y, "u2"}, {curve_domain, {-5.0, 5.0}});
}

// Default curve families.

inline std::vector<CurveSpec> hyperplane_curves(int n = 3) {
  const Vec u0 = Vec::Zero(n - 1);
  Vec w0 = Vec::Ones(n - 1) / std::sqrt(static_cast<double>(n - 1));
  std::vector<std::string> circle(static_cast<std::size_t>(n - 1), "0");
  circle[0] = "0.5*cos(t)";
  circle[1] = "0.5*sin(t)";
  return {detail::geodesic("diagonal", u0, w0 * 0.5, 1.0),
          detail::on_surface("circle", circle, {0.0, 2.0 * std::numbers::pi})};
}

inline std::vector<CurveSpec> sphere_curves(int n = 3) {
  Vec u0 = Vec::Constant(n - 1, std::numbers::pi / 2);
  u0[n - 2] = 0.0;
  Vec w0 = Vec::Zero(n - 1);
  w0[n - 2] = 1.0;
  std::vector<std::string> lat(static_cast<std::size_t>(n - 1), "1.5707963267948966");
  lat[0] = "1";
  lat[static_cast<std::size_t>(n - 2)] = "t";
  return {detail::geodesic("great_circle", u0, w0, 2.0 * std::numbers::pi),
          detail::on_surface("latitude", lat, {0.0, 2.0 * std::numbers::pi})};
}

inline std::vector<CurveSpec> cylinder_curves(double radius = 1.0) {
  const double s2 = std::sqrt(2.0);
  return {detail::geodesic("helix45", detail::vec({0.0, 0.0}), detail::vec({1.0 / (radius * s2), 1.0 / s2}),
                           2.0 * std::numbers::pi * s2),
          detail::on_surface("circle", {"t", "0"}, {0.0, 2.0 * std::numbers::pi}),
          detail::on_surface("ruling", {"0.3", "t"}, {-1.0, 1.0})};
}

/// Three geodesics from u = (1.5, pi) at 90, 60 and 120 degrees to the
/// ruling, a ruling and the circle u1 = 1.
inline std::vector<CurveSpec> cone_curves(double half_angle = std::numbers::pi / 6) {
  std::vector<CurveSpec> out;
  const double rho = 1.5;
  for (int deg : {90, 60, 120}) {
    const double a = deg * std::numbers::pi / 180.0;
    out.push_back(detail::geodesic("geodesic_" + std::to_string(deg), detail::vec({rho, std::numbers::pi}),
                                   detail::vec({std::cos(a), std::sin(a) / (rho * std::sin(half_angle))}), 2.0));
  }
  out.push_back(detail::on_surface("ruling", {"t", "0.4"}, {0.5, 2.5}));
  out.push_back(detail::on_surface("circle", {"1", "t"}, {0.0, 2.0 * std::numbers::pi}));
  return out;
}

inline std::vector<CurveSpec> generalized_cylinder_e4_curves() {
  return {detail::geodesic("helix", detail::vec({0.0, 0.0, 0.0}), detail::vec({1.0, 1.0, 1.0}) / std::sqrt(3.0), 3.0),
          detail::on_surface("circle", {"t", "0", "0"}, {0.0, 2.0 * std::numbers::pi})};
}

inline std::vector<CurveSpec> helicoid_curves() {
  return {detail::geodesic("geodesic", detail::vec({0.5, 0.0}), detail::vec({1.0, 1.0}), 0.5),
          detail::on_surface("ruling", {"t", "0.3"}, {-0.9, 0.9})};
}

inline std::vector<CurveSpec> plane_curve_cylinder_curves(Interval curve_domain = {-1.0, 1.0}) {
  const double lo = curve_domain.lo + 0.1 * curve_domain.width();
  const double hi = curve_domain.hi - 0.1 * curve_domain.width();
  return {detail::on_surface("section", {"t", "0"}, {lo, hi}),
          detail::on_surface("ruling", {helixgeom::detail::format_double(0.5 * (lo + hi)), "t"}, {-1.0, 1.0})};
}

// Space curves.

/// (a cos t, a sin t, b t).
inline Curve helix(double a = 1.0, double b = 1.0, Interval domain = {0.0, 2.0 * std::numbers::pi}) {
  return Curve::parse({detail::num(a) + "*cos(t)", detail::num(a) + "*sin(t)", detail::num(b) + "*t"}, "t", domain);
}

inline Curve circle(double radius = 1.0, Interval domain = {0.0, 2.0 * std::numbers::pi}) {
  return Curve::parse({detail::num(radius) + "*cos(t)", detail::num(radius) + "*sin(t)", "0"}, "t", domain);
}

inline Curve line(const Vec& point, const Vec& direction, Interval domain = {-1.0, 1.0}) {
  std::vector<std::string> comps;
  for (Eigen::Index i = 0; i < point.size(); ++i)
    comps.push_back(detail::num(point[i]) + "+" + detail::num(direction[i]) + "*t");
  return Curve::parse(comps, "t", domain);
}

/// W-curve (constant curvatures) in E^4: (a cos pt, a sin pt, b cos qt, b sin qt).
inline Curve w_curve_e4(double a = 1.0, double p = 1.0, double b = 0.5, double q = 2.0,
                        Interval domain = {0.0, 2.0 * std::numbers::pi}) {
  return Curve::parse({detail::num(a) + "*cos(" + detail::num(p) + "*t)", detail::num(a) + "*sin(" + detail::num(p) + "*t)",
                       detail::num(b) + "*cos(" + detail::num(q) + "*t)", detail::num(b) + "*sin(" + detail::num(q) + "*t)"},
                      "t", domain);
}

}  // namespace helixgeom::gallery
