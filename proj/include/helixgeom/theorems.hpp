#pragma once

// Numerical checks of the statements about strong r-helix hypersurfaces:
// each check returns a three-valued report (hypothesis satisfied / vacuous /
// violated) and evaluates the conclusion only when the hypothesis holds.

#include "helixgeom/curve.hpp"
#include "helixgeom/errors.hpp"
#include "helixgeom/geodesic.hpp"
#include "helixgeom/helix_space.hpp"
#include "helixgeom/hypersurface.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace helixgeom {

enum class Hypothesis { Satisfied, Vacuous, Violated };
enum class Conclusion { Pass, Fail, NotEvaluated };

inline const char* to_string(Hypothesis h) {
  switch (h) {
    case Hypothesis::Satisfied: return "satisfied";
    case Hypothesis::Vacuous: return "vacuous";
    case Hypothesis::Violated: return "violated";
  }
  return "?";
}

inline const char* to_string(Conclusion c) {
  switch (c) {
    case Conclusion::Pass: return "pass";
    case Conclusion::Fail: return "fail";
    case Conclusion::NotEvaluated: return "not_evaluated";
  }
  return "?";
}

/// Outcome of one theorem check. Reports are only built through the named
/// constructors, which make "pass" unreachable without a satisfied
/// hypothesis.
class TheoremReport {
 public:
  static TheoremReport vacuous(std::string theorem, std::string subject, std::string reason) {
    TheoremReport r(std::move(theorem), std::move(subject));
    r.hypothesis_ = Hypothesis::Vacuous;
    r.notes_.push_back(std::move(reason));
    return r;
  }

  static TheoremReport violated(std::string theorem, std::string subject, double hypothesis_residual,
                                std::string reason) {
    TheoremReport r(std::move(theorem), std::move(subject));
    r.hypothesis_ = Hypothesis::Violated;
    r.hypothesis_residual_ = hypothesis_residual;
    r.notes_.push_back(std::move(reason));
    return r;
  }

  /// Hypothesis satisfied; the conclusion is decided by the caller.
  static TheoremReport evaluated(std::string theorem, std::string subject, double hypothesis_residual,
                                 bool conclusion_holds, double max_residual, double tolerance) {
    TheoremReport r(std::move(theorem), std::move(subject));
    r.hypothesis_ = Hypothesis::Satisfied;
    r.hypothesis_residual_ = hypothesis_residual;
    r.conclusion_ = conclusion_holds ? Conclusion::Pass : Conclusion::Fail;
    r.max_residual_ = max_residual;
    r.tolerance_ = tolerance;
    return r;
  }

  /// The check could not run on this input (precondition or numerical error).
  static TheoremReport failed_to_run(std::string theorem, std::string subject, const Error& e,
                                     bool precondition) {
    TheoremReport r(std::move(theorem), std::move(subject));
    r.hypothesis_ = Hypothesis::Vacuous;
    r.error_kind_ = e.kind();
    r.error_message_ = e.what();
    r.precondition_ = precondition;
    return r;
  }

  const std::string& theorem() const noexcept { return theorem_; }
  const std::string& subject() const noexcept { return subject_; }
  Hypothesis hypothesis() const noexcept { return hypothesis_; }
  Conclusion conclusion() const noexcept { return conclusion_; }
  double hypothesis_residual() const noexcept { return hypothesis_residual_; }
  double max_residual() const noexcept { return max_residual_; }
  double tolerance() const noexcept { return tolerance_; }
  int samples() const noexcept { return samples_; }
  const std::map<std::string, double>& diagnostics() const noexcept { return diagnostics_; }
  const std::vector<std::string>& notes() const noexcept { return notes_; }
  const std::optional<std::string>& error_kind() const noexcept { return error_kind_; }
  const std::optional<std::string>& error_message() const noexcept { return error_message_; }

  /// pass | fail | vacuous | hypothesis_violated | not_applicable | error
  std::string status() const {
    if (error_kind_) return precondition_ ? "not_applicable" : "error";
    if (hypothesis_ == Hypothesis::Vacuous) return "vacuous";
    if (hypothesis_ == Hypothesis::Violated) return "hypothesis_violated";
    return conclusion_ == Conclusion::Pass ? "pass" : "fail";
  }

  TheoremReport& with_samples(int n) {
    samples_ = n;
    return *this;
  }
  TheoremReport& with_tolerance(double t) {
    tolerance_ = t;
    return *this;
  }
  TheoremReport& diagnostic(const std::string& key, double value) {
    diagnostics_[key] = value;
    return *this;
  }
  TheoremReport& note(std::string text) {
    notes_.push_back(std::move(text));
    return *this;
  }

 private:
  TheoremReport(std::string theorem, std::string subject) : theorem_(std::move(theorem)), subject_(std::move(subject)) {}

  std::string theorem_;
  std::string subject_;
  Hypothesis hypothesis_ = Hypothesis::Vacuous;
  Conclusion conclusion_ = Conclusion::NotEvaluated;
  double hypothesis_residual_ = 0.0;
  double max_residual_ = 0.0;
  double tolerance_ = 0.0;
  int samples_ = 0;
  std::map<std::string, double> diagnostics_;
  std::vector<std::string> notes_;
  std::optional<std::string> error_kind_;
  std::optional<std::string> error_message_;
  bool precondition_ = false;
};

struct CheckConfig {
  double tol = 1e-6;              // conclusion residuals
  double hypothesis_tol = 1e-8;   // algebraic hypothesis residuals
  double separation = 1e-6;       // "bounded away from zero" thresholds
  double angle_margin = 1e-3;     // excluded neighbourhoods of 0, pi/2, pi
  SamplePlan curve_plan{};
  SurfaceSamplePlan surface_plan{};
};

namespace detail {

inline Verdict require_geodesic(const Hypersurface& s, const SurfaceCurve& gamma, const CheckConfig& cfg) {
  const Verdict v = is_geodesic(s, gamma, cfg.tol, cfg.curve_plan);
  if (!v.holds)
    throw PreconditionError("curve is not a geodesic (tangential acceleration " + std::to_string(v.residual) + ")");
  return v;
}

inline std::vector<FrenetData> frames_along(const Curve& alpha, const SamplePlan& plan) {
  std::vector<FrenetData> out;
  for (double t : plan.parameters(alpha.domain())) out.push_back(frenet(alpha, t));
  return out;
}

inline int min_depth(const std::vector<FrenetData>& frames) {
  int d = 1 << 20;
  for (const auto& f : frames) d = std::min(d, f.valid_depth);
  return d;
}

/// max |x_i - mean(x)|.
inline double spread(const std::vector<double>& xs, double* mean_out = nullptr) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double dev = 0.0;
  for (double x : xs) dev = std::max(dev, std::abs(x - mean));
  if (mean_out != nullptr) *mean_out = mean;
  return dev;
}

}  // namespace detail

/// Geodesics of an r-helix hypersurface are V_2-slant helices for every
/// d in H; along the way N = +-V_2.
inline TheoremReport check_thm_2_2(const Hypersurface& s, const SurfaceCurve& gamma, const HelixDirectionSpace& h,
                                   const CheckConfig& cfg = {}, const std::string& subject = "curve") {
  const std::string id = "thm_2_2";
  if (h.r() == 0) return TheoremReport::vacuous(id, subject, "H(M) is trivial (r = 0)");
  const Verdict geo = detail::require_geodesic(s, gamma, cfg);
  const Curve alpha = gamma.ambient();
  const Curve beta = gauss_map_curve(s, gamma);
  const auto ts = cfg.curve_plan.parameters(alpha.domain());
  const auto frames = detail::frames_along(alpha, cfg.curve_plan);
  if (detail::min_depth(frames) < 2)
    return TheoremReport::vacuous(id, subject, "straight geodesic: k1 = 0, V2 undefined");

  double alignment = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i)
    alignment = std::max(alignment, 1.0 - std::abs(beta.position(ts[i]).dot(frames[i].V(2))));
  double worst = alignment;
  TheoremReport r = TheoremReport::evaluated(id, subject, geo.residual, true, 0.0, cfg.tol);
  for (int j = 0; j < h.r(); ++j) {
    std::vector<double> vals;
    for (const auto& f : frames) vals.push_back(f.V(2).dot(h.direction(j)));
    double mean = 0.0;
    const double dev = detail::spread(vals, &mean);
    worst = std::max(worst, dev);
    r.diagnostic("cos_phi_" + std::to_string(j + 1), mean);
    if (std::abs(mean) <= cfg.tol) r.note("d" + std::to_string(j + 1) + " orthogonal to V2 (phi = pi/2)");
  }
  r.diagnostic("normal_alignment", alignment);
  TheoremReport out = TheoremReport::evaluated(id, subject, geo.residual, worst <= cfg.tol, worst, cfg.tol);
  for (const auto& [k, v] : r.diagnostics()) out.diagnostic(k, v);
  for (const auto& n : r.notes()) out.note(n);
  return out.with_samples(static_cast<int>(ts.size()));
}

/// The tangent indicatrix of a geodesic is a spherical general helix with
/// respect to every d in H.
inline TheoremReport check_thm_3_1(const Hypersurface& s, const SurfaceCurve& gamma, const HelixDirectionSpace& h,
                                   const CheckConfig& cfg = {}, const std::string& subject = "curve") {
  const std::string id = "thm_3_1";
  if (h.r() == 0) return TheoremReport::vacuous(id, subject, "H(M) is trivial (r = 0)");
  const Verdict geo = detail::require_geodesic(s, gamma, cfg);
  const Curve alpha = gamma.ambient();
  if (detail::min_depth(detail::frames_along(alpha, cfg.curve_plan)) < 2)
    return TheoremReport::vacuous(id, subject, "straight geodesic: tangent indicatrix is a point");
  const Curve beta = tangent_indicatrix(alpha);
  const auto ts = cfg.curve_plan.parameters(beta.domain());
  std::vector<Vec> tangents;
  for (double t : ts) {
    const Vec d1 = derivative_vector(beta.taylor(t, 1), 1);
    tangents.push_back(d1 / d1.norm());
  }
  const Verdict sph = is_spherical(beta, cfg.tol, cfg.curve_plan);
  double worst = sph.residual;
  std::map<std::string, double> diag{{"spherical_residual", sph.residual}};
  for (int j = 0; j < h.r(); ++j) {
    std::vector<double> vals;
    for (const auto& tb : tangents) vals.push_back(tb.dot(h.direction(j)));
    double mean = 0.0;
    worst = std::max(worst, detail::spread(vals, &mean));
    diag["cos_angle_" + std::to_string(j + 1)] = mean;
  }
  TheoremReport out = TheoremReport::evaluated(id, subject, geo.residual, worst <= cfg.tol, worst, cfg.tol);
  for (const auto& [k, v] : diag) out.diagnostic(k, v);
  return out.with_samples(static_cast<int>(ts.size()));
}

inline constexpr std::uint64_t kThm32Stream = 0x33322ULL;

/// Points of the Gauss image make a constant angle with every d in H(M),
/// re-checked on fresh samples.
inline TheoremReport check_thm_3_2(const Hypersurface& s, const HelixDirectionSpace& h, const CheckConfig& cfg = {}) {
  const std::string id = "thm_3_2";
  if (h.r() == 0) return TheoremReport::vacuous(id, "surface", "H(M) is trivial (r = 0)");
  const auto pts = cfg.surface_plan.fresh_points(s.box(), s.dim(), kThm32Stream);
  double worst = 0.0;
  for (const Vec& u : pts) {
    const Vec nrm = s.normal(u);
    for (int j = 0; j < h.r(); ++j)
      worst = std::max(worst, std::abs(nrm.dot(h.direction(j)) - h.constants[static_cast<std::size_t>(j)]));
  }
  TheoremReport out = TheoremReport::evaluated(id, "surface", h.verification_residual, worst <= cfg.tol, worst, cfg.tol);
  for (int j = 0; j < h.r(); ++j) out.diagnostic("c_" + std::to_string(j + 1), h.constants[static_cast<std::size_t>(j)]);
  return out.with_samples(static_cast<int>(pts.size()));
}

/// Geodesic curvature (on the sphere) of beta, after unit-speed
/// reparametrization; zero iff beta is a great-circle arc.
inline double spherical_geodesic_residual(const Curve& beta, const SamplePlan& plan) {
  double worst = 0.0;
  for (double t : plan.parameters(beta.domain())) {
    const Taylor tay = beta.taylor(t, 2);
    const Vec b = derivative_vector(tay, 0);
    const Vec d1 = derivative_vector(tay, 1);
    const Vec d2 = derivative_vector(tay, 2);
    const double v = d1.norm();
    if (v < kRegularityEps) throw NonRegular("Gauss image is stationary at t = " + std::to_string(t));
    const Vec tangent = d1 / v;
    Vec acc = (d2 - tangent * tangent.dot(d2)) / (v * v);
    acc -= b * b.dot(acc);
    worst = std::max(worst, acc.norm());
  }
  return worst;
}

/// If some d_j in H(M) is never tangent to M along the curve, the Gauss
/// image of the curve is not a geodesic of S^{n-1}.
inline TheoremReport check_thm_3_3(const Hypersurface& s, const SurfaceCurve& gamma, const HelixDirectionSpace& h,
                                   const CheckConfig& cfg = {}, const std::string& subject = "curve") {
  const std::string id = "thm_3_3";
  if (h.r() == 0) return TheoremReport::vacuous(id, subject, "H(M) is trivial (r = 0)");
  double cmax = 0.0;
  for (double c : h.constants) cmax = std::max(cmax, std::abs(c));
  const Curve beta = gauss_map_curve(s, gamma);
  const double geodesic_residual = spherical_geodesic_residual(beta, cfg.curve_plan);
  if (cmax <= cfg.separation) {
    TheoremReport r = TheoremReport::violated(id, subject, cmax, "every d_j in H(M) is tangent to M (c_j = 0)");
    r.diagnostic("spherical_geodesic_residual", geodesic_residual);
    return r.with_tolerance(cfg.tol);
  }
  // <beta'', d_j> = 0 from twice differentiating <beta, d_j> = const.
  double second = 0.0;
  const auto ts = cfg.curve_plan.parameters(beta.domain());
  for (double t : ts) {
    const Taylor tay = beta.taylor(t, 2);
    const double v = derivative_vector(tay, 1).norm();
    const Vec d2 = derivative_vector(tay, 2);
    for (int j = 0; j < h.r(); ++j) second = std::max(second, std::abs(d2.dot(h.direction(j))) / (v * v));
  }
  const bool holds = geodesic_residual > cfg.separation && second <= cfg.tol;
  TheoremReport out = TheoremReport::evaluated(id, subject, cmax, holds, second, cfg.tol);
  out.diagnostic("spherical_geodesic_residual", geodesic_residual);
  out.diagnostic("separation", cfg.separation);
  out.note("hypothesis read as: one basis direction with |c_j| above the separation threshold");
  return out.with_samples(static_cast<int>(ts.size()));
}

/// Every d in H(M) is orthogonal to beta' along the Gauss image of a curve.
inline TheoremReport check_thm_3_4(const Hypersurface& s, const SurfaceCurve& gamma, const HelixDirectionSpace& h,
                                   const CheckConfig& cfg = {}, const std::string& subject = "curve") {
  const std::string id = "thm_3_4";
  if (h.r() == 0) return TheoremReport::vacuous(id, subject, "H(M) is trivial (r = 0)");
  const Curve beta = gauss_map_curve(s, gamma);
  const auto ts = cfg.curve_plan.parameters(beta.domain());
  double worst = 0.0;
  for (double t : ts) {
    const Vec d1 = derivative_vector(beta.taylor(t, 1), 1);
    const double v = d1.norm();
    for (int j = 0; j < h.r(); ++j) {
      const double ip = std::abs(d1.dot(h.direction(j)));
      worst = std::max(worst, v < kRegularityEps ? ip : ip / v);
    }
  }
  return TheoremReport::evaluated(id, subject, h.verification_residual, worst <= cfg.tol, worst, cfg.tol)
      .with_samples(static_cast<int>(ts.size()));
}

/// For a geodesic, every d in H(M) is orthogonal to V_2'.
inline TheoremReport check_thm_3_5(const Hypersurface& s, const SurfaceCurve& gamma, const HelixDirectionSpace& h,
                                   const CheckConfig& cfg = {}, const std::string& subject = "curve") {
  const std::string id = "thm_3_5";
  if (h.r() == 0) return TheoremReport::vacuous(id, subject, "H(M) is trivial (r = 0)");
  const Verdict geo = detail::require_geodesic(s, gamma, cfg);
  const Curve alpha = gamma.ambient();
  const auto ts = cfg.curve_plan.parameters(alpha.domain());
  const auto frames = detail::frames_along(alpha, cfg.curve_plan);
  if (detail::min_depth(frames) < 2)
    return TheoremReport::vacuous(id, subject, "straight geodesic: k1 = 0, V2 undefined");
  const Interval dom = alpha.domain();
  double worst = 0.0;
  bool used_differences = false;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const FrenetData& f = frames[i];
    Vec dv2;  // dV2/ds
    if (f.valid_depth >= 3 || f.dim() == 3) {
      dv2 = -f.k(1) * f.V(1) + f.k(2) * f.V(3);
    } else {
      used_differences = true;
      const double step = 1e-4 * std::max(1.0, dom.width());
      const double lo = std::max(dom.lo, ts[i] - step);
      const double hi = std::min(dom.hi, ts[i] + step);
      dv2 = (frenet(alpha, hi).V(2) - frenet(alpha, lo).V(2)) / ((hi - lo) * f.speed);
    }
    for (int j = 0; j < h.r(); ++j) worst = std::max(worst, std::abs(dv2.dot(h.direction(j))));
  }
  TheoremReport out = TheoremReport::evaluated(id, subject, geo.residual, worst <= cfg.tol, worst, cfg.tol);
  if (used_differences) out.note("V2' from central differences of the frame (valid_depth < 3)");
  return out.with_samples(static_cast<int>(ts.size()));
}

namespace detail {

struct DecompositionHypothesis {
  bool satisfied = false;
  int direction = -1;
  double residual = 0.0;  // distance of d_j from span{V1, N}, best admissible j
  std::string reason;
};

/// Exists d_j in span{V1, N} along the curve with theta_j away from 0, pi/2, pi.
inline DecompositionHypothesis decomposition_hypothesis(const Hypersurface& s, const SurfaceCurve& gamma,
                                                        const HelixDirectionSpace& h, const CheckConfig& cfg) {
  DecompositionHypothesis out;
  out.residual = std::numeric_limits<double>::infinity();
  const Curve alpha = gamma.ambient();
  const Curve beta = gauss_map_curve(s, gamma);
  const auto ts = cfg.curve_plan.parameters(alpha.domain());
  std::vector<Vec> v1s, ns;
  for (double t : ts) {
    const Vec d1 = derivative_vector(alpha.taylor(t, 1), 1);
    if (d1.norm() < kRegularityEps) throw NonRegular("surface curve is not regular at t = " + std::to_string(t));
    v1s.push_back(d1 / d1.norm());
    ns.push_back(beta.position(t));
  }
  bool any_angle_ok = false;
  for (int j = 0; j < h.r(); ++j) {
    const double theta = h.angles[static_cast<std::size_t>(j)];
    const bool angle_ok = std::abs(theta) > cfg.angle_margin &&
                          std::abs(theta - std::numbers::pi / 2) > cfg.angle_margin &&
                          std::abs(theta - std::numbers::pi) > cfg.angle_margin;
    if (!angle_ok) continue;
    any_angle_ok = true;
    const Vec d = h.direction(j);
    double dist = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const Vec rest = d - v1s[i] * v1s[i].dot(d) - ns[i] * ns[i].dot(d);
      dist = std::max(dist, rest.norm());
    }
    if (dist < out.residual) {
      out.residual = dist;
      out.direction = j;
    }
  }
  if (!any_angle_ok) {
    out.reason = "every d_j has theta_j within the angular margin of 0, pi/2 or pi";
    out.residual = 0.0;
    return out;
  }
  out.satisfied = out.residual <= cfg.hypothesis_tol;
  if (!out.satisfied) out.reason = "no admissible d_j lies in span{V1, N} along the curve";
  return out;
}

}  // namespace detail

/// A curve along which some admissible d_j decomposes as
/// cos(theta_j) N + sin(theta_j) V1 is asymptotic.
inline TheoremReport check_thm_3_6(const Hypersurface& s, const SurfaceCurve& gamma, const HelixDirectionSpace& h,
                                   const CheckConfig& cfg = {}, const std::string& subject = "curve") {
  const std::string id = "thm_3_6";
  if (h.r() == 0) return TheoremReport::vacuous(id, subject, "H(M) is trivial (r = 0)");
  const auto hyp = detail::decomposition_hypothesis(s, gamma, h, cfg);
  if (!hyp.satisfied) return TheoremReport::violated(id, subject, hyp.residual, hyp.reason).with_tolerance(cfg.tol);
  const Verdict asym = is_asymptotic(s, gamma, cfg.tol, cfg.curve_plan);
  return TheoremReport::evaluated(id, subject, hyp.residual, asym.holds, asym.residual, cfg.tol)
      .diagnostic("direction", hyp.direction + 1)
      .with_samples(static_cast<int>(cfg.curve_plan.parameters(gamma.domain()).size()));
}

/// Geodesic + the decomposition hypothesis: the curve is a straight line.
inline TheoremReport check_cor_3_3(const Hypersurface& s, const SurfaceCurve& gamma, const HelixDirectionSpace& h,
                                   const CheckConfig& cfg = {}, const std::string& subject = "curve") {
  const std::string id = "cor_3_3";
  if (h.r() == 0) return TheoremReport::vacuous(id, subject, "H(M) is trivial (r = 0)");
  detail::require_geodesic(s, gamma, cfg);
  const auto hyp = detail::decomposition_hypothesis(s, gamma, h, cfg);
  if (!hyp.satisfied) return TheoremReport::violated(id, subject, hyp.residual, hyp.reason).with_tolerance(cfg.tol);
  const Verdict line = is_line(gamma.ambient(), cfg.tol, cfg.curve_plan);
  return TheoremReport::evaluated(id, subject, hyp.residual, line.holds, line.residual, cfg.tol)
      .with_samples(static_cast<int>(cfg.curve_plan.parameters(gamma.domain()).size()));
}

/// Line of curvature + the decomposition hypothesis: the curve is a line.
inline TheoremReport check_cor_3_4(const Hypersurface& s, const SurfaceCurve& gamma, const HelixDirectionSpace& h,
                                   const CheckConfig& cfg = {}, const std::string& subject = "curve") {
  const std::string id = "cor_3_4";
  if (h.r() == 0) return TheoremReport::vacuous(id, subject, "H(M) is trivial (r = 0)");
  const Verdict loc = is_line_of_curvature(s, gamma, cfg.tol, cfg.curve_plan);
  if (!loc.holds)
    throw PreconditionError("curve is not a line of curvature (residual " + std::to_string(loc.residual) + ")");
  const auto hyp = detail::decomposition_hypothesis(s, gamma, h, cfg);
  if (!hyp.satisfied) return TheoremReport::violated(id, subject, hyp.residual, hyp.reason).with_tolerance(cfg.tol);
  const Verdict line = is_line(gamma.ambient(), cfg.tol, cfg.curve_plan);
  return TheoremReport::evaluated(id, subject, hyp.residual, line.holds, line.residual, cfg.tol)
      .with_samples(static_cast<int>(cfg.curve_plan.parameters(gamma.domain()).size()));
}

// Overloads taking a geodesic trace directly.
inline TheoremReport check_thm_2_2(const Hypersurface& s, const GeodesicTrace& g, const HelixDirectionSpace& h,
                                   const CheckConfig& cfg = {}, const std::string& subject = "geodesic") {
  return check_thm_2_2(s, trace_to_surface_curve(g), h, cfg, subject);
}
inline TheoremReport check_thm_3_1(const Hypersurface& s, const GeodesicTrace& g, const HelixDirectionSpace& h,
                                   const CheckConfig& cfg = {}, const std::string& subject = "geodesic") {
  return check_thm_3_1(s, trace_to_surface_curve(g), h, cfg, subject);
}
inline TheoremReport check_thm_3_5(const Hypersurface& s, const GeodesicTrace& g, const HelixDirectionSpace& h,
                                   const CheckConfig& cfg = {}, const std::string& subject = "geodesic") {
  return check_thm_3_5(s, trace_to_surface_curve(g), h, cfg, subject);
}

/// A curve for the suite: either expressions in the parameter box or a
/// geodesic started from (u0, direction).
struct ParameterCurveSpec {
  std::vector<std::string> u;  // components of u(t)
  std::string variable = "t";
  Interval domain;
};

struct GeodesicSpec {
  Vec u0;
  Vec direction;             // ambient (v0) or parameter-space (w0) direction
  bool ambient_direction = true;
  double length = 1.0;
  double step = kDefaultGeodesicStep;
};

struct CurveSpec {
  std::string name;
  std::variant<ParameterCurveSpec, GeodesicSpec> shape;
};

inline GeodesicTrace integrate(const Hypersurface& s, const GeodesicSpec& g) {
  return g.ambient_direction ? integrate_geodesic(s, g.u0, g.direction, g.length, g.step)
                             : integrate_geodesic_from_parameters(s, g.u0, g.direction, g.length, g.step);
}

inline SurfaceCurve build_curve(const Hypersurface& s, const CurveSpec& spec) {
  if (const auto* p = std::get_if<ParameterCurveSpec>(&spec.shape)) {
    return SurfaceCurve::parse(s, p->u, p->variable, p->domain);
  }
  return trace_to_surface_curve(integrate(s, std::get<GeodesicSpec>(spec.shape)));
}

/// Canonical report order.
inline const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids = {"thm_2_2", "thm_3_1", "thm_3_2", "thm_3_3", "thm_3_4",
                                               "thm_3_5", "thm_3_6", "cor_3_3", "cor_3_4"};
  return ids;
}

struct SuiteResult {
  std::optional<HelixDirectionSpace> space;
  std::vector<TheoremReport> reports;
};

/// Computes H(M), builds every configured curve and runs every check on it.
/// Unmet preconditions are reported as not_applicable and numerical errors
/// as error; neither aborts the suite.
inline SuiteResult run_suite(const Hypersurface& s, const std::vector<CurveSpec>& curves, const CheckConfig& cfg = {}) {
  SuiteResult out;
  try {
    out.space = helix_directions(s, cfg.surface_plan, kNullSpaceTol);
  } catch (const Error& e) {
    out.reports.push_back(TheoremReport::failed_to_run("helix_space", "surface", e, false));
    return out;
  }
  const HelixDirectionSpace& h = *out.space;

  struct Built {
    std::string name;
    std::optional<SurfaceCurve> curve;
    std::optional<TheoremReport> failure;
  };
  std::vector<Built> built;
  for (const auto& spec : curves) {
    Built b{spec.name, std::nullopt, std::nullopt};
    try {
      b.curve = build_curve(s, spec);
    } catch (const Error& e) {
      b.failure = TheoremReport::failed_to_run("curve", spec.name, e, false);
    }
    built.push_back(std::move(b));
  }

  auto guarded = [&](const std::string& id, const std::string& subject, auto&& fn) {
    try {
      out.reports.push_back(fn());
    } catch (const PreconditionError& e) {
      out.reports.push_back(TheoremReport::failed_to_run(id, subject, e, true));
    } catch (const NonRegular& e) {
      out.reports.push_back(TheoremReport::failed_to_run(id, subject, e, true));
    } catch (const DegenerateFrame& e) {
      out.reports.push_back(TheoremReport::failed_to_run(id, subject, e, true));
    } catch (const Error& e) {
      out.reports.push_back(TheoremReport::failed_to_run(id, subject, e, false));
    }
  };

  for (const auto& id : theorem_ids()) {
    if (id == "thm_3_2") {
      guarded(id, "surface", [&] { return check_thm_3_2(s, h, cfg); });
      continue;
    }
    for (const auto& b : built) {
      if (!b.curve) {
        if (id == theorem_ids().front()) out.reports.push_back(*b.failure);
        continue;
      }
      const SurfaceCurve& c = *b.curve;
      guarded(id, b.name, [&] {
        if (id == "thm_2_2") return check_thm_2_2(s, c, h, cfg, b.name);
        if (id == "thm_3_1") return check_thm_3_1(s, c, h, cfg, b.name);
        if (id == "thm_3_3") return check_thm_3_3(s, c, h, cfg, b.name);
        if (id == "thm_3_4") return check_thm_3_4(s, c, h, cfg, b.name);
        if (id == "thm_3_5") return check_thm_3_5(s, c, h, cfg, b.name);
        if (id == "thm_3_6") return check_thm_3_6(s, c, h, cfg, b.name);
        if (id == "cor_3_3") return check_cor_3_3(s, c, h, cfg, b.name);
        return check_cor_3_4(s, c, h, cfg, b.name);
      });
    }
  }
  return out;
}

/// 1 if any check failed, otherwise 3 if any check hit a numerical error,
/// otherwise 0.
inline int suite_exit_code(const std::vector<TheoremReport>& reports) {
  bool error = false;
  for (const auto& r : reports) {
    const std::string st = r.status();
    if (st == "fail") return 1;
    if (st == "error") error = true;
  }
  return error ? 3 : 0;
}

}  // namespace helixgeom
