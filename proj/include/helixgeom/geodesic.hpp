#pragma once

// Unit-speed geodesics of a hypersurface patch, integrated in parameter
// space: u'' = -Gamma(u)(u', u'), with Gamma^k_ij = g^{kl} <M_ij, M_l>.

#include "helixgeom/curve.hpp"
#include "helixgeom/errors.hpp"
#include "helixgeom/hypersurface.hpp"
#include "helixgeom/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <utility>
#include <vector>

namespace helixgeom {

/// Per-step speed drift above which a step is rejected.
inline constexpr double kMaxStepDrift = 1e-6;
inline constexpr double kDefaultGeodesicStep = 1e-3;

struct GeodesicSample {
  double s = 0.0;
  Vec u;             // parameters
  Vec du;            // parameter velocity
  Vec ddu;           // parameter acceleration from the geodesic equation
  Vec position;
  Vec velocity;      // ambient, unit length
};

struct GeodesicTrace {
  Hypersurface surface;
  std::vector<GeodesicSample> samples;
  double step = kDefaultGeodesicStep;
  double max_speed_drift = 0.0;
  double max_tangential_residual = 0.0;
  double max_margin_violation = 0.0;
  bool domain_exit = false;

  double length() const { return samples.empty() ? 0.0 : samples.back().s; }
};

namespace detail {

struct GeodesicRhs {
  Vec du;
  Vec ddu;
};

/// Parameter acceleration -g^{-1} J^T (sum_ij M_ij w_i w_j) and, optionally,
/// the tangential residual of the resulting ambient acceleration.
inline Vec geodesic_acceleration(const PatchDerivatives& d, const Vec& w, double* tangential_residual = nullptr) {
  const Eigen::Index n = d.first.rows();
  const Eigen::Index m = d.first.cols();
  Vec quad = Vec::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      quad += d.second[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * (w[i] * w[j]);
  const Mat g = d.first.transpose() * d.first;
  const Vec acc = -g.ldlt().solve(d.first.transpose() * quad);
  if (tangential_residual != nullptr) {
    const Vec ambient = d.first * acc + quad;
    const Vec nrm = unit_normal_from_tangents(d.first);
    *tangential_residual = (ambient - nrm * nrm.dot(ambient)).norm();
  }
  return acc;
}

inline GeodesicSample sample_from(const PatchDerivatives& d, double arc, const Vec& u, const Vec& w,
                                  double* tangential_residual) {
  require_immersion(d.first);
  GeodesicSample out;
  out.s = arc;
  out.u = u;
  out.du = w;
  out.ddu = geodesic_acceleration(d, w, tangential_residual);
  out.position = d.position;
  out.velocity = d.first * w;
  return out;
}

inline double box_violation(const Hypersurface& s, const Vec& u) {
  double worst = 0.0;
  for (int i = 0; i < s.param_dim(); ++i) {
    const Interval iv = s.box()[static_cast<std::size_t>(i)];
    worst = std::max({worst, iv.lo - u[i], u[i] - iv.hi});
  }
  return worst;
}

}  // namespace detail

/// Classical RK4 on (u, u'); after every step the velocity is renormalized
/// to unit ambient speed. v0 is an ambient unit tangent vector at M(u0).
inline GeodesicTrace integrate_geodesic(const Hypersurface& s, const Vec& u0, const Vec& v0, double length,
                                        double step = kDefaultGeodesicStep) {
  if (!(length > 0)) throw std::invalid_argument("geodesic length must be positive");
  if (!(step > 0)) throw std::invalid_argument("geodesic step must be positive");
  if (!s.contains(u0)) throw std::invalid_argument("geodesic start lies outside the parameter box");
  if (std::abs(v0.norm() - 1.0) > 1e-8) throw std::invalid_argument("initial velocity must have unit length");

  const Mat jac = jacobian(s, u0);
  const Vec w0 = jac.colPivHouseholderQr().solve(v0);
  if ((jac * w0 - v0).norm() > 1e-8) throw std::invalid_argument("initial velocity is not tangent to the surface");

  GeodesicTrace trace{s, {}, step};
  double tres = 0.0;
  PatchDerivatives here = s.patch_derivatives(u0);
  trace.samples.push_back(detail::sample_from(here, 0.0, u0, w0, &tres));
  trace.max_tangential_residual = tres;

  auto rhs = [&s](const Vec& u, const Vec& w) {
    return detail::GeodesicRhs{w, detail::geodesic_acceleration(s.patch_derivatives(u), w)};
  };

  // Uniform steps dividing the length exactly, at most the requested step.
  const auto steps = static_cast<long long>(std::ceil(length / step - 1e-9));
  const double h = length / static_cast<double>(steps);
  trace.step = h;
  Vec u = u0;
  Vec w = w0;
  double arc = 0.0;
  for (long long k = 1; k <= steps; ++k) {
    const detail::GeodesicRhs k1{w, detail::geodesic_acceleration(here, w)};
    const auto k2 = rhs(u + 0.5 * h * k1.du, w + 0.5 * h * k1.ddu);
    const auto k3 = rhs(u + 0.5 * h * k2.du, w + 0.5 * h * k2.ddu);
    const auto k4 = rhs(u + h * k3.du, w + h * k3.ddu);
    Vec u_next = u + (h / 6.0) * (k1.du + 2.0 * k2.du + 2.0 * k3.du + k4.du);
    Vec w_next = w + (h / 6.0) * (k1.ddu + 2.0 * k2.ddu + 2.0 * k3.ddu + k4.ddu);

    const double outside = detail::box_violation(s, u_next);
    if (outside > 0.0) {
      trace.domain_exit = true;
      trace.max_margin_violation = std::max(trace.max_margin_violation, outside);
      break;
    }
    PatchDerivatives next = s.patch_derivatives(u_next);
    require_immersion(next.first);
    const double speed = (next.first * w_next).norm();
    const double drift = std::abs(speed - 1.0);
    if (drift > kMaxStepDrift)
      throw StepTooLarge("speed drift " + std::to_string(drift) + " in one step at s = " + std::to_string(arc), drift);
    trace.max_speed_drift = std::max(trace.max_speed_drift, drift);
    w_next /= speed;
    arc = k == steps ? length : h * static_cast<double>(k);
    u = std::move(u_next);
    w = std::move(w_next);
    here = std::move(next);
    trace.samples.push_back(detail::sample_from(here, arc, u, w, &tres));
    trace.max_tangential_residual = std::max(trace.max_tangential_residual, tres);
  }
  return trace;
}

/// Same, with the initial direction given in parameter space (scaled to unit
/// ambient speed). Parameter directions are unaffected by rigid motions.
inline GeodesicTrace integrate_geodesic_from_parameters(const Hypersurface& s, const Vec& u0, const Vec& w0,
                                                        double length, double step = kDefaultGeodesicStep) {
  const Vec v = jacobian(s, u0) * w0;
  if (v.norm() < kRegularityEps) throw std::invalid_argument("initial parameter direction is zero");
  return integrate_geodesic(s, u0, v / v.norm(), length, step);
}

/// Taylor coefficients (in arc length) of the geodesic through (u, w) up to
/// the given order, from J(s)^T alpha''(s) = 0 solved order by order.
inline Taylor geodesic_jet(const Hypersurface& s, const Vec& u, const Vec& w, int order) {
  const int m = s.param_dim();
  const int n = s.dim();
  using J2 = Jet<Jet<double>>;
  std::vector<Jet<double>> c;
  for (int i = 0; i < m; ++i) {
    Jet<double> x(order, u[i]);
    if (order >= 1) x[1] = w[i];
    c.push_back(std::move(x));
  }
  const Mat j0 = jacobian(s, u);
  const auto g0 = (j0.transpose() * j0).ldlt();
  for (int k = 0; k + 2 <= order; ++k) {
    const auto alpha = s.evaluate<Jet<double>>(std::span<const Jet<double>>(c.data(), c.size()));
    std::vector<std::vector<Jet<double>>> cols;  // d alpha / du_j along the curve
    if (k >= 1) {
      const Jet<double> zero = zero_like(c[0]);
      const Jet<double> one = one_like(c[0]);
      for (int j = 0; j < m; ++j) {
        std::vector<J2> seed;
        for (int i = 0; i < m; ++i) seed.push_back(J2{c[static_cast<std::size_t>(i)], i == j ? one : zero});
        const auto x = s.evaluate<J2>(std::span<const J2>(seed.data(), seed.size()));
        std::vector<Jet<double>> col;
        for (const auto& xi : x) col.push_back(xi[1]);
        cols.push_back(std::move(col));
      }
    }
    Vec rhs = Vec::Zero(m);
    Vec r(n);
    for (int i = 0; i < n; ++i) r[i] = alpha[static_cast<std::size_t>(i)][k + 2];
    rhs -= j0.transpose() * r;
    const double scale = static_cast<double>((k + 1) * (k + 2));
    for (int i = 1; i <= k; ++i) {
      const int q = k - i;  // coefficient of alpha''
      const double f = static_cast<double>((q + 1) * (q + 2)) / scale;
      for (int j = 0; j < m; ++j) {
        double acc = 0.0;
        for (int l = 0; l < n; ++l)
          acc += cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)][i] * alpha[static_cast<std::size_t>(l)][q + 2];
        rhs[j] -= f * acc;
      }
    }
    const Vec next = g0.solve(rhs);
    for (int i = 0; i < m; ++i) c[static_cast<std::size_t>(i)][k + 2] = next[i];
  }
  return c;
}

/// The trace as a surface curve. A query at arc length s takes one RK4 step
/// from the nearest sample to s and returns the exact Taylor jet of the
/// geodesic through that state, so derivatives of every order are
/// consistent with the geodesic equation rather than with an interpolant.
inline SurfaceCurve trace_to_surface_curve(const GeodesicTrace& g) {
  if (g.samples.size() < 2) throw std::invalid_argument("geodesic trace needs at least two samples");
  auto samples = std::make_shared<const std::vector<GeodesicSample>>(g.samples);
  const Hypersurface surface = g.surface;
  const int m = surface.param_dim();
  const Interval dom{samples->front().s, samples->back().s};
  // Checks query the same (s, order) pairs repeatedly; results are pure.
  struct Memo {
    std::mutex mutex;
    std::map<std::pair<double, int>, Taylor> values;
  };
  auto memo = std::make_shared<Memo>();
  Curve param(m, dom, [samples, surface, memo](double s, int order) {
    {
      const std::lock_guard<std::mutex> lock(memo->mutex);
      if (auto it = memo->values.find({s, order}); it != memo->values.end()) return it->second;
    }
    const auto& sm = *samples;
    auto it = std::lower_bound(sm.begin(), sm.end(), s, [](const GeodesicSample& x, double v) { return x.s < v; });
    std::size_t i = static_cast<std::size_t>(it - sm.begin());
    if (i == sm.size()) i = sm.size() - 1;
    if (i > 0 && std::abs(sm[i - 1].s - s) < std::abs(sm[i].s - s)) --i;
    const GeodesicSample& a = sm[i];
    const double h = s - a.s;
    Vec u = a.u;
    Vec w = a.du;
    if (h != 0.0) {
      auto rhs = [&surface](const Vec& uu, const Vec& ww) {
        return detail::GeodesicRhs{ww, detail::geodesic_acceleration(surface.patch_derivatives(uu), ww)};
      };
      const auto k1 = rhs(u, w);
      const auto k2 = rhs(u + 0.5 * h * k1.du, w + 0.5 * h * k1.ddu);
      const auto k3 = rhs(u + 0.5 * h * k2.du, w + 0.5 * h * k2.ddu);
      const auto k4 = rhs(u + h * k3.du, w + h * k3.ddu);
      u += (h / 6.0) * (k1.du + 2.0 * k2.du + 2.0 * k3.du + k4.du);
      w += (h / 6.0) * (k1.ddu + 2.0 * k2.ddu + 2.0 * k3.ddu + k4.ddu);
    }
    Taylor out = geodesic_jet(surface, u, w, order);
    const std::lock_guard<std::mutex> lock(memo->mutex);
    if (memo->values.size() >= 8192) memo->values.clear();
    memo->values.emplace(std::make_pair(s, order), out);
    return out;
  });
  return SurfaceCurve(g.surface, std::move(param), false);
}

/// CSV with header s,u1..u{n-1},x1..xn,v1..vn.
inline void write_trace_csv(std::ostream& os, const GeodesicTrace& g) {
  const int n = g.surface.dim();
  os << 's';
  for (int i = 1; i < n; ++i) os << ",u" << i;
  for (int i = 1; i <= n; ++i) os << ",x" << i;
  for (int i = 1; i <= n; ++i) os << ",v" << i;
  os << '\n';
  for (const auto& smp : g.samples) {
    os << detail::format_double(smp.s);
    for (int i = 0; i < n - 1; ++i) os << ',' << detail::format_double(smp.u[i]);
    for (int i = 0; i < n; ++i) os << ',' << detail::format_double(smp.position[i]);
    for (int i = 0; i < n; ++i) os << ',' << detail::format_double(smp.velocity[i]);
    os << '\n';
  }
}

}  // namespace helixgeom
