#pragma once

// Parametric curves in E^n, their Frenet apparatus and derived curves.

#include "helixgeom/errors.hpp"
#include "helixgeom/expr.hpp"
#include "helixgeom/jet.hpp"
#include "helixgeom/linalg.hpp"
#include "helixgeom/sampling.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace helixgeom {

/// Regularity threshold on |alpha'|.
inline constexpr double kRegularityEps = 1e-8;
/// Relative Gram-Schmidt residual below which a Frenet stage is degenerate.
inline constexpr double kDegeneracyEps = 1e-7;
/// Default relative singular-value cutoff for constancy detection.
inline constexpr double kNullSpaceTol = 1e-6;

/// Taylor coefficients of every component at one parameter.
using Taylor = std::vector<Jet<double>>;

/// j-th derivative vector of a Taylor bundle.
inline Vec derivative_vector(const Taylor& tay, int j) {
  Vec v(static_cast<Eigen::Index>(tay.size()));
  for (std::size_t i = 0; i < tay.size(); ++i) v[static_cast<Eigen::Index>(i)] = tay[i].derivative(j);
  return v;
}

/// Euclidean norm of a vector of jets, as a jet.
template <class S>
S jet_norm(const std::vector<S>& v) {
  using std::sqrt;
  S acc = v[0] * v[0];
  for (std::size_t i = 1; i < v.size(); ++i) acc = acc + v[i] * v[i];
  return sqrt(acc);
}

/// A boolean classification together with the residual it was decided on.
struct Verdict {
  bool holds = false;
  double residual = 0.0;

  explicit operator bool() const noexcept { return holds; }
};

/// Immutable parametric curve. Any representation (expressions, a
/// reparametrization, an interpolated trace) is reduced to a sampler
/// returning Taylor coefficients of all components at a parameter.
class Curve {
 public:
  using Sampler = std::function<Taylor(double t, int order)>;

  Curve(int dim, Interval domain, Sampler sampler)
      : dim_(dim), domain_(domain), sampler_(std::make_shared<const Sampler>(std::move(sampler))) {
    if (dim_ < 2) throw std::invalid_argument("curve dimension must be >= 2");
    if (domain_.hi < domain_.lo) throw std::invalid_argument("curve domain is empty");
  }

  /// Curve whose components are expressions in a single variable.
  static Curve from_expressions(std::vector<Expr> components, Interval domain) {
    std::string var;
    for (const auto& e : components) {
      if (e.variables().size() > 1) throw std::invalid_argument("curve components take one parameter");
      if (!e.variables().empty()) {
        if (!var.empty() && var != e.variables()[0])
          throw std::invalid_argument("curve components must share one parameter");
        var = e.variables()[0];
      }
    }
    auto comps = std::make_shared<const std::vector<Expr>>(std::move(components));
    const int dim = static_cast<int>(comps->size());
    return Curve(dim, domain, [comps](double t, int order) {
      const Jet<double> seed = Jet<double>::variable(t, order);
      Taylor out;
      out.reserve(comps->size());
      for (const auto& e : *comps) out.push_back(evaluate<Jet<double>>(e, std::span<const Jet<double>>(&seed, 1)));
      return out;
    });
  }

  static Curve parse(const std::vector<std::string>& components, const std::string& var, Interval domain) {
    std::vector<Expr> exprs;
    exprs.reserve(components.size());
    for (const auto& c : components) exprs.push_back(helixgeom::parse(c, {var}));
    return from_expressions(std::move(exprs), domain);
  }

  int dim() const noexcept { return dim_; }
  Interval domain() const noexcept { return domain_; }

  Taylor taylor(double t, int order) const { return (*sampler_)(t, order); }

  Vec position(double t) const { return derivative_vector(taylor(t, 0), 0); }

  /// x -> A x + b applied to every point.
  Curve transformed(const Mat& a, const Vec& b) const {
    auto base = *this;
    const int out_dim = static_cast<int>(a.rows());
    return Curve(out_dim, domain_, [base, a, b](double t, int order) {
      const Taylor in = base.taylor(t, order);
      Taylor out;
      for (Eigen::Index i = 0; i < a.rows(); ++i) {
        Jet<double> acc(order, b[i]);
        for (Eigen::Index j = 0; j < a.cols(); ++j) acc += in[static_cast<std::size_t>(j)] * a(i, j);
        out.push_back(std::move(acc));
      }
      return out;
    });
  }

  Curve restricted(Interval domain) const {
    Curve c = *this;
    c.domain_ = domain;
    return c;
  }

 private:
  int dim_;
  Interval domain_;
  std::shared_ptr<const Sampler> sampler_;
};

/// alpha^(j)(t) for j = 0..order.
inline std::vector<Vec> derivatives(const Curve& c, double t, int order) {
  const Taylor tay = c.taylor(t, order);
  std::vector<Vec> out;
  for (int j = 0; j <= order; ++j) out.push_back(derivative_vector(tay, j));
  return out;
}

inline double speed(const Curve& c, double t) { return derivative_vector(c.taylor(t, 1), 1).norm(); }

/// Arc length over [a, b] by adaptive Gauss-Kronrod quadrature of |alpha'|.
inline double arc_length(const Curve& c, double a, double b) {
  if (a == b) return 0.0;
  auto integrand = [&c](double t) {
    const double v = speed(c, t);
    if (v < kRegularityEps) throw NonRegular("|alpha'| vanishes at t = " + std::to_string(t));
    return v;
  };
  double error = 0.0;
  const double len =
      boost::math::quadrature::gauss_kronrod<double, 15>::integrate(integrand, a, b, 15, 1e-13, &error);
  return len;
}

/// Unit-speed reparametrization sigma(s) = alpha(t(s)), s in [0, L].
///
/// t(s) is found by bracketed root finding on a precomputed cumulative arc
/// length table; the Taylor series of t(s) around that point is obtained by
/// Newton iteration on series (reversion of s(t) = int |alpha'|).
inline Curve unit_speed(const Curve& c) {
  struct Table {
    std::vector<double> t, s;
  };
  auto table = std::make_shared<Table>();
  const int segments = 64;
  const Interval dom = c.domain();
  table->t.push_back(dom.lo);
  table->s.push_back(0.0);
  for (int i = 1; i <= segments; ++i) {
    const double t = dom.lo + dom.width() * static_cast<double>(i) / segments;
    table->s.push_back(table->s.back() + arc_length(c, table->t.back(), t));
    table->t.push_back(t);
  }
  const double total = table->s.back();

  auto parameter_at = [c, table](double s) {
    const auto& S = table->s;
    const auto& T = table->t;
    if (s <= S.front()) return T.front();
    if (s >= S.back()) return T.back();
    const auto it = std::upper_bound(S.begin(), S.end(), s);
    const std::size_t i = static_cast<std::size_t>(it - S.begin()) - 1;
    auto f = [&](double t) { return S[i] + arc_length(c, T[i], t) - s; };
    std::uintmax_t iters = 100;
    auto r = boost::math::tools::toms748_solve(f, T[i], T[i + 1], S[i] - s, S[i + 1] - s,
                                               boost::math::tools::eps_tolerance<double>(52), iters);
    return 0.5 * (r.first + r.second);
  };

  return Curve(c.dim(), Interval{0.0, total}, [c, parameter_at](double s, int order) {
    const double t0 = parameter_at(s);
    const Taylor tay = c.taylor(t0, order + 1);
    // Speed series v(delta) of order `order`.
    std::vector<Jet<double>> vel;
    for (const auto& x : tay) vel.push_back(x.differentiated());
    const Jet<double> v = jet_norm(vel);
    if (v.value() < kRegularityEps) throw NonRegular("|alpha'| vanishes at t = " + std::to_string(t0));
    // s(t0 + delta) - s(t0) as a series, order + 1.
    Jet<double>::storage sc(static_cast<std::size_t>(order) + 2, 0.0);
    for (int j = 1; j <= order + 1; ++j)
      sc[static_cast<std::size_t>(j)] = v[static_cast<std::size_t>(j - 1)] / static_cast<double>(j);
    const Jet<double> arc(std::move(sc));
    const Jet<double> sigma = Jet<double>::variable(0.0, order);
    Jet<double> delta = sigma / v.value();
    for (int it = 0; it < order + 2; ++it) {
      const Jet<double> residual = compose(arc, delta) - sigma;
      delta = delta - residual / compose(v, delta);
    }
    Taylor out;
    for (const auto& x : tay) out.push_back(compose(x, delta));
    return out;
  });
}

/// Frenet apparatus at one parameter.
struct FrenetData {
  double t = 0.0;
  double speed = 0.0;
  std::vector<Vec> frame;          // V_1 .. V_n, always orthonormal
  std::vector<double> curvatures;  // k_1 .. k_{n-1}; zero beyond valid_depth
  int valid_depth = 0;             // frame determined by the curve through V_valid_depth

  int dim() const noexcept { return static_cast<int>(frame.size()); }

  const Vec& V(int i) const { return frame[static_cast<std::size_t>(i - 1)]; }
  double k(int i) const { return curvatures[static_cast<std::size_t>(i - 1)]; }

  void require_depth(int depth) const {
    if (valid_depth < depth)
      throw DegenerateFrame(valid_depth + 1, "Frenet frame only valid through V" + std::to_string(valid_depth) +
                                                 " at t = " + std::to_string(t));
  }
};

namespace detail {

inline Vec orthogonalize(Vec v, const std::vector<Vec>& basis) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& q : basis) v -= q * q.dot(v);
  return v;
}

/// Extends an orthonormal family to a positively oriented basis of R^n.
inline void complete_frame(std::vector<Vec>& frame, int n) {
  while (static_cast<int>(frame.size()) < n - 1) {
    Vec best;
    double best_norm = -1.0;
    for (int j = 0; j < n; ++j) {
      Vec e = Vec::Unit(n, j);
      Vec r = orthogonalize(e, frame);
      if (r.norm() > best_norm + 1e-12) {
        best_norm = r.norm();
        best = r;
      }
    }
    frame.push_back(best / best_norm);
  }
  Mat cols(n, n - 1);
  for (int j = 0; j < n - 1; ++j) cols.col(j) = frame[static_cast<std::size_t>(j)];
  Vec last = generalized_cross(cols);
  frame.push_back(last / last.norm());
}

}  // namespace detail

/// Frenet frame and curvatures at t.
///
/// V_1..V_{n-1} come from Gram-Schmidt on alpha', .., alpha^(n-1) and V_n
/// completes a positively oriented frame. With E_i the Gram-Schmidt
/// residuals, k_i = |E_{i+1}| / (|E_1| |E_i|); k_{n-1} carries the sign of
/// <alpha^(n), V_n>.
inline FrenetData frenet(const Curve& c, double t) {
  const int n = c.dim();
  const std::vector<Vec> d = derivatives(c, t, n);
  FrenetData out;
  out.t = t;
  out.speed = d[1].norm();
  if (out.speed < kRegularityEps) throw NonRegular("|alpha'| vanishes at t = " + std::to_string(t));

  std::vector<double> residual_norm(static_cast<std::size_t>(n) + 1, 0.0);
  residual_norm[1] = out.speed;
  out.frame.push_back(d[1] / out.speed);
  out.valid_depth = n;
  double scale = out.speed;
  double last_signed = 0.0;
  for (int m = 2; m <= n; ++m) {
    scale = std::max(scale, d[static_cast<std::size_t>(m)].norm());
    if (m < n) {
      const Vec e = detail::orthogonalize(d[static_cast<std::size_t>(m)], out.frame);
      const double en = e.norm();
      if (en <= kDegeneracyEps * scale) {
        out.valid_depth = m - 1;
        break;
      }
      residual_norm[static_cast<std::size_t>(m)] = en;
      out.frame.push_back(e / en);
    } else {
      detail::complete_frame(out.frame, n);
      last_signed = d[static_cast<std::size_t>(n)].dot(out.frame.back());
      if (std::abs(last_signed) <= kDegeneracyEps * scale) out.valid_depth = n - 1;
      residual_norm[static_cast<std::size_t>(n)] = std::abs(last_signed);
    }
  }
  if (static_cast<int>(out.frame.size()) < n) detail::complete_frame(out.frame, n);

  out.curvatures.assign(static_cast<std::size_t>(n) - 1, 0.0);
  for (int i = 1; i <= n - 1; ++i) {
    if (i + 1 > out.valid_depth) break;
    const double denom = residual_norm[1] * residual_norm[static_cast<std::size_t>(i)];
    double k = residual_norm[static_cast<std::size_t>(i) + 1] / denom;
    if (i == n - 1) k = last_signed / denom;
    out.curvatures[static_cast<std::size_t>(i) - 1] = k;
  }
  return out;
}

/// Directions X with <V_level, X> constant along the curve.
struct SlantHelixSpace {
  int level = 1;
  Mat basis;                       // n x r, canonical orthonormal columns
  std::vector<double> cos_phi;     // mean <V_level, X_j>
  std::vector<double> residuals;   // max deviation from the mean
  std::vector<bool> orthogonal;    // cos(phi) == 0 within tolerance
  std::vector<double> spectrum;
  double tolerance = kNullSpaceTol;

  int dim() const noexcept { return static_cast<int>(basis.cols()); }
};

namespace detail {

/// Shared constancy analysis: the null space of the rows x_i - x_0 and
/// per-direction means/residuals.
struct ConstancyResult {
  Mat basis;
  std::vector<double> means, residuals, spectrum;
};

inline ConstancyResult constant_directions(const std::vector<Vec>& samples, double tol) {
  const Eigen::Index n = samples.front().size();
  Mat rows(static_cast<Eigen::Index>(samples.size()) - 1, n);
  for (std::size_t i = 1; i < samples.size(); ++i)
    rows.row(static_cast<Eigen::Index>(i) - 1) = (samples[i] - samples[0]).transpose();
  NullSpace ns = null_space(rows, tol, tol);
  ConstancyResult out;
  out.basis = canonical_basis(ns.basis);
  out.spectrum = ns.spectrum;
  for (Eigen::Index j = 0; j < out.basis.cols(); ++j) {
    double mean = 0.0;
    for (const auto& x : samples) mean += x.dot(out.basis.col(j));
    mean /= static_cast<double>(samples.size());
    double dev = 0.0;
    for (const auto& x : samples) dev = std::max(dev, std::abs(x.dot(out.basis.col(j)) - mean));
    out.means.push_back(mean);
    out.residuals.push_back(dev);
  }
  return out;
}

}  // namespace detail

inline SlantHelixSpace slant_helix_space(const Curve& c, int level, const SamplePlan& plan = {},
                                         double tol = kNullSpaceTol) {
  if (level < 1 || level > c.dim()) throw std::invalid_argument("slant helix level out of range");
  std::vector<Vec> samples;
  for (double t : plan.parameters(c.domain())) {
    const FrenetData f = frenet(c, t);
    f.require_depth(level);
    samples.push_back(f.V(level));
  }
  auto res = detail::constant_directions(samples, tol);
  SlantHelixSpace out;
  out.level = level;
  out.basis = res.basis;
  out.cos_phi = res.means;
  out.residuals = res.residuals;
  out.spectrum = res.spectrum;
  out.tolerance = tol;
  for (double m : out.cos_phi) out.orthogonal.push_back(std::abs(m) <= tol);
  return out;
}

/// beta = alpha' / |alpha'| on S^{n-1}.
inline Curve tangent_indicatrix(const Curve& c) {
  return Curve(c.dim(), c.domain(), [c](double t, int order) {
    const Taylor tay = c.taylor(t, order + 1);
    std::vector<Jet<double>> vel;
    for (const auto& x : tay) vel.push_back(x.differentiated());
    const Jet<double> v = jet_norm(vel);
    if (v.value() < kRegularityEps) throw NonRegular("|alpha'| vanishes at t = " + std::to_string(t));
    for (auto& x : vel) x = x / v;
    return vel;
  });
}

inline Verdict is_spherical(const Curve& c, double tol, const SamplePlan& plan = {}) {
  double dev = 0.0;
  for (double t : plan.parameters(c.domain())) dev = std::max(dev, std::abs(c.position(t).norm() - 1.0));
  return {dev <= tol, dev};
}

/// max k_1 over the samples; a degenerate first stage counts as k_1 = 0.
inline Verdict is_line(const Curve& c, double tol, const SamplePlan& plan = {}) {
  double kmax = 0.0;
  for (double t : plan.parameters(c.domain())) {
    const FrenetData f = frenet(c, t);
    if (f.valid_depth >= 2) kmax = std::max(kmax, std::abs(f.k(1)));
  }
  return {kmax <= tol, kmax};
}

/// CSV with header t,x1..xn,k1..k{n-1}.
inline void write_frenet_csv(std::ostream& os, const Curve& c, const std::vector<double>& ts) {
  const int n = c.dim();
  os << "t";
  for (int i = 1; i <= n; ++i) os << ",x" << i;
  for (int i = 1; i < n; ++i) os << ",k" << i;
  os << '\n';
  for (double t : ts) {
    const FrenetData f = frenet(c, t);
    const Vec x = c.position(t);
    os << detail::format_double(t);
    for (int i = 0; i < n; ++i) os << ',' << detail::format_double(x[i]);
    for (double k : f.curvatures) os << ',' << detail::format_double(k);
    os << '\n';
  }
}

}  // namespace helixgeom
