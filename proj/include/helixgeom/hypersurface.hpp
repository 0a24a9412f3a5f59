#pragma once

// Parametric hypersurface patches M(u_1, .., u_{n-1}) in E^n, the unit normal
// field and Gauss map, the shape operator, and classification of curves on
// the patch (geodesic / asymptotic / line of curvature).

#include "helixgeom/curve.hpp"
#include "helixgeom/errors.hpp"
#include "helixgeom/expr.hpp"
#include "helixgeom/jet.hpp"
#include "helixgeom/linalg.hpp"
#include "helixgeom/sampling.hpp"

#include <Eigen/Eigenvalues>

#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace helixgeom {

struct SurfacePoint {
  Vec u;
  Vec position;
  Mat tangents;  // n x (n-1), column j = dM/du_j
  Vec normal;
};

/// Position, first and second partials of the patch at one parameter point.
struct PatchDerivatives {
  Vec position;
  Mat first;                           // n x (n-1)
  std::vector<std::vector<Vec>> second;  // second[i][j] = d^2 M / du_i du_j
};

inline std::vector<std::string> default_parameter_names(int count) {
  std::vector<std::string> out;
  for (int i = 1; i <= count; ++i) out.push_back("u" + std::to_string(i));
  return out;
}

class Hypersurface {
 public:
  Hypersurface(std::vector<Expr> components, std::vector<Interval> box)
      : comps_(std::make_shared<const std::vector<Expr>>(std::move(components))), box_(std::move(box)) {
    const int n = dim();
    if (n < 3) throw std::invalid_argument("hypersurfaces need ambient dimension >= 3");
    if (static_cast<int>(box_.size()) != n - 1)
      throw std::invalid_argument("parameter box must have n-1 intervals");
    for (const auto& e : *comps_) {
      if (static_cast<int>(e.variables().size()) > n - 1)
        throw std::invalid_argument("surface component uses more than n-1 parameters");
    }
    linear_ = Mat::Identity(n, n);
    offset_ = Vec::Zero(n);
  }

  static Hypersurface parse(const std::vector<std::string>& components, std::vector<Interval> box) {
    const auto names = default_parameter_names(static_cast<int>(components.size()) - 1);
    std::vector<Expr> exprs;
    for (const auto& c : components) exprs.push_back(helixgeom::parse(c, names));
    return Hypersurface(std::move(exprs), std::move(box));
  }

  int dim() const noexcept { return static_cast<int>(comps_->size()); }
  int param_dim() const noexcept { return dim() - 1; }
  const std::vector<Interval>& box() const noexcept { return box_; }
  const std::vector<Expr>& components() const noexcept { return *comps_; }
  const Mat& linear_map() const noexcept { return linear_; }
  const Vec& offset() const noexcept { return offset_; }

  bool contains(const Vec& u) const {
    for (int i = 0; i < param_dim(); ++i)
      if (!box_[static_cast<std::size_t>(i)].contains(u[i])) return false;
    return true;
  }

  /// Image of the patch under x -> A x + b.
  Hypersurface transformed(const Mat& a, const Vec& b) const {
    Hypersurface out = *this;
    out.linear_ = a * linear_;
    out.offset_ = a * offset_ + b;
    out.moved_ = true;
    return out;
  }

  /// Components evaluated over any scalar type (double or jets).
  template <class S>
  std::vector<S> evaluate(std::span<const S> u) const {
    const int n = dim();
    std::vector<S> raw;
    raw.reserve(static_cast<std::size_t>(n));
    for (const auto& e : *comps_) raw.push_back(helixgeom::evaluate<S>(e, u));
    if (!moved_) return raw;
    std::vector<S> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      S acc = zero_like(raw[0]);
      add_scalar(acc, offset_[i]);
      for (int j = 0; j < n; ++j) {
        const double a = linear_(i, j);
        if (a != 0.0) acc += raw[static_cast<std::size_t>(j)] * a;
      }
      out.push_back(std::move(acc));
    }
    return out;
  }

  Vec position(const Vec& u) const {
    auto x = evaluate<double>(std::span<const double>(u.data(), static_cast<std::size_t>(u.size())));
    return Eigen::Map<Vec>(x.data(), static_cast<Eigen::Index>(x.size()));
  }

  /// Position plus first and second partials. Second partials use order-2
  /// jets seeded along e_i and e_i + e_j (polarization for mixed terms).
  PatchDerivatives patch_derivatives(const Vec& u, bool with_second = true) const {
    const int n = dim();
    const int m = param_dim();
    const int order = with_second ? 2 : 1;
    PatchDerivatives out;
    out.first.resize(n, m);
    std::vector<Vec> half_diag(static_cast<std::size_t>(m));
    auto seeded = [&](int i, int j) {
      std::vector<Jet<double>> seed;
      for (int k = 0; k < m; ++k) {
        Jet<double> x(order, u[k]);
        if (k == i || k == j) x[1] = 1.0;
        seed.push_back(x);
      }
      return evaluate<Jet<double>>(std::span<const Jet<double>>(seed.data(), seed.size()));
    };
    for (int j = 0; j < m; ++j) {
      const auto x = seeded(j, j);
      if (j == 0) {
        out.position.resize(n);
        for (int i = 0; i < n; ++i) out.position[i] = x[static_cast<std::size_t>(i)][0];
      }
      Vec hd(n);
      for (int i = 0; i < n; ++i) {
        out.first(i, j) = x[static_cast<std::size_t>(i)][1];
        if (with_second) hd[i] = x[static_cast<std::size_t>(i)][2];
      }
      half_diag[static_cast<std::size_t>(j)] = hd;
    }
    if (!with_second) return out;
    out.second.assign(static_cast<std::size_t>(m), std::vector<Vec>(static_cast<std::size_t>(m)));
    for (int i = 0; i < m; ++i) {
      out.second[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 2.0 * half_diag[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < m; ++j) {
        const auto x = seeded(i, j);
        Vec mixed(n);
        for (int k = 0; k < n; ++k)
          mixed[k] = x[static_cast<std::size_t>(k)][2] - half_diag[static_cast<std::size_t>(i)][k] -
                     half_diag[static_cast<std::size_t>(j)][k];
        out.second[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = mixed;
        out.second[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = mixed;
      }
    }
    return out;
  }

  Vec normal(const Vec& u) const;
  SurfacePoint point(const Vec& u) const;

 private:
  std::shared_ptr<const std::vector<Expr>> comps_;
  std::vector<Interval> box_;
  Mat linear_;
  Vec offset_;
  bool moved_ = false;
};

inline void require_immersion(const Mat& jac) {
  Eigen::JacobiSVD<Mat> svd(jac);
  const Vec& sv = svd.singularValues();
  if (sv[sv.size() - 1] < kRegularityEps)
    throw RankDeficient("Jacobian has rank < n-1 (smallest singular value " + std::to_string(sv[sv.size() - 1]) + ")");
}

/// n x (n-1) Jacobian; column j = dM/du_j.
inline Mat jacobian(const Hypersurface& s, const Vec& u) {
  Mat jac = s.patch_derivatives(u, false).first;
  require_immersion(jac);
  return jac;
}

/// Normalized generalized cross product of the Jacobian columns, so that
/// det[M_1 .. M_{n-1}, N] > 0.
inline Vec unit_normal_from_tangents(const Mat& jac) {
  Vec x = generalized_cross(jac);
  const double nrm = x.norm();
  if (nrm < kRegularityEps) throw RankDeficient("tangent vectors are dependent");
  return x / nrm;
}

inline Vec unit_normal(const Hypersurface& s, const Vec& u) { return unit_normal_from_tangents(jacobian(s, u)); }

inline Vec Hypersurface::normal(const Vec& u) const { return unit_normal(*this, u); }

inline SurfacePoint Hypersurface::point(const Vec& u) const {
  PatchDerivatives d = patch_derivatives(u, false);
  require_immersion(d.first);
  return SurfacePoint{u, d.position, d.first, unit_normal_from_tangents(d.first)};
}

/// Shape operator -dN in the tangent basis: g^{-1} h with
/// g_ij = <M_i, M_j> and h_ij = <M_ij, N>.
inline Mat shape_operator(const Hypersurface& s, const Vec& u) {
  const PatchDerivatives d = s.patch_derivatives(u);
  require_immersion(d.first);
  const Vec nrm = unit_normal_from_tangents(d.first);
  const int m = s.param_dim();
  const Mat g = d.first.transpose() * d.first;
  Mat h(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) h(i, j) = d.second[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].dot(nrm);
  return g.ldlt().solve(h);
}

/// Principal curvatures (ascending), eigenvalues of the shape operator.
inline std::vector<double> principal_curvatures(const Hypersurface& s, const Vec& u) {
  const PatchDerivatives d = s.patch_derivatives(u);
  require_immersion(d.first);
  const Vec nrm = unit_normal_from_tangents(d.first);
  const int m = s.param_dim();
  const Mat g = d.first.transpose() * d.first;
  Mat h(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) h(i, j) = d.second[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].dot(nrm);
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(h, g);
  const Vec& ev = es.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

/// A curve t -> u(t) in the parameter box together with its induced
/// ambient curve alpha(t) = M(u(t)).
class SurfaceCurve {
 public:
  SurfaceCurve(Hypersurface surface, Curve parameter_curve, bool check_domain = true)
      : surface_(std::move(surface)), param_(std::move(parameter_curve)) {
    if (param_.dim() != surface_.param_dim())
      throw std::invalid_argument("parameter curve dimension must be n-1");
    if (check_domain) {
      const Interval d = param_.domain();
      for (int i = 0; i <= 64; ++i) {
        const double t = d.lo + d.width() * i / 64.0;
        if (!surface_.contains(param_.position(t)))
          throw Error("OutOfDomain", "surface curve leaves the parameter box at t = " + std::to_string(t));
      }
    }
  }

  /// Parameter curve given as expressions in `var`.
  static SurfaceCurve parse(const Hypersurface& surface, const std::vector<std::string>& u_components,
                            const std::string& var, Interval domain) {
    return SurfaceCurve(surface, Curve::parse(u_components, var, domain));
  }

  const Hypersurface& surface() const noexcept { return surface_; }
  const Curve& parameter_curve() const noexcept { return param_; }
  Interval domain() const noexcept { return param_.domain(); }

  SurfaceCurve on_surface(Hypersurface other) const { return SurfaceCurve(std::move(other), param_, false); }

  /// alpha(t) = M(u(t)) with exact jet derivatives.
  Curve ambient() const {
    const Hypersurface s = surface_;
    const Curve p = param_;
    return Curve(s.dim(), p.domain(), [s, p](double t, int order) {
      const Taylor u = p.taylor(t, order);
      return s.evaluate<Jet<double>>(std::span<const Jet<double>>(u.data(), u.size()));
    });
  }

 private:
  Hypersurface surface_;
  Curve param_;
};

/// Gauss image beta(t) = N(u(t)) on S^{n-1}. Tangent vectors along the
/// curve are propagated with nested jets (outer order 1 per parameter
/// direction over the inner t-series), so derivatives of beta are exact.
inline Curve gauss_map_curve(const Hypersurface& s, const SurfaceCurve& gamma) {
  const Curve p = gamma.parameter_curve();
  return Curve(s.dim(), p.domain(), [s, p](double t, int order) {
    using J1 = Jet<double>;
    using J2 = Jet<J1>;
    const Taylor u = p.taylor(t, order);
    const int m = s.param_dim();
    const J1 one(order, 1.0);
    const J1 zero(order, 0.0);
    std::vector<std::vector<J1>> tangents;
    for (int j = 0; j < m; ++j) {
      std::vector<J2> seed;
      for (int k = 0; k < m; ++k) seed.push_back(J2{u[static_cast<std::size_t>(k)], k == j ? one : zero});
      const auto x = s.evaluate<J2>(std::span<const J2>(seed.data(), seed.size()));
      std::vector<J1> col;
      for (const auto& xi : x) col.push_back(xi[1]);
      tangents.push_back(std::move(col));
    }
    std::vector<J1> nrm = generalized_cross(tangents);
    const J1 len = jet_norm(nrm);
    if (len.value() < kRegularityEps) throw RankDeficient("tangent vectors are dependent along the curve");
    for (auto& x : nrm) x = x / len;
    return nrm;
  });
}

/// Tangential part of the unit-speed acceleration of alpha.
inline Verdict is_geodesic(const Hypersurface& s, const SurfaceCurve& gamma, double tol, const SamplePlan& plan = {}) {
  const Curve alpha = gamma.ambient();
  const Curve beta = gauss_map_curve(s, gamma);
  double worst = 0.0;
  for (double t : plan.parameters(gamma.domain())) {
    const Taylor tay = alpha.taylor(t, 2);
    const Vec d1 = derivative_vector(tay, 1);
    const Vec d2 = derivative_vector(tay, 2);
    const double v = d1.norm();
    if (v < kRegularityEps) throw NonRegular("surface curve is not regular at t = " + std::to_string(t));
    const Vec tangent = d1 / v;
    Vec acc = (d2 - tangent * tangent.dot(d2)) / (v * v);
    const Vec nrm = beta.position(t);
    acc -= nrm * nrm.dot(acc);
    worst = std::max(worst, acc.norm());
  }
  return {worst <= tol, worst};
}

/// |<dN/dt, alpha'>| / |alpha'|^2, the normal curvature along the curve.
inline Verdict is_asymptotic(const Hypersurface& s, const SurfaceCurve& gamma, double tol, const SamplePlan& plan = {}) {
  const Curve alpha = gamma.ambient();
  const Curve beta = gauss_map_curve(s, gamma);
  double worst = 0.0;
  for (double t : plan.parameters(gamma.domain())) {
    const Vec d1 = derivative_vector(alpha.taylor(t, 1), 1);
    const double v = d1.norm();
    if (v < kRegularityEps) throw NonRegular("surface curve is not regular at t = " + std::to_string(t));
    const Vec dn = derivative_vector(beta.taylor(t, 1), 1);
    worst = std::max(worst, std::abs(dn.dot(d1)) / (v * v));
  }
  return {worst <= tol, worst};
}

/// Rodrigues criterion: || dN/dt - mu alpha' || / |alpha'| with mu the
/// least-squares scalar.
inline Verdict is_line_of_curvature(const Hypersurface& s, const SurfaceCurve& gamma, double tol,
                                    const SamplePlan& plan = {}) {
  const Curve alpha = gamma.ambient();
  const Curve beta = gauss_map_curve(s, gamma);
  double worst = 0.0;
  for (double t : plan.parameters(gamma.domain())) {
    const Vec d1 = derivative_vector(alpha.taylor(t, 1), 1);
    const double v = d1.norm();
    if (v < kRegularityEps) throw NonRegular("surface curve is not regular at t = " + std::to_string(t));
    const Vec dn = derivative_vector(beta.taylor(t, 1), 1);
    const double mu = dn.dot(d1) / (v * v);
    worst = std::max(worst, (dn - mu * d1).norm() / v);
  }
  return {worst <= tol, worst};
}

/// CSV with header u1..u{n-1},x1..xn,N1..Nn.
inline void write_normals_csv(std::ostream& os, const Hypersurface& s, const std::vector<Vec>& params) {
  const int n = s.dim();
  for (int i = 1; i < n; ++i) os << (i > 1 ? "," : "") << 'u' << i;
  for (int i = 1; i <= n; ++i) os << ",x" << i;
  for (int i = 1; i <= n; ++i) os << ",N" << i;
  os << '\n';
  for (const Vec& u : params) {
    const SurfacePoint p = s.point(u);
    for (int i = 0; i < n - 1; ++i) os << (i > 0 ? "," : "") << detail::format_double(u[i]);
    for (int i = 0; i < n; ++i) os << ',' << detail::format_double(p.position[i]);
    for (int i = 0; i < n; ++i) os << ',' << detail::format_double(p.normal[i]);
    os << '\n';
  }
}

}  // namespace helixgeom
