#pragma once

// The space H(M) of helix directions of a hypersurface patch: directions d
// for which <N, d> is constant over the patch.

#include "helixgeom/curve.hpp"
#include "helixgeom/errors.hpp"
#include "helixgeom/hypersurface.hpp"
#include "helixgeom/linalg.hpp"
#include "helixgeom/sampling.hpp"

#include <cmath>
#include <concepts>
#include <cstdint>
#include <string>
#include <vector>

namespace helixgeom {

/// Anything with a unit normal field over a parameter box.
template <class F>
concept NormalField = requires(const F& f, const Vec& u) {
  { f.dim() } -> std::convertible_to<int>;
  { f.box() } -> std::convertible_to<std::vector<Interval>>;
  { f.normal(u) } -> std::convertible_to<Vec>;
};

/// Sampling of the parameter box: a Halton grid (default 8(n+1) points,
/// i.e. 8x the minimum n+1) plus seeded random points.
struct SurfaceSamplePlan {
  int grid = 0;  // 0 selects 8 (n + 1)
  int random = 16;
  std::uint64_t seed = 42;

  int grid_count(int n) const { return grid > 0 ? grid : 8 * (n + 1); }

  std::vector<Vec> points(const std::vector<Interval>& box, int n) const {
    std::vector<Vec> out;
    auto to_vec = [](const std::vector<double>& p) {
      return Vec(Eigen::Map<const Vec>(p.data(), static_cast<Eigen::Index>(p.size())));
    };
    for (const auto& p : halton_points(box, grid_count(n))) out.push_back(to_vec(p));
    for (const auto& p : random_points(box, random, seed)) out.push_back(to_vec(p));
    return out;
  }

  /// Independent random sample set of the same size (no grid points).
  std::vector<Vec> fresh_points(const std::vector<Interval>& box, int n, std::uint64_t stream) const {
    std::vector<Vec> out;
    const int count = grid_count(n) + random;
    for (const auto& p : random_points(box, count, derive_seed(seed, stream)))
      out.push_back(Eigen::Map<const Vec>(p.data(), static_cast<Eigen::Index>(p.size())));
    return out;
  }
};

struct HelixDirectionSpace {
  int ambient_dim = 0;
  Mat basis;                      // n x r, canonical orthonormal columns
  std::vector<double> constants;  // c_j = <N, d_j> (signed)
  std::vector<double> angles;     // theta_j = acos(c_j), measured against N
  std::vector<double> residuals;  // max_i |<N(u_i), d_j> - c_j|
  std::vector<double> spectrum;   // singular values behind the rank decision
  double tolerance = kNullSpaceTol;
  std::uint64_t seed = 0;
  int samples = 0;
  double verification_residual = 0.0;

  int r() const noexcept { return static_cast<int>(basis.cols()); }
  Vec direction(int j) const { return basis.col(j); }
};

inline constexpr std::uint64_t kVerificationStream = 0x5645524946ULL;

/// Numerical H(M): null space of the rows N(u_i) - N(u_1), re-checked on an
/// independent random sample set (VerificationFailed beyond 10 * tol).
template <NormalField F>
HelixDirectionSpace helix_directions(const F& field, const SurfaceSamplePlan& plan = {},
                                     double tol = kNullSpaceTol) {
  const int n = field.dim();
  const std::vector<Interval> box = field.box();
  const std::vector<Vec> pts = plan.points(box, n);
  if (static_cast<int>(pts.size()) < n + 1)
    throw std::invalid_argument("helix_directions needs at least n+1 samples");
  std::vector<Vec> normals;
  normals.reserve(pts.size());
  for (const Vec& u : pts) normals.push_back(field.normal(u));

  const auto res = detail::constant_directions(normals, tol);
  HelixDirectionSpace out;
  out.ambient_dim = n;
  out.basis = res.basis;
  out.constants = res.means;
  out.residuals = res.residuals;
  out.spectrum = res.spectrum;
  out.tolerance = tol;
  out.seed = plan.seed;
  out.samples = static_cast<int>(pts.size());
  for (double c : out.constants) out.angles.push_back(std::acos(std::clamp(c, -1.0, 1.0)));

  double worst = 0.0;
  for (const Vec& u : plan.fresh_points(box, n, kVerificationStream)) {
    const Vec nrm = field.normal(u);
    for (int j = 0; j < out.r(); ++j)
      worst = std::max(worst, std::abs(nrm.dot(out.basis.col(j)) - out.constants[static_cast<std::size_t>(j)]));
  }
  out.verification_residual = worst;
  if (worst > 10.0 * tol)
    throw VerificationFailed("helix directions failed independent re-verification (residual " +
                                 std::to_string(worst) + "); the patch is likely under-sampled",
                             worst);
  return out;
}

struct StrongHelixClassification {
  bool is_helix = false;
  int r = 0;
  HelixDirectionSpace space;
};

/// A patch with r = 0 is not reported as a helix.
template <NormalField F>
StrongHelixClassification classify_strong_r_helix(const F& field, double tol = kNullSpaceTol,
                                                  const SurfaceSamplePlan& plan = {}) {
  StrongHelixClassification out;
  out.space = helix_directions(field, plan, tol);
  out.r = out.space.r();
  out.is_helix = out.r >= 1;
  return out;
}

struct HelixAngle {
  bool is_constant = false;
  double theta = 0.0;      // angle between d and N
  double cos_theta = 0.0;  // mean <N, d>
  double residual = 0.0;
  bool degenerate_sampling = false;  // every sample is the same point
};

/// Whether <N, d> is constant over the patch. The angle between d and the
/// tangent space is pi/2 - theta.
template <NormalField F>
HelixAngle helix_angle(const F& field, const Vec& d, double tol = kNullSpaceTol, const SurfaceSamplePlan& plan = {}) {
  if (std::abs(d.norm() - 1.0) > 1e-9) throw std::invalid_argument("helix_angle needs a unit direction");
  const std::vector<Interval> box = field.box();
  HelixAngle out;
  out.degenerate_sampling = true;
  for (const auto& iv : box)
    if (iv.width() > 0) out.degenerate_sampling = false;
  std::vector<double> values;
  for (const Vec& u : plan.points(box, field.dim())) values.push_back(field.normal(u).dot(d));
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  for (double v : values) out.residual = std::max(out.residual, std::abs(v - mean));
  out.cos_theta = mean;
  out.theta = std::acos(std::clamp(mean, -1.0, 1.0));
  out.is_constant = out.residual <= tol;
  return out;
}

}  // namespace helixgeom
