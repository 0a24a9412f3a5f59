#pragma once

// Finite-difference oracles for Frenet data, independent of the jet code.

#include "helixgeom/curve.hpp"
#include "helixgeom/linalg.hpp"

#include <algorithm>
#include <vector>

namespace helixgeom::testing {

// |V_i' / |alpha'| - (-k_{i-1} V_{i-1} + k_i V_{i+1})| by central differences.
inline double frenet_ode_residual(const Curve& c, double t, double h) {
  const FrenetData f = frenet(c, t);
  const FrenetData fp = frenet(c, t + h);
  const FrenetData fm = frenet(c, t - h);
  const int n = c.dim();
  double worst = 0.0;
  for (int i = 1; i <= n; ++i) {
    const Vec dv = (fp.V(i) - fm.V(i)) / (2 * h * f.speed);
    Vec model = Vec::Zero(n);
    if (i > 1) model -= f.k(i - 1) * f.V(i - 1);
    if (i < n) model += f.k(i) * f.V(i + 1);
    worst = std::max(worst, (dv - model).norm());
  }
  return worst;
}

// Curvatures from finite-difference derivatives of the position only.
inline std::vector<double> fd_curvatures(const Curve& c, double t, double h) {
  const int n = c.dim();
  // Central-difference stencils for derivatives 1..n from samples at t + j h.
  std::vector<Vec> x;
  for (int j = -3; j <= 3; ++j) x.push_back(c.position(t + j * h));
  auto at = [&](int j) { return x[static_cast<std::size_t>(j + 3)]; };
  std::vector<Vec> d(5);
  d[1] = (-at(2) + 8 * at(1) - 8 * at(-1) + at(-2)) / (12 * h);
  d[2] = (-at(2) + 16 * at(1) - 30 * at(0) + 16 * at(-1) - at(-2)) / (12 * h * h);
  d[3] = (-at(3) + 8 * at(2) - 13 * at(1) + 13 * at(-1) - 8 * at(-2) + at(-3)) / (8 * h * h * h);
  d[4] = (-at(3) + 12 * at(2) - 39 * at(1) + 56 * at(0) - 39 * at(-1) + 12 * at(-2) - at(-3)) / (6 * h * h * h * h);
  std::vector<Vec> q;
  std::vector<double> e;
  for (int m = 1; m <= n - 1; ++m) {
    Vec v = d[static_cast<std::size_t>(m)];
    for (const auto& b : q) v -= b * b.dot(v);
    e.push_back(v.norm());
    q.push_back(v / v.norm());
  }
  std::vector<double> k;
  for (int i = 1; i <= n - 2; ++i) k.push_back(e[static_cast<std::size_t>(i)] / (e[0] * e[static_cast<std::size_t>(i) - 1]));
  // Last curvature from the oriented completion.
  Mat cols(n, n - 1);
  for (int j = 0; j < n - 1; ++j) cols.col(j) = q[static_cast<std::size_t>(j)];
  const Vec vn = generalized_cross(cols);
  k.push_back(d[static_cast<std::size_t>(n)].dot(vn / vn.norm()) / (e[0] * e[static_cast<std::size_t>(n) - 2]));
  return k;
}

}  // namespace helixgeom::testing
