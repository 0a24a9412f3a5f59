#pragma once

#include "helixgeom/linalg.hpp"
#include "helixgeom/sampling.hpp"

#include <Eigen/QR>

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace helixgeom::testing {

/// Random proper rotation (Haar-ish via QR of a Gaussian-like matrix).
inline Mat random_rotation(int n, SplitMix64& rng) {
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

inline Vec random_vector(int n, SplitMix64& rng, double scale = 1.0) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.uniform(-scale, scale);
  return v;
}

inline Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

inline Vec unit(int n, int i) {
  Vec v = Vec::Zero(n);
  v[i] = 1.0;
  return v;
}

}  // namespace helixgeom::testing
