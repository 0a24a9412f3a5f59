#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace helixgeom {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Result of a numerical null-space computation.
struct NullSpace {
  Mat basis;                   // n x r, orthonormal columns
  std::vector<double> spectrum;  // singular values, descending
  bool all_small = false;      // sigma_max fell below the absolute cutoff
};

/// Determinant by cofactor expansion, usable over any commutative ring
/// (doubles or jets). Intended for the small matrices of this toolkit.
template <class S>
S cofactor_det(const std::vector<std::vector<S>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  S acc = m[0][0] * 0.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<std::vector<S>> minor;
    minor.reserve(n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<S> row;
      row.reserve(n - 1);
      for (std::size_t c = 0; c < n; ++c)
        if (c != col) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    S term = m[0][col] * cofactor_det(minor);
    if (col % 2 == 0)
      acc = acc + term;
    else
      acc = acc - term;
  }
  return acc;
}

/// Generalized cross product of n-1 vectors in R^n (each given as n
/// components). The result X satisfies <X, v_j> = 0 and
/// det[v_1 .. v_{n-1}, X] = |X|^2 >= 0.
template <class S>
std::vector<S> generalized_cross(const std::vector<std::vector<S>>& vectors) {
  const std::size_t k = vectors.size();
  const std::size_t n = k + 1;
  for (const auto& v : vectors)
    if (v.size() != n) throw std::invalid_argument("generalized_cross needs n-1 vectors in R^n");
  std::vector<S> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Minor with row i removed from the n x (n-1) matrix [v_1 .. v_{n-1}].
    std::vector<std::vector<S>> minor;
    minor.reserve(k);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == i) continue;
      std::vector<S> row;
      row.reserve(k);
      for (std::size_t c = 0; c < k; ++c) row.push_back(vectors[c][r]);
      minor.push_back(std::move(row));
    }
    S d = cofactor_det(minor);
    if ((i + 1 + n) % 2 == 0)
      out.push_back(d);
    else
      out.push_back(-d);
  }
  return out;
}

inline Vec generalized_cross(const Mat& columns) {
  std::vector<std::vector<double>> vs;
  for (Eigen::Index c = 0; c < columns.cols(); ++c)
    vs.emplace_back(columns.col(c).data(), columns.col(c).data() + columns.rows());
  auto x = generalized_cross(vs);
  return Eigen::Map<Vec>(x.data(), static_cast<Eigen::Index>(x.size()));
}

/// Flips v so that its first coordinate with |x| > threshold is positive.
inline void canonicalize_sign(Eigen::Ref<Vec> v, double threshold = 1e-8) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > threshold) {
      if (v[i] < 0) v = -v;
      return;
    }
  }
}

/// Basis-independent orthonormal basis of span(B): pivoted Gram-Schmidt over
/// the columns of the projector B B^T, ordered by pivot coordinate, with
/// canonical signs. Two bases of the same subspace map to the same output
/// (up to roundoff).
inline Mat canonical_basis(const Mat& basis) {
  const Eigen::Index n = basis.rows();
  const Eigen::Index r = basis.cols();
  if (r == 0) return Mat(n, 0);
  Mat cols = basis * basis.transpose();
  std::vector<std::pair<Eigen::Index, Vec>> picked;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (Eigen::Index step = 0; step < r; ++step) {
    Eigen::Index best = -1;
    double best_norm = -1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      const double nrm = cols.col(j).norm();
      if (nrm > best_norm * (1.0 + 1e-12)) {
        best_norm = nrm;
        best = j;
      }
    }
    used[static_cast<std::size_t>(best)] = true;
    Vec q = cols.col(best) / best_norm;
    for (Eigen::Index j = 0; j < n; ++j) cols.col(j) -= q * q.dot(cols.col(j));
    picked.emplace_back(best, q);
  }
  std::sort(picked.begin(), picked.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Mat out(n, r);
  for (Eigen::Index j = 0; j < r; ++j) {
    out.col(j) = picked[static_cast<std::size_t>(j)].second;
    // Re-orthonormalize against earlier picks (sorting changes the order).
    for (Eigen::Index i = 0; i < j; ++i) out.col(j) -= out.col(i) * out.col(i).dot(out.col(j));
    out.col(j).normalize();
    canonicalize_sign(out.col(j));
  }
  return out;
}

/// Null space of `rows` (m x n): right singular vectors whose singular value
/// is below rel_tol * sigma_max. If sigma_max < abs_tol the whole space is
/// returned. Directions beyond the row count are always in the null space.
inline NullSpace null_space(const Mat& rows, double rel_tol, double abs_tol) {
  const Eigen::Index n = rows.cols();
  NullSpace out;
  if (rows.rows() == 0) {
    out.basis = Mat::Identity(n, n);
    out.all_small = true;
    return out;
  }
  Eigen::JacobiSVD<Mat> svd(rows, Eigen::ComputeFullV);
  const Vec& sv = svd.singularValues();
  out.spectrum.assign(sv.data(), sv.data() + sv.size());
  const double sigma_max = sv.size() > 0 ? sv[0] : 0.0;
  if (sigma_max < abs_tol) {
    out.basis = Mat::Identity(n, n);
    out.all_small = true;
    return out;
  }
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] >= rel_tol * sigma_max) ++rank;
  const Mat& v = svd.matrixV();
  out.basis = v.rightCols(n - rank);
  return out;
}

/// Principal angles (radians, ascending) between span(A) and span(B).
/// Both inputs must have orthonormal columns.
inline std::vector<double> principal_angles(const Mat& a, const Mat& b) {
  if (a.cols() == 0 || b.cols() == 0) return {};
  Eigen::JacobiSVD<Mat> svd(a.transpose() * b);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    out.push_back(std::acos(std::clamp(svd.singularValues()[i], -1.0, 1.0)));
  std::sort(out.begin(), out.end());
  return out;
}

/// Largest principal angle, or pi/2 when the dimensions differ.
inline double subspace_distance(const Mat& a, const Mat& b) {
  if (a.cols() != b.cols()) return std::numbers::pi / 2;
  if (a.cols() == 0) return 0.0;
  // sin of the largest angle is accurate for small angles; acos of cosines is not.
  const Mat residual = b - a * (a.transpose() * b);
  Eigen::JacobiSVD<Mat> svd(residual);
  return std::asin(std::clamp(svd.singularValues()[0], 0.0, 1.0));
}

}  // namespace helixgeom
