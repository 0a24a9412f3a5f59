#include "helixgeom/linalg.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

namespace helixgeom {
namespace {

using testing::random_rotation;
using testing::unit;

TEST(LinalgTest, GeneralizedCrossMatchesCrossProductInE3) {
  SplitMix64 rng(1);
  for (int i = 0; i < 20; ++i) {
    Eigen::Vector3d a = testing::random_vector(3, rng), b = testing::random_vector(3, rng);
    Mat cols(3, 2);
    cols << a, b;
    const Vec x = generalized_cross(cols);
    EXPECT_LT((x - Vec(a.cross(b))).norm(), 1e-14);
  }
}

TEST(LinalgTest, GeneralizedCrossIsOrthogonalAndPositivelyOriented) {
  SplitMix64 rng(2);
  for (int n = 3; n <= 6; ++n) {
    Mat cols(n, n - 1);
    for (int j = 0; j < n - 1; ++j) cols.col(j) = testing::random_vector(n, rng);
    const Vec x = generalized_cross(cols);
    for (int j = 0; j < n - 1; ++j) EXPECT_NEAR(x.dot(cols.col(j)), 0.0, 1e-12);
    Mat full(n, n);
    full << cols, x;
    EXPECT_GT(full.determinant(), 0.0) << "n = " << n;
  }
}

TEST(LinalgTest, CofactorDeterminantMatchesEigen) {
  SplitMix64 rng(3);
  Mat m(4, 4);
  std::vector<std::vector<double>> rows(4, std::vector<double>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) rows[i][j] = m(i, j) = rng.uniform(-1, 1);
  EXPECT_NEAR(cofactor_det(rows), m.determinant(), 1e-13);
}

TEST(LinalgTest, NullSpaceOfRankDeficientRows) {
  Mat rows(3, 4);
  rows << 1, 0, 0, 0,  //
      0, 1, 0, 0,      //
      1, 1, 0, 0;
  const NullSpace ns = null_space(rows, 1e-10, 1e-10);
  ASSERT_EQ(ns.basis.cols(), 2);
  const Mat expected = (Mat(4, 2) << 0, 0, 0, 0, 1, 0, 0, 1).finished();
  EXPECT_LT(subspace_distance(canonical_basis(ns.basis), expected), 1e-12);
  EXPECT_FALSE(ns.all_small);
}

TEST(LinalgTest, TinyRowsGiveWholeSpace) {
  const Mat rows = Mat::Constant(5, 3, 1e-12);
  const NullSpace ns = null_space(rows, 1e-6, 1e-6);
  EXPECT_TRUE(ns.all_small);
  EXPECT_EQ(ns.basis.cols(), 3);
}

TEST(LinalgTest, CanonicalBasisIsRotationIndependent) {
  // Any orthonormal basis of span{e3, e4} canonicalizes to (e3, e4).
  SplitMix64 rng(4);
  for (int i = 0; i < 10; ++i) {
    const double a = rng.uniform(0, 6.28);
    Mat b(4, 2);
    b.col(0) = std::cos(a) * unit(4, 2) + std::sin(a) * unit(4, 3);
    b.col(1) = -std::sin(a) * unit(4, 2) + std::cos(a) * unit(4, 3);
    if (rng.uniform() < 0.5) b.col(1) *= -1;
    const Mat c = canonical_basis(b);
    EXPECT_LT((c.col(0) - unit(4, 2)).norm(), 1e-12);
    EXPECT_LT((c.col(1) - unit(4, 3)).norm(), 1e-12);
  }
}

TEST(LinalgTest, SignCanonicalization) {
  Vec v(3);
  v << 0.0, -0.6, 0.8;
  canonicalize_sign(v);
  EXPECT_GT(v[1], 0.0);
}

TEST(LinalgTest, PrincipalAnglesUnderRotation) {
  SplitMix64 rng(5);
  const Mat r = random_rotation(4, rng);
  Mat a(4, 2);
  a << unit(4, 0), unit(4, 1);
  const Mat b = r * a;
  const auto self = principal_angles(a, a);
  for (double x : self) EXPECT_NEAR(x, 0.0, 2e-8);
  EXPECT_NEAR(subspace_distance(b, r * a), 0.0, 1e-14);
  EXPECT_DOUBLE_EQ(subspace_distance(a, a.leftCols(1)), std::numbers::pi / 2);
  Mat c(4, 1);
  c << unit(4, 2);
  EXPECT_NEAR(principal_angles(a.leftCols(1), c)[0], std::numbers::pi / 2, 1e-14);
}

}  // namespace
}  // namespace helixgeom
