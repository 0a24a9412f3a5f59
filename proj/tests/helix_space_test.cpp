#include "helixgeom/helix_space.hpp"

#include "helixgeom/gallery.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

namespace helixgeom {
namespace {

using testing::unit;

TEST(HelixSpaceTest, HyperplaneHasEveryDirection) {
  const HelixDirectionSpace h = helix_directions(gallery::hyperplane(3));
  EXPECT_EQ(h.r(), 3);
  EXPECT_LT((h.basis - Mat::Identity(3, 3)).norm(), 1e-12);
  EXPECT_NEAR(h.constants[2], 1.0, 1e-15);
}

TEST(HelixSpaceTest, SphereHasNone) {
  const auto c = classify_strong_r_helix(gallery::sphere(3));
  EXPECT_EQ(c.r, 0);
  EXPECT_FALSE(c.is_helix);
  EXPECT_EQ(helix_directions(gallery::sphere(4)).r(), 0);
}

TEST(HelixSpaceTest, CylinderAxis) {
  const HelixDirectionSpace h = helix_directions(gallery::cylinder());
  ASSERT_EQ(h.r(), 1);
  EXPECT_LT((h.direction(0) - unit(3, 2)).norm(), 1e-8);
  EXPECT_NEAR(h.constants[0], 0.0, 1e-12);
  EXPECT_NEAR(h.angles[0], std::numbers::pi / 2, 1e-12);
}

TEST(HelixSpaceTest, ConeAxisWithConstantAngle) {
  const double g = std::numbers::pi / 6;
  const HelixDirectionSpace h = helix_directions(gallery::cone(g));
  ASSERT_EQ(h.r(), 1);
  EXPECT_LT((h.direction(0) - unit(3, 2)).norm(), 1e-8);
  EXPECT_NEAR(h.constants[0], std::sin(g), 1e-10);
  EXPECT_LE(h.residuals[0], 1e-12);
  EXPECT_LE(h.verification_residual, 1e-12);
}

TEST(HelixSpaceTest, GeneralizedCylinderInE4) {
  const HelixDirectionSpace h = helix_directions(gallery::generalized_cylinder_e4());
  ASSERT_EQ(h.r(), 2);
  Mat expected(4, 2);
  expected << unit(4, 2), unit(4, 3);
  EXPECT_LT(subspace_distance(h.basis, expected), 1e-8);
}

TEST(HelixSpaceTest, HelicoidAndParaboloidHaveNone) {
  EXPECT_EQ(helix_directions(gallery::helicoid()).r(), 0);
  const Hypersurface p = Hypersurface::parse({"u1", "u2", "u1^2 + u2^2"}, {{-1, 1}, {-1, 1}});
  EXPECT_EQ(helix_directions(p).r(), 0);
  // Cylinder over a parabola: only the rulings.
  const HelixDirectionSpace h = helix_directions(gallery::plane_curve_cylinder());
  ASSERT_EQ(h.r(), 1);
  EXPECT_LT((h.direction(0) - unit(3, 2)).norm(), 1e-8);
}

TEST(HelixSpaceTest, DeterministicForFixedSeed) {
  SurfaceSamplePlan plan;
  plan.seed = 99;
  const auto a = helix_directions(gallery::cone(), plan);
  const auto b = helix_directions(gallery::cone(), plan);
  EXPECT_EQ(a.basis, b.basis);
  EXPECT_EQ(a.constants, b.constants);
  EXPECT_EQ(a.spectrum, b.spectrum);
  EXPECT_EQ(a.seed, 99u);
  EXPECT_EQ(a.samples, plan.grid_count(3) + plan.random);
}

TEST(HelixSpaceTest, TangentialComponentHasConstantLength) {
  // d = cos(theta) N + sin(theta) T with |T| = 1 on the cone.
  const Hypersurface s = gallery::cone();
  const HelixDirectionSpace h = helix_directions(s);
  SplitMix64 rng(31);
  for (int i = 0; i < 10; ++i) {
    const Vec u = testing::vec({rng.uniform(0.2, 2.9), rng.uniform(0.0, 6.0)});
    const SurfacePoint p = s.point(u);
    const Vec d = h.direction(0);
    const Vec tang = d - p.normal * p.normal.dot(d);
    EXPECT_NEAR(tang.norm(), std::sin(h.angles[0]), 1e-12);
    // The tangential part lies in the span of the Jacobian columns.
    const Vec coef = p.tangents.colPivHouseholderQr().solve(tang);
    EXPECT_LT((p.tangents * coef - tang).norm(), 1e-12);
  }
}

TEST(HelixSpaceTest, RigidMotionEquivariance) {
  SplitMix64 rng(32);
  const Hypersurface s = gallery::generalized_cylinder_e4();
  const HelixDirectionSpace h = helix_directions(s);
  for (int i = 0; i < 5; ++i) {
    const Mat r = testing::random_rotation(4, rng);
    const HelixDirectionSpace g = helix_directions(s.transformed(r, testing::random_vector(4, rng)));
    ASSERT_EQ(g.r(), 2);
    for (double a : principal_angles(g.basis, r * h.basis)) EXPECT_LE(a, 1e-6);
  }
}

// Returns the true normal for the first `honest` queries, then a corrupted one.
struct CorruptedNormals {
  Hypersurface surface;
  int honest;
  mutable int calls = 0;

  int dim() const { return surface.dim(); }
  std::vector<Interval> box() const { return surface.box(); }
  Vec normal(const Vec& u) const {
    Vec n = surface.normal(u);
    if (calls++ >= honest) n[2] = -n[2];
    return n;
  }
};

TEST(HelixSpaceTest, CorruptedNormalsFailVerification) {
  const SurfaceSamplePlan plan;
  CorruptedNormals f{gallery::cone(), plan.grid_count(3) + plan.random};
  try {
    (void)helix_directions(f, plan);
    FAIL() << "expected VerificationFailed";
  } catch (const VerificationFailed& e) {
    EXPECT_GT(e.residual(), 1e-5);
  }
}

TEST(HelixSpaceTest, HelixAngle) {
  const HelixAngle a = helix_angle(gallery::cone(), unit(3, 2));
  EXPECT_TRUE(a.is_constant);
  EXPECT_NEAR(a.theta, std::numbers::pi / 3, 1e-12);
  EXPECT_FALSE(a.degenerate_sampling);
  const HelixAngle b = helix_angle(gallery::cone(), unit(3, 0));
  EXPECT_FALSE(b.is_constant);
  EXPECT_THROW(helix_angle(gallery::cone(), Vec::Ones(3)), std::invalid_argument);
}

}  // namespace
}  // namespace helixgeom
