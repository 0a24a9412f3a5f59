#include "helixgeom/geodesic.hpp"

#include "helixgeom/gallery.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

namespace helixgeom {
namespace {

using testing::vec;

const double kPi = std::numbers::pi;

// Great circle through the equator point, tilted 45 degrees.
GeodesicTrace tilted_great_circle(double h) {
  return integrate_geodesic_from_parameters(gallery::sphere(), vec({kPi / 2, 0.0}), vec({1.0, 1.0}), 2 * kPi, h);
}

TEST(GeodesicTest, GreatCircleCloses) {
  const GeodesicTrace g = tilted_great_circle(1e-3);
  EXPECT_NEAR(g.length(), 2 * kPi, 1e-15);
  EXPECT_LT((g.samples.back().position - g.samples.front().position).norm(), 1e-6);
  EXPECT_LT((g.samples.back().velocity - g.samples.front().velocity).norm(), 1e-6);
  EXPECT_FALSE(g.domain_exit);
}

TEST(GeodesicTest, FourthOrderConvergence) {
  std::vector<double> err;
  for (double h : {0.04, 0.02, 0.01}) {
    const GeodesicTrace g = tilted_great_circle(h);
    err.push_back((g.samples.back().position - g.samples.front().position).norm());
  }
  for (std::size_t i = 0; i + 1 < err.size(); ++i) {
    const double order = std::log2(err[i] / err[i + 1]);
    EXPECT_GE(order, 3.7) << "errors " << err[i] << " " << err[i + 1];
  }
}

TEST(GeodesicTest, UniformStepsEndExactlyAtLength) {
  const GeodesicTrace g = tilted_great_circle(0.05);
  EXPECT_LE(g.step, 0.05);
  for (std::size_t i = 1; i < g.samples.size(); ++i)
    EXPECT_NEAR(g.samples[i].s - g.samples[i - 1].s, g.step, 1e-12);
}

TEST(GeodesicTest, CylinderHelixCurvatures) {
  const Hypersurface s = gallery::cylinder();
  const GeodesicTrace g =
      integrate_geodesic_from_parameters(s, vec({0.0, 0.0}), vec({1 / std::sqrt(2.0), 1 / std::sqrt(2.0)}),
                                         2 * kPi * std::sqrt(2.0));
  EXPECT_LT((g.samples.back().position - vec({1.0, 0.0, 2 * kPi})).norm(), 1e-9);
  const Curve alpha = trace_to_surface_curve(g).ambient();
  for (double t : {0.01, 1.3, 4.0, 8.8}) {
    const FrenetData f = frenet(alpha, t);
    EXPECT_NEAR(f.speed, 1.0, 1e-9);
    EXPECT_NEAR(f.k(1), 0.5, 1e-6);
    EXPECT_NEAR(f.k(2), 0.5, 1e-6);
  }
}

TEST(GeodesicTest, Reversibility) {
  const Hypersurface s = gallery::cone();
  const GeodesicTrace fwd = integrate_geodesic_from_parameters(s, vec({1.5, kPi}), vec({0.6, 0.9}), 1.5);
  const GeodesicSample& end = fwd.samples.back();
  const GeodesicTrace back = integrate_geodesic(s, end.u, -end.velocity, 1.5);
  EXPECT_LT((back.samples.back().u - fwd.samples.front().u).norm(), 1e-9);
  EXPECT_LT((back.samples.back().velocity + fwd.samples.front().velocity).norm(), 1e-9);
}

TEST(GeodesicTest, ConeGeodesicMatchesUnrolledLine) {
  // Perpendicular to the ruling at distance 1.5 from the apex. Unrolled, the
  // cone is a plane sector and the geodesic a line: at arc s the distance
  // to the apex is sqrt(1.5^2 + s^2) and the unrolled angle atan(s / 1.5).
  const double gam = kPi / 6;
  const Hypersurface s = gallery::cone(gam);
  const GeodesicTrace g = integrate_geodesic_from_parameters(s, vec({1.5, kPi}), vec({0.0, 1.0}), 2.0);
  for (const auto& smp : g.samples) {
    const double t = std::atan(smp.s / 1.5);
    EXPECT_NEAR(smp.u[0], 1.5 / std::cos(t), 1e-9);
    EXPECT_NEAR(smp.u[1], kPi + t / std::sin(gam), 1e-9);
  }
  EXPECT_LE(g.max_speed_drift, 1e-7);
  EXPECT_LE(g.max_tangential_residual, 1e-10);
}

TEST(GeodesicTest, TracesAreGeodesics) {
  const Hypersurface s = gallery::cone();
  const GeodesicTrace g = integrate_geodesic_from_parameters(s, vec({1.5, kPi}), vec({1.0, 1.0}), 2.0);
  EXPECT_LE(is_geodesic(s, trace_to_surface_curve(g), 1e-8).residual, 1e-8);
  const GeodesicTrace h = integrate_geodesic_from_parameters(gallery::helicoid(), vec({0.2, 0.0}), vec({1.0, 0.5}), 0.5);
  EXPECT_LE(is_geodesic(h.surface, trace_to_surface_curve(h), 1e-8).residual, 1e-8);
}

TEST(GeodesicTest, JetAgreesWithSampleState) {
  const Hypersurface s = gallery::helicoid();
  const GeodesicTrace g = integrate_geodesic_from_parameters(s, vec({0.2, 0.0}), vec({1.0, 0.5}), 0.5);
  const GeodesicSample& smp = g.samples[g.samples.size() / 2];
  const Taylor jet = geodesic_jet(s, smp.u, smp.du, 5);
  for (int i = 0; i < 2; ++i) {
    const auto& c = jet[static_cast<std::size_t>(i)];
    EXPECT_NEAR(c[0], smp.u[i], 1e-15);
    EXPECT_NEAR(c[1], smp.du[i], 1e-15);
    EXPECT_NEAR(2 * c[2], smp.ddu[i], 1e-12);
  }
  // Higher coefficients against a finite difference of the integrated trace.
  const Curve p = trace_to_surface_curve(g).parameter_curve();
  const double t = smp.s, h = 1e-3;
  for (int i = 0; i < 2; ++i) {
    const double d3 = (p.position(t + 2 * h)[i] - 2 * p.position(t + h)[i] + 2 * p.position(t - h)[i] -
                       p.position(t - 2 * h)[i]) /
                      (2 * h * h * h);
    EXPECT_NEAR(6 * jet[static_cast<std::size_t>(i)][3], d3, 1e-5);
  }
}

TEST(GeodesicTest, CoarseStepIsRejected) {
  try {
    (void)tilted_great_circle(0.5);
    FAIL() << "expected StepTooLarge";
  } catch (const StepTooLarge& e) {
    EXPECT_GT(e.drift(), kMaxStepDrift);
  }
}

TEST(GeodesicTest, LeavingThePatchStopsTheTrace) {
  const GeodesicTrace g = integrate_geodesic_from_parameters(gallery::helicoid(), vec({0.0, 0.0}), vec({1.0, 0.0}), 5.0);
  EXPECT_TRUE(g.domain_exit);
  EXPECT_LT(g.length(), 1.01);
  EXPECT_GT(g.max_margin_violation, 0.0);
}

TEST(GeodesicTest, InvalidStartsAreRejected) {
  const Hypersurface s = gallery::cylinder();
  EXPECT_THROW(integrate_geodesic(s, vec({0.0, 0.0}), vec({1.0, 0.0, 0.0}), 1.0), std::invalid_argument);
  EXPECT_THROW(integrate_geodesic(s, vec({0.0, 0.0}), vec({0.0, 2.0, 0.0}), 1.0), std::invalid_argument);
  EXPECT_THROW(integrate_geodesic(s, vec({0.0, 20.0}), vec({0.0, 0.0, 1.0}), 1.0), std::invalid_argument);
}

TEST(GeodesicTest, TraceCsv) {
  const GeodesicTrace g = integrate_geodesic_from_parameters(gallery::cylinder(), vec({0.0, 0.0}), vec({0.0, 1.0}), 0.002);
  std::ostringstream os;
  write_trace_csv(os, g);
  EXPECT_EQ(os.str(), "s,u1,u2,x1,x2,x3,v1,v2,v3\n0,0,0,1,0,0,0,0,1\n0.001,0,0.001,1,0,0.001,0,0,1\n0.002,0,0.002,1,0,0.002,0,0,1\n");
}

}  // namespace
}  // namespace helixgeom
