#include "helixgeom/jet.hpp"

#include "helixgeom/sampling.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

namespace helixgeom {
namespace {

using J = Jet<double>;

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Polynomial coefficients differentiated symbolically, evaluated at t.
double poly_derivative(std::vector<double> c, int k, double t) {
  for (int d = 0; d < k; ++d) {
    std::vector<double> next;
    for (std::size_t i = 1; i < c.size(); ++i) next.push_back(c[i] * static_cast<double>(i));
    c = next.empty() ? std::vector<double>{0.0} : next;
  }
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
  return acc;
}

TEST(JetTest, VariableSeedsIdentity) {
  const J x = J::variable(2.5, 3);
  EXPECT_EQ(x.order(), 3);
  EXPECT_DOUBLE_EQ(x.value(), 2.5);
  EXPECT_DOUBLE_EQ(x[1], 1.0);
  EXPECT_DOUBLE_EQ(x[2], 0.0);
}

TEST(JetTest, PolynomialsMatchSymbolicDerivatives) {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int degree = 1 + static_cast<int>(rng.uniform() * 7);
    std::vector<double> c;
    for (int i = 0; i <= degree; ++i) c.push_back(rng.uniform(-2.0, 2.0));
    const double t = rng.uniform(-1.5, 1.5);
    const int order = 6;
    const J x = J::variable(t, order);
    J p(order, 0.0);
    for (std::size_t i = c.size(); i-- > 0;) p = p * x + c[i];
    for (int k = 0; k <= order; ++k)
      EXPECT_NEAR(p.derivative(k), poly_derivative(c, k, t), 1e-10 * (1.0 + std::abs(poly_derivative(c, k, t))))
          << "degree " << degree << " k " << k;
  }
}

TEST(JetTest, SinDerivativesCycle) {
  const J s = sin(J::variable(0.0, 4));
  EXPECT_NEAR(s.derivative(0), 0.0, 1e-15);
  EXPECT_NEAR(s.derivative(1), 1.0, 1e-15);
  EXPECT_NEAR(s.derivative(2), 0.0, 1e-15);
  EXPECT_NEAR(s.derivative(3), -1.0, 1e-15);
  EXPECT_NEAR(s.derivative(4), 0.0, 1e-15);
}

TEST(JetTest, ElementaryFunctionsMatchClosedForms) {
  const double t = 0.7;
  const int order = 5;
  const J x = J::variable(t, order);
  const J e = exp(x);
  const J l = log(x);
  const J c = cos(x);
  const J sh = sinh(x);
  const J ch = cosh(x);
  for (int k = 0; k <= order; ++k) {
    EXPECT_NEAR(e.derivative(k), std::exp(t), 1e-12);
    const double logk = k == 0 ? std::log(t) : std::pow(-1.0, k - 1) * factorial(k - 1) / std::pow(t, k);
    EXPECT_NEAR(l.derivative(k), logk, 1e-10 * (1.0 + std::abs(logk)));
    EXPECT_NEAR(c.derivative(k), std::cos(t + k * std::numbers::pi / 2), 1e-12);
    EXPECT_NEAR(sh.derivative(k), k % 2 == 0 ? std::sinh(t) : std::cosh(t), 1e-12);
    EXPECT_NEAR(ch.derivative(k), k % 2 == 0 ? std::cosh(t) : std::sinh(t), 1e-12);
  }
}

TEST(JetTest, SqrtAndTanSatisfyTheirOdes) {
  const double t = 0.4;
  const J x = J::variable(t, 6);
  const J r = sqrt(x);
  const J r2 = r * r;
  for (int k = 0; k <= 6; ++k) EXPECT_NEAR(r2[static_cast<std::size_t>(k)], x[static_cast<std::size_t>(k)], 1e-14);
  // tan' = 1 + tan^2, checked coefficient-wise up to order 5.
  const J tn = tan(x);
  const J lhs = tn.differentiated();
  const J rhs = (tn * tn + 1.0).with_order(5);
  for (int k = 0; k <= 5; ++k) EXPECT_NEAR(lhs[static_cast<std::size_t>(k)], rhs[static_cast<std::size_t>(k)], 1e-12);
}

TEST(JetTest, DivisionInvertsMultiplication) {
  SplitMix64 rng(3);
  J a(4, 0.0), b(4, 0.0);
  for (int k = 0; k <= 4; ++k) {
    a[static_cast<std::size_t>(k)] = rng.uniform(-1.0, 1.0);
    b[static_cast<std::size_t>(k)] = rng.uniform(-1.0, 1.0);
  }
  b[0] = 1.5;
  const J q = (a * b) / b;
  for (int k = 0; k <= 4; ++k) EXPECT_NEAR(q[static_cast<std::size_t>(k)], a[static_cast<std::size_t>(k)], 1e-13);
}

TEST(JetTest, FiniteDifferenceCrossCheck) {
  // f(t) = exp(sin t) / (1 + t^2); first two derivatives against central differences.
  auto f = [](auto t) { return exp(sin(t)) / (t * t + 1.0); };
  auto fd = [](double t) { return std::exp(std::sin(t)) / (t * t + 1.0); };
  const double t = 0.3;
  const double h = 1e-4;
  const J y = f(J::variable(t, 2));
  EXPECT_NEAR(y.derivative(1), (fd(t + h) - fd(t - h)) / (2 * h), 1e-7);
  EXPECT_NEAR(y.derivative(2), (fd(t + h) - 2 * fd(t) + fd(t - h)) / (h * h), 1e-5);
}

TEST(JetTest, IntegerPowerMatchesRepeatedProduct) {
  const J x = J::variable(1.3, 4);
  const J p = ipow(x, 5);
  const J q = x * x * x * x * x;
  for (int k = 0; k <= 4; ++k) EXPECT_NEAR(p[static_cast<std::size_t>(k)], q[static_cast<std::size_t>(k)], 1e-12);
  const J inv = ipow(x, -2) * x * x;
  EXPECT_NEAR(inv.value(), 1.0, 1e-15);
  for (int k = 1; k <= 4; ++k) EXPECT_NEAR(inv[static_cast<std::size_t>(k)], 0.0, 1e-13);
}

TEST(JetTest, CompositionMatchesDirectEvaluation) {
  const double t = 0.5;
  const J g = sin(J::variable(t, 5));
  // Series of exp about g0.
  J f(5, 0.0);
  for (int k = 0; k <= 5; ++k) f[static_cast<std::size_t>(k)] = std::exp(g.value()) / factorial(k);
  const J direct = exp(g);
  const J composed = compose(f, g);
  for (int k = 0; k <= 5; ++k)
    EXPECT_NEAR(composed[static_cast<std::size_t>(k)], direct[static_cast<std::size_t>(k)], 1e-13);
}

TEST(JetTest, NestedJetsGiveMixedPartials) {
  // f(x, y) = x y^2 + sin(x y); d^2 f / dx dy = 2y + cos(xy) - xy sin(xy).
  using JJ = Jet<J>;
  const double x0 = 0.3, y0 = 1.2;
  const JJ x{J::variable(x0, 1), J(1, 0.0)};
  const JJ y{J(1, y0), J(1, 1.0)};
  const JJ f = x * y * y + sin(x * y);
  const double mixed = f[1][1];
  const double xy = x0 * y0;
  EXPECT_NEAR(mixed, 2 * y0 + std::cos(xy) - xy * std::sin(xy), 1e-13);
  EXPECT_NEAR(f[0][0], x0 * y0 * y0 + std::sin(xy), 1e-15);
}

TEST(JetTest, DifferentiatedLosesOneOrder) {
  const J x = J::variable(2.0, 3);
  const J cube = x * x * x;
  const J d = cube.differentiated();
  EXPECT_EQ(d.order(), 2);
  EXPECT_NEAR(d.derivative(0), 12.0, 1e-14);
  EXPECT_NEAR(d.derivative(1), 12.0, 1e-14);
  EXPECT_NEAR(d.derivative(2), 6.0, 1e-14);
}

}  // namespace
}  // namespace helixgeom
