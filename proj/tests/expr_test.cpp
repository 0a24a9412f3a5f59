#include "helixgeom/expr.hpp"

#include "helixgeom/sampling.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <string>

namespace helixgeom {
namespace {

double eval1(const std::string& text, double t) {
  const Expr e = parse(text, {"t"});
  return evaluate<double>(e, std::vector<double>{t});
}

TEST(ExprTest, Precedence) {
  EXPECT_DOUBLE_EQ(eval1("1 + 2 * 3", 0), 7.0);
  EXPECT_DOUBLE_EQ(eval1("(1 + 2) * 3", 0), 9.0);
  EXPECT_DOUBLE_EQ(eval1("2 ^ 3 ^ 2", 0), 512.0);
  EXPECT_DOUBLE_EQ(eval1("-2 ^ 2", 0), -4.0);
  EXPECT_DOUBLE_EQ(eval1("2 ^ -1", 0), 0.5);
  EXPECT_DOUBLE_EQ(eval1("8 / 4 / 2", 0), 1.0);
  EXPECT_DOUBLE_EQ(eval1("10 - 4 - 3", 0), 3.0);
  EXPECT_DOUBLE_EQ(eval1("1.5e2 + 2E-1", 0), 150.2);
}

TEST(ExprTest, FunctionsAndConstants) {
  EXPECT_NEAR(eval1("sin(pi/6)", 0), 0.5, 1e-15);
  EXPECT_NEAR(eval1("cos(t)^2 + sin(t)^2", 0.8), 1.0, 1e-15);
  EXPECT_NEAR(eval1("log(exp(t))", 1.7), 1.7, 1e-15);
  EXPECT_NEAR(eval1("sqrt(t) * sqrt(t)", 2.0), 2.0, 1e-15);
  EXPECT_NEAR(eval1("cosh(t)^2 - sinh(t)^2", 0.9), 1.0, 1e-14);
  EXPECT_NEAR(eval1("tan(t)", 0.3), std::tan(0.3), 1e-15);
  EXPECT_NEAR(eval1("neg(t)", 0.3), -0.3, 1e-15);
}

TEST(ExprTest, MultipleVariables) {
  const Expr e = parse("u1 * cos(u2)", {"u1", "u2"});
  EXPECT_NEAR(evaluate<double>(e, std::vector<double>{2.0, 0.0}), 2.0, 1e-15);
  std::map<std::string, double> b{{"u1", 3.0}, {"u2", std::numbers::pi}};
  EXPECT_NEAR(evaluate<double>(e, b), -3.0, 1e-15);
}

struct SyntaxCase {
  std::string text;
  std::size_t position;
  std::string fragment;
};

class SyntaxErrorTest : public ::testing::TestWithParam<SyntaxCase> {};

TEST_P(SyntaxErrorTest, ReportsOffsetAndReason) {
  const auto& c = GetParam();
  try {
    (void)parse(c.text, {"t"});
    FAIL() << "expected SyntaxError for '" << c.text << "'";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.position(), c.position) << e.what();
    EXPECT_NE(std::string(e.what()).find(c.fragment), std::string::npos) << e.what();
  }
}

INSTANTIATE_TEST_SUITE_P(Cases, SyntaxErrorTest,
                         ::testing::Values(SyntaxCase{"sin(t", 5, "unbalanced '('"},
                                           SyntaxCase{"", 0, "empty expression"},
                                           SyntaxCase{"t)", 1, "unbalanced ')'"},
                                           SyntaxCase{"foo(t)", 0, "unknown function"},
                                           SyntaxCase{"x + 1", 0, "unknown identifier"},
                                           SyntaxCase{"t +", 3, "expected operand"},
                                           SyntaxCase{"2 * * t", 4, "expected operand"}));

TEST(ExprTest, DomainErrorsNameTheSubexpression) {
  try {
    (void)eval1("1 + log(t - 1)", 0.5);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(e.subexpression().find("log"), std::string::npos);
  }
  EXPECT_THROW((void)eval1("sqrt(t)", -1.0), DomainError);
  EXPECT_THROW((void)eval1("1 / t", 0.0), DomainError);
  EXPECT_THROW((void)eval1("t ^ 0.5", -2.0), DomainError);
  EXPECT_NEAR(eval1("t ^ 3", -2.0), -8.0, 1e-15);
}

TEST(ExprTest, JetEvaluationDifferentiates) {
  const Expr e = parse("t^3 + sin(t)", {"t"});
  const Jet<double> y = eval_jet(e, {{"t", Jet<double>::variable(0.5, 2)}});
  EXPECT_NEAR(y.derivative(1), 3 * 0.25 + std::cos(0.5), 1e-14);
  EXPECT_NEAR(y.derivative(2), 6 * 0.5 - std::sin(0.5), 1e-14);
}

// Random well-formed expressions for the round-trip property.
std::string random_expr(SplitMix64& rng, int depth) {
  const double r = rng.uniform();
  if (depth == 0 || r < 0.25) {
    if (rng.uniform() < 0.5) return "t";
    const int k = static_cast<int>(rng.uniform() * 5);
    return std::to_string(k) + "." + std::to_string(static_cast<int>(rng.uniform() * 100));
  }
  if (r < 0.45) {
    static const char* funcs[] = {"sin", "cos", "exp", "sinh", "cosh", "neg"};
    return std::string(funcs[static_cast<int>(rng.uniform() * 6)]) + "(" + random_expr(rng, depth - 1) + ")";
  }
  if (r < 0.5) return "-" + random_expr(rng, depth - 1);
  static const char ops[] = {'+', '-', '*', '/', '^'};
  const char op = ops[static_cast<int>(rng.uniform() * 5)];
  if (op == '^') return "(" + random_expr(rng, depth - 1) + ")^2";
  return random_expr(rng, depth - 1) + " " + op + " " + random_expr(rng, depth - 1);
}

TEST(ExprTest, PrintParseRoundTrip) {
  SplitMix64 rng(2024);
  for (int i = 0; i < 300; ++i) {
    const std::string text = random_expr(rng, 4);
    const Expr a = parse(text, {"t"});
    const std::string printed = a.to_string();
    const Expr b = parse(printed, {"t"});
    EXPECT_TRUE(structurally_equal(a, b)) << text << " -> " << printed;
    EXPECT_EQ(printed, b.to_string());
    double va = 0.0, vb = 0.0;
    bool ok = true;
    try {
      va = evaluate<double>(a, std::vector<double>{0.37});
      vb = evaluate<double>(b, std::vector<double>{0.37});
    } catch (const DomainError&) {
      ok = false;
    }
    if (ok && std::isfinite(va)) EXPECT_EQ(va, vb) << text;
  }
}

TEST(ExprTest, PrintingIsFullyParenthesized) {
  const Expr e = parse("1 + 2 * t", {"t"});
  EXPECT_EQ(e.to_string(), "(1 + (2 * t))");
}

}  // namespace
}  // namespace helixgeom
