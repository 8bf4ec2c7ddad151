#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "generators.hpp"
#include "oracles.hpp"
#include "nambu/compiled_expr.hpp"
#include "nambu/errors.hpp"
#include "nambu/expr.hpp"
#include "nambu/polynomial.hpp"
#include "nambu/rational.hpp"

namespace nambu {
namespace {

using testing::eval_long;
using testing::Gen;
using testing::space_names;

const std::set<std::string> kXyz = {"x", "y", "z"};

Expr p(std::string_view text) { return parse(text, kXyz); }

double ev(std::string_view text, double x, double y = 0, double z = 0) {
  return eval(p(text), {{"x", x}, {"y", y}, {"z", z}});
}

TEST(Rational, ParsesExactDecimalsAndFractions) {
  EXPECT_EQ(*parse_rational("0.1"), Rational(1, 10));
  EXPECT_EQ(*parse_rational("2.5e-3"), Rational(1, 400));
  EXPECT_EQ(*parse_rational("1e3"), Rational(1000));
  EXPECT_EQ(*parse_rational("-3/6"), Rational(-1, 2));
  EXPECT_EQ(*parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(*parse_rational("010"), Rational(10));
  EXPECT_EQ(*parse_rational("012/08"), Rational(3, 2));
  EXPECT_FALSE(parse_rational("1/0"));
  EXPECT_FALSE(parse_rational("abc"));
  EXPECT_FALSE(parse_rational(""));
}

TEST(Rational, FromDoubleUsesShortestDecimal) {
  EXPECT_EQ(rational_from_double(0.1), Rational(1, 10));
  EXPECT_EQ(rational_from_double(-2.0), Rational(-2));
  EXPECT_EQ(to_string(Rational(3, 4)), "3/4");
}

TEST(Parser, PrecedenceAndAssociativity) {
  EXPECT_DOUBLE_EQ(ev("1 + 2*3", 0), 7);
  EXPECT_DOUBLE_EQ(ev("8 - 3 - 2", 0), 3);
  EXPECT_DOUBLE_EQ(ev("8/4/2", 0), 1);
  EXPECT_DOUBLE_EQ(ev("(2^3)^2", 0), 64);
  EXPECT_DOUBLE_EQ(ev("-x^2", 3), -9);
  EXPECT_DOUBLE_EQ(ev("(x+1)*(x-1)", 3), 8);
  EXPECT_DOUBLE_EQ(ev("sin(x)^2 + cos(x)^2", 0.7), 1);
  EXPECT_DOUBLE_EQ(ev("sqrt(x)*exp(0)", 4), 2);
}

TEST(Parser, ConstantsAreExact) {
  const Expr e = simplify(p("0.1 + 0.2"));
  ASSERT_TRUE(e.is_constant());
  EXPECT_EQ(e.value(), Rational(3, 10));
  EXPECT_EQ(p("1.5e2").value(), Rational(150));
  EXPECT_EQ(p("2.5").value(), Rational(5, 2));
}

TEST(Parser, SyntaxErrorsCarryPosition) {
  try {
    p("2x");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.position(), 1u);
  }
  EXPECT_THROW(p("x +"), SyntaxError);
  EXPECT_THROW(p("(x"), SyntaxError);
  EXPECT_THROW(p("x^y"), SyntaxError);
  EXPECT_THROW(p("x^2^3"), SyntaxError);
  EXPECT_THROW(p("x^-1"), SyntaxError);
  EXPECT_THROW(p("x^1.5"), SyntaxError);
  EXPECT_THROW(p("log(x)"), SyntaxError);
  EXPECT_THROW(p("x/0"), SyntaxError);
  EXPECT_THROW(p("x $ y"), SyntaxError);
  EXPECT_THROW(p(""), SyntaxError);
}

TEST(Parser, UndeclaredNamesAreRejected) {
  EXPECT_THROW(p("x + w"), UndeclaredName);
  try {
    p("q*x");
  } catch (const UndeclaredName& e) {
    EXPECT_NE(std::string(e.what()).find("q"), std::string::npos);
  }
}

TEST(Parser, NameTableDistinguishesParameters) {
  NameTable table;
  table.variables = {"l_x", "l_y", "l_z"};
  table.parameters = {"I_x"};
  const Expr e = parse("l_x/I_x", table);
  ASSERT_EQ(e.kind(), Expr::Kind::kDiv);
  EXPECT_EQ(e.lhs().kind(), Expr::Kind::kVariable);
  EXPECT_EQ(e.rhs().kind(), Expr::Kind::kParameter);
}

TEST(Eval, DomainErrors) {
  EXPECT_THROW(ev("sqrt(x)", -1), DomainError);
  EXPECT_THROW(ev("1/(x-1)", 1), DomainError);
  EXPECT_THROW(eval(p("x"), {}), std::invalid_argument);
}

TEST(Eval, ExactEvaluation) {
  const auto v = eval_exact(p("x^2/3 + 1/2"), {{"x", Rational(1, 2)}});
  ASSERT_TRUE(v);
  EXPECT_EQ(*v, Rational(7, 12));
  EXPECT_FALSE(eval_exact(p("sin(x)"), {{"x", Rational(0)}}));
}

TEST(Printer, MinimalParentheses) {
  EXPECT_EQ(to_string(p("x - (y - z)")), "x - (y - z)");
  EXPECT_EQ(to_string(p("(x - y) - z")), "x - y - z");
  EXPECT_EQ(to_string(p("x*(y + z)")), "x*(y + z)");
  EXPECT_EQ(to_string(p("(x^2)^3")), "(x^2)^3");
  EXPECT_EQ(to_string(simplify(p("(x^2)^3"))), "x^6");
  EXPECT_EQ(to_string(p("(-x)^2")), "(-x)^2");
  EXPECT_EQ(to_string(p("-x^2")), "-x^2");
  EXPECT_EQ(to_string(p("sin(x)*cos(y)")), "sin(x)*cos(y)");
}

TEST(Simplify, Identities) {
  EXPECT_EQ(to_string(simplify(p("0 + x*1"))), "x");
  EXPECT_EQ(to_string(simplify(p("x*0 + y"))), "y");
  EXPECT_EQ(to_string(simplify(p("x^1 + y^0"))), "x + 1");
  EXPECT_EQ(to_string(simplify(p("2*3*x"))), "6*x");
  EXPECT_EQ(to_string(simplify(p("x/2"))), "1/2*x");
  EXPECT_EQ(to_string(simplify(p("x - x"))), "0");
  EXPECT_EQ(to_string(simplify(p("x*y - y*x"))), "0");
  EXPECT_EQ(to_string(simplify(p("sin(0) + cos(0) + sqrt(4)"))), "3");
}

TEST(Differentiate, BasicRules) {
  EXPECT_EQ(to_string(differentiate(p("x^3"), "x")), "3*x^2");
  EXPECT_EQ(to_string(differentiate(p("x*y*z"), "y")), "x*z");
  EXPECT_EQ(to_string(differentiate(p("y"), "x")), "0");
  EXPECT_EQ(to_string(differentiate(p("sin(x)"), "x")), "cos(x)");
  EXPECT_EQ(to_string(differentiate(p("cos(x)"), "x")), "-sin(x)");
  EXPECT_EQ(to_string(differentiate(p("exp(x)"), "x")), "exp(x)");
  EXPECT_DOUBLE_EQ(eval(differentiate(p("sqrt(x)"), "x"), {{"x", 4.0}}), 0.25);
  EXPECT_DOUBLE_EQ(eval(differentiate(p("1/x"), "x"), {{"x", 2.0}}), -0.25);
}

TEST(Substitute, ReplacesNames) {
  const Expr e = substitute(p("x*y + z"), {{"y", Expr::constant(2)}, {"z", p("x^2")}});
  EXPECT_DOUBLE_EQ(eval(e, {{"x", 3.0}}), 15.0);
  EXPECT_EQ(free_names(e), std::set<std::string>{"x"});
}

TEST(Eval, AgreesWithExtendedPrecisionOracle) {
  Gen gen(5);
  const auto& vars = space_names();
  for (int i = 0; i < 200; ++i) {
    const Expr e = gen.expr(vars, 5);
    const Binding b = gen.binding(vars);
    const double a = eval(e, b);
    const long double ref = eval_long(e, std::map<std::string, long double>(b.begin(), b.end()));
    EXPECT_LE(std::abs(a - static_cast<double>(ref)), 1e-12 * std::max(1.0, std::abs(a)));
  }
}

TEST(CompiledExpr, MatchesTreeEvaluation) {
  Gen gen(7);
  const std::vector<std::string> slots = space_names();
  for (int i = 0; i < 200; ++i) {
    const Expr e = gen.expr(slots, 5);
    const CompiledExpr c(e, slots);
    const Binding b = gen.binding(slots);
    const std::array<double, 3> v = {b.at("x1"), b.at("x2"), b.at("x3")};
    EXPECT_EQ(c(v), eval(e, b)) << to_string(e);
  }
}

// Derivatives agree with central differences.
TEST(ExprProperty, DerivativeMatchesFiniteDifference) {
  Gen gen(1001);
  const auto& vars = space_names();
  const double delta = 1e-6;
  int checked = 0;
  for (int n = 0; n < 100; ++n) {
    const Expr e = gen.expr(vars, 6);
    const std::string& x = gen.variable(vars);
    const Expr d = differentiate(e, x);
    for (int k = 0; k < 100; ++k) {
      Binding b = gen.binding(vars);
      const double exact = eval(d, b);
      if (std::abs(exact) <= 1e-8) continue;
      std::map<std::string, long double> plus(b.begin(), b.end()), minus = plus;
      plus[x] += delta;
      minus[x] -= delta;
      const long double fd = (eval_long(e, plus) - eval_long(e, minus)) / (2 * delta);
      ASSERT_LE(std::abs(static_cast<double>(fd) - exact), 1e-5 * std::abs(exact))
          << "d/d" << x << " of " << to_string(e) << " = " << to_string(d);
      ++checked;
    }
  }
  EXPECT_GT(checked, 3000);
}

TEST(ExprProperty, SimplifyPreservesValue) {
  Gen gen(1002);
  const auto& vars = space_names();
  for (int n = 0; n < 200; ++n) {
    const Expr e = gen.expr(vars, 6);
    const Expr s = simplify(e);
    for (int k = 0; k < 100; ++k) {
      const Binding b = gen.binding(vars);
      const double a = eval(e, b);
      ASSERT_LE(std::abs(a - eval(s, b)), 1e-12 * std::max(1.0, std::abs(a)))
          << to_string(e) << " vs " << to_string(s);
    }
  }
}

TEST(ExprProperty, PrintParseRoundTrip) {
  Gen gen(1003);
  const auto& vars = space_names();
  const std::set<std::string> declared(vars.begin(), vars.end());
  for (int n = 0; n < 300; ++n) {
    const Expr e = gen.expr(vars, 6);
    const Expr back = parse(to_string(e), declared);
    for (int k = 0; k < 20; ++k) {
      const Binding b = gen.binding(vars);
      const double a = eval(e, b);
      ASSERT_LE(std::abs(a - eval(back, b)), 1e-12 * std::max(1.0, std::abs(a))) << to_string(e);
    }
  }
  for (int n = 0; n < 300; ++n) {
    const Expr e = gen.polynomial_expr(vars, 6);
    const Expr back = parse(to_string(e), declared);
    for (int k = 0; k < 10; ++k) {
      const ExactBinding b = gen.exact_binding(vars);
      ASSERT_EQ(*eval_exact(e, b), *eval_exact(back, b)) << to_string(e);
    }
  }
}

// Exact agreement at random rational points decides polynomial identity.
TEST(ExprProperty, PolynomialFormIsCanonical) {
  Gen gen(1004);
  const auto& vars = space_names();
  int identical = 0;
  for (int n = 0; n < 300; ++n) {
    const Expr e1 = gen.polynomial_expr(vars, 5);
    Expr e2;
    switch (n % 3) {
      case 0: e2 = to_polynomial(e1, vars)->to_expr(); break;
      case 1: e2 = Expr::add(e1, Expr::sub(gen.polynomial_expr(vars, 3), gen.polynomial_expr(vars, 3))); break;
      default: e2 = gen.polynomial_expr(vars, 5); break;
    }
    const auto diff = to_polynomial(Expr::sub(e1, e2), vars);
    ASSERT_TRUE(diff);
    bool agree = true;
    for (int k = 0; k < 50 && agree; ++k) {
      const ExactBinding b = gen.exact_binding(vars);
      agree = *eval_exact(e1, b) == *eval_exact(e2, b);
    }
    EXPECT_EQ(diff->is_zero(), agree) << to_string(e1) << " vs " << to_string(e2);
    identical += agree;
  }
  EXPECT_GT(identical, 90);
}

}  // namespace
}  // namespace nambu
