#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "nambu/errors.hpp"
#include "nambu/fields.hpp"
#include "oracles.hpp"

namespace nambu {
namespace {

using testing::eval_long;
using testing::Gen;
using testing::space_names;
using testing::widen;

const SpaceVars kXyz = {"x", "y", "z"};

ScalarField sf(std::string_view text, const SpaceVars& vars = kXyz,
               std::vector<std::string> params = {}) {
  NameTable names;
  names.variables.assign(vars.begin(), vars.end());
  names.parameters = params;
  return make_scalar_field(parse(text, names), vars, std::move(params));
}

Polynomial poly_of(const Expr& e, const SpaceVars& vars = kXyz) {
  return *to_polynomial(e, std::vector<std::string>(vars.begin(), vars.end()));
}

Polynomial poly_of(std::string_view text) { return poly_of(sf(text).expr); }

TEST(Fields, GradientOfSquaredNorm) {
  const VectorField3 grad = gradient(sf("x^2 + y^2 + z^2"));
  EXPECT_EQ(to_string(grad[0]), "2*x");
  EXPECT_EQ(to_string(grad[1]), "2*y");
  EXPECT_EQ(to_string(grad[2]), "2*z");
}

TEST(Fields, NambuVelocityOfCubicPair) {
  const VectorField3 a = nambu_velocity(sf("x*y*z"), sf("x^2 + y^2 + z^2"));
  EXPECT_EQ(poly_of(a[0]), poly_of("2*x*(z^2 - y^2)"));
  EXPECT_EQ(poly_of(a[1]), poly_of("2*y*(x^2 - z^2)"));
  EXPECT_EQ(poly_of(a[2]), poly_of("2*z*(y^2 - x^2)"));
}

TEST(Fields, CrossOfBasisVectors) {
  const VectorField3 c = cross(gradient(sf("x")), gradient(sf("y")));
  EXPECT_TRUE(c[0].is_constant(0));
  EXPECT_TRUE(c[1].is_constant(0));
  EXPECT_TRUE(c[2].is_constant(1));
}

TEST(Fields, CrossRequiresMatchingSpaceVariables) {
  EXPECT_THROW(cross(gradient(sf("x")), gradient(sf("x1", kDefaultSpaceVars))),
               std::invalid_argument);
}

TEST(Fields, MakeFieldValidatesNames) {
  const std::set<std::string> names = {"x", "y", "z", "w"};
  EXPECT_THROW(make_scalar_field(parse("x + w", names), kXyz), std::invalid_argument);
  EXPECT_NO_THROW(make_scalar_field(parse("x + w", names), kXyz, {"w"}));
}

TEST(Fields, JacobianOfLinearField) {
  const VectorField3 a = make_vector_field({sf("2*x + y").expr, sf("z").expr, sf("x*y").expr}, kXyz);
  const Matrix3Expr j = jacobian(a);
  EXPECT_TRUE(j.entries[0][0].is_constant(2));
  EXPECT_TRUE(j.entries[0][1].is_constant(1));
  EXPECT_TRUE(j.entries[1][2].is_constant(1));
  EXPECT_EQ(to_string(j.entries[2][0]), "y");
  EXPECT_EQ(to_string(j.entries[2][1]), "x");
}

TEST(Fields, BindParametersIsExact) {
  const ScalarField f = sf("x^2/I + y", kXyz, {"I"});
  const ScalarField bound = bind_parameters(f, {{"I", Rational(3)}});
  EXPECT_TRUE(bound.params.empty());
  EXPECT_EQ(poly_of(bound.expr), poly_of("x^2/3 + y"));
}

TEST(Fields, EvaluateWithParameters) {
  const ScalarField f = sf("a*x + y*z", kXyz, {"a"});
  EXPECT_DOUBLE_EQ(evaluate(f, {1, 2, 3}, {{"a", 0.5}}), 6.5);
}

TEST(CheckZero, SymbolicWhenPolynomial) {
  const ZeroCheck yes = check_zero(sf("(x+y)^2 - x^2 - 2*x*y - y^2"), {});
  EXPECT_EQ(yes.mode, CheckMode::kSymbolic);
  EXPECT_TRUE(yes.zero);
  const ZeroCheck no = check_zero(sf("x*y - y"), {});
  EXPECT_FALSE(no.zero);
  ASSERT_TRUE(no.residual);
  EXPECT_EQ(no.residual->to_string(), "x*y - y");
}

TEST(CheckZero, SampledOtherwise) {
  SamplingOptions options;
  const ZeroCheck yes = check_zero(sf("sin(x)^2 + cos(x)^2 - 1"), options);
  EXPECT_EQ(yes.mode, CheckMode::kSampled);
  EXPECT_TRUE(yes.zero);
  EXPECT_EQ(yes.samples, 100u);
  EXPECT_EQ(yes.seed, 42u);
  const ZeroCheck no = check_zero(sf("sin(x) - x"), options);
  EXPECT_FALSE(no.zero);
  EXPECT_GT(no.max_residual, 1e-3);
}

TEST(CheckZero, DeterministicForFixedSeed) {
  SamplingOptions options;
  options.seed = 7;
  const ScalarField f = sf("exp(x) - 1 - x");
  EXPECT_EQ(check_zero(f, options).max_residual, check_zero(f, options).max_residual);
  options.seed = 8;
  const double other = check_zero(f, options).max_residual;
  options.seed = 7;
  EXPECT_NE(other, check_zero(f, options).max_residual);
}

TEST(CheckZero, RedrawsOutsideDomain) {
  const ZeroCheck check = check_zero(sf("sqrt(x) - sqrt(x)*1"), {});
  EXPECT_TRUE(check.zero);
  EXPECT_GT(check.rejected_samples, 0u);
  EXPECT_THROW(check_zero(sf("sqrt(-1 - x^2) + sin(x)"), {}), DomainError);
}

TEST(Sampler, UniformOnBox) {
  PointSampler sampler(42);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 p = sampler.next();
    for (double v : p) {
      EXPECT_GE(v, -1.0);
      EXPECT_LT(v, 1.0);
    }
  }
}

// cross(a, b) + cross(b, a) vanishes.
TEST(FieldsProperty, CrossIsAntisymmetric) {
  Gen gen(3001);
  const auto& vars = space_names();
  for (int n = 0; n < 50; ++n) {
    const VectorField3 a = make_vector_field(
        {gen.polynomial_expr(vars, 3), gen.polynomial_expr(vars, 3), gen.polynomial_expr(vars, 3)});
    const VectorField3 b = make_vector_field(
        {gen.polynomial_expr(vars, 3), gen.polynomial_expr(vars, 3), gen.polynomial_expr(vars, 3)});
    const ZeroCheck check = check_zero(cross(a, b) + cross(b, a), {});
    EXPECT_EQ(check.mode, CheckMode::kSymbolic);
    EXPECT_TRUE(check.zero);
  }
  for (int n = 0; n < 50; ++n) {
    const VectorField3 a = make_vector_field({gen.expr(vars, 4), gen.expr(vars, 4), gen.expr(vars, 4)});
    const VectorField3 b = make_vector_field({gen.expr(vars, 4), gen.expr(vars, 4), gen.expr(vars, 4)});
    const VectorField3 sum = cross(a, b) + cross(b, a);
    for (int k = 0; k < 100; ++k) {
      const Vec3 v = evaluate(sum, gen.point());
      for (double c : v) ASSERT_LE(std::abs(c), 1e-10);
    }
  }
}

TEST(FieldsProperty, NambuVelocityIsOrthogonalToGradients) {
  Gen gen(3002);
  const auto& vars = space_names();
  for (int n = 0; n < 40; ++n) {
    const ScalarField h = make_scalar_field(gen.polynomial(vars, 3).to_expr());
    const ScalarField g = make_scalar_field(gen.polynomial(vars, 3).to_expr());
    const VectorField3 a = nambu_velocity(h, g);
    EXPECT_TRUE(to_polynomial(dot(a, gradient(h)))->is_zero());
    EXPECT_TRUE(to_polynomial(dot(a, gradient(g)))->is_zero());
  }
  for (int n = 0; n < 40; ++n) {
    const ScalarField h = make_scalar_field(gen.expr(vars, 4));
    const ScalarField g = make_scalar_field(gen.expr(vars, 4));
    const VectorField3 a = nambu_velocity(h, g);
    const VectorField3 gh = gradient(h);
    const VectorField3 gg = gradient(g);
    for (int k = 0; k < 100; ++k) {
      const Vec3 r = gen.point();
      const Vec3 av = evaluate(a, r), hv = evaluate(gh, r), gv = evaluate(gg, r);
      double scale = 0.0;
      for (std::size_t i = 0; i < 3; ++i) scale = std::max(scale, std::abs(av[i] * hv[i]) + std::abs(av[i] * gv[i]));
      const double dh = av[0] * hv[0] + av[1] * hv[1] + av[2] * hv[2];
      const double dg = av[0] * gv[0] + av[1] * gv[1] + av[2] * gv[2];
      ASSERT_LE(std::abs(dh), 1e-9 * std::max(1.0, scale));
      ASSERT_LE(std::abs(dg), 1e-9 * std::max(1.0, scale));
    }
  }
}

TEST(FieldsProperty, JacobianMatchesFiniteDifferences) {
  Gen gen(3003);
  const auto& vars = space_names();
  const long double delta = 1e-6L;
  for (int n = 0; n < 40; ++n) {
    const VectorField3 a = make_vector_field({gen.expr(vars, 5), gen.expr(vars, 5), gen.expr(vars, 5)});
    const Matrix3Expr j = jacobian(a);
    for (int k = 0; k < 25; ++k) {
      const Binding b = gen.binding(vars);
      for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 3; ++c) {
          auto plus = widen(b), minus = widen(b);
          plus[vars[c]] += delta;
          minus[vars[c]] -= delta;
          const double fd = static_cast<double>(
              (eval_long(a[r], plus) - eval_long(a[r], minus)) / (2 * delta));
          const double exact = eval(j.entries[r][c], b);
          if (std::abs(exact) > 1e-8) {
            ASSERT_LE(std::abs(fd - exact), 1e-5 * std::abs(exact)) << to_string(a[r]);
          } else {
            ASSERT_LE(std::abs(fd), 1e-8) << to_string(a[r]);
          }
        }
      }
    }
  }
}

}  // namespace
}  // namespace nambu
