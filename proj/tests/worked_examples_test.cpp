// Small hand-checked cases for every operation of the core library.
#include <gtest/gtest.h>

#include "generators.hpp"
#include "nambu/hamiltonize.hpp"
#include "nambu/invariants.hpp"

namespace nambu {
namespace {

using K = Expr::Kind;

const SpaceVars kXyz = {"x", "y", "z"};
const SpaceVars kL = {"l_x", "l_y", "l_z"};
const std::vector<std::string> kXyzList = {"x", "y", "z"};

ScalarField sf(std::string_view text, const SpaceVars& vars = kXyz, std::vector<std::string> params = {}) {
  NameTable names;
  names.variables.assign(vars.begin(), vars.end());
  names.parameters = params;
  return make_scalar_field(parse(text, names), vars, std::move(params));
}

VectorField3 vf(std::string_view a, std::string_view b, std::string_view c, const SpaceVars& vars = kXyz) {
  return make_vector_field({sf(a, vars).expr, sf(b, vars).expr, sf(c, vars).expr}, vars);
}

VectorField3 cubic() { return vf("2*x*(z^2-y^2)", "2*y*(x^2-z^2)", "2*z*(y^2-x^2)"); }

Polynomial poly(const Expr& e, const SpaceVars& vars = kXyz) {
  return *to_polynomial(e, std::vector<std::string>(vars.begin(), vars.end()));
}
Polynomial poly(std::string_view text, const SpaceVars& vars = kXyz) { return poly(sf(text, vars).expr, vars); }

bool is_zero(const Expr& e, const SpaceVars& vars = kXyz) { return poly(e, vars).is_zero(); }

std::vector<std::string> phase_vars(const SingularHamiltonian& h) {
  std::vector<std::string> v(h.space_vars().begin(), h.space_vars().end());
  v.insert(v.end(), h.momenta.begin(), h.momenta.end());
  return v;
}

TEST(ExprExamples, ParseTrees) {
  const Expr e = sf("2*x*(z^2 - y^2)").expr;
  ASSERT_EQ(e.kind(), K::kMul);
  ASSERT_EQ(e.lhs().kind(), K::kMul);
  EXPECT_TRUE(e.lhs().lhs().is_constant(2));
  EXPECT_EQ(e.lhs().rhs().name(), "x");
  ASSERT_EQ(e.rhs().kind(), K::kSub);
  ASSERT_EQ(e.rhs().lhs().kind(), K::kPow);
  EXPECT_EQ(e.rhs().lhs().lhs().name(), "z");
  EXPECT_EQ(e.rhs().lhs().exponent(), 2u);
  EXPECT_EQ(e.rhs().rhs().lhs().name(), "y");

  const Expr x = sf("x").expr;
  EXPECT_EQ(x.kind(), K::kVariable);
  EXPECT_EQ(x.name(), "x");

  const Expr left = sf("x*y*z").expr;
  ASSERT_EQ(left.lhs().kind(), K::kMul);
  EXPECT_EQ(left.rhs().name(), "z");
  const Expr right = sf("x*(y*z)").expr;
  testing::Gen gen(8001);
  for (int k = 0; k < 100; ++k) {
    const Binding b = gen.binding(kXyzList);
    EXPECT_DOUBLE_EQ(eval(left, b), eval(right, b));
  }
}

TEST(ExprExamples, Evaluation) {
  const Binding b = {{"x", 1.0}, {"y", 2.0}, {"z", 3.0}};
  EXPECT_EQ(eval(sf("x^2+y^2+z^2").expr, b), 14.0);
  EXPECT_EQ(eval(sf("x*y*z").expr, b), 6.0);
  EXPECT_EQ(eval(sf("0*sin(x)").expr, {{"x", 5.0}, {"y", 0.0}, {"z", 0.0}}), 0.0);
}

TEST(ExprExamples, Derivatives) {
  EXPECT_EQ(to_string(simplify(differentiate(sf("x*y*z").expr, "x"))), "y*z");
  EXPECT_TRUE(simplify(differentiate(sf("c", kXyz, {"c"}).expr, "x")).is_constant(0));
  EXPECT_EQ(to_string(simplify(differentiate(sf("x^2+y^2+z^2").expr, "x"))), "2*x");
}

TEST(ExprExamples, Simplification) {
  const Expr x = Expr::variable("x");
  EXPECT_EQ(to_string(simplify(Expr::mul(Expr::constant(1), Expr::add(x, Expr::constant(0))))), "x");
  EXPECT_EQ(to_string(simplify(Expr::mul(Expr::pow(x, 1), Expr::constant(1)))), "x");
}

TEST(FieldsExamples, Gradients) {
  const VectorField3 g = gradient(sf("(l_x^2+l_y^2+l_z^2)/2", kL));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(poly(g[i], kL), poly(kL[i], kL));
  const VectorField3 c = gradient(sf("7"));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE(c[i].is_constant(0));
  const VectorField3 n = gradient(sf("x^2+y^2+z^2"));
  EXPECT_EQ(poly(n[1]), poly("2*y"));
}

TEST(FieldsExamples, CrossProducts) {
  const VectorField3 a = vf("x*y", "sin(z)", "3");
  const VectorField3 aa = cross(a, a);
  EXPECT_TRUE(check_zero(aa, {}).zero);

  const VectorField3 c = cross(vf("y*z", "x*z", "x*y"), vf("2*x", "2*y", "2*z"));
  const VectorField3 expected = cubic();
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(poly(c[i]), poly(expected[i]));

  const Vec3 v = evaluate(cross(vf("1", "1", "1"), vf("1", "1/2", "1/3")), {0, 0, 0});
  EXPECT_DOUBLE_EQ(v[0], -1.0 / 6);
  EXPECT_DOUBLE_EQ(v[1], 2.0 / 3);
  EXPECT_DOUBLE_EQ(v[2], -1.0 / 2);
}

TEST(FieldsExamples, NambuVelocity) {
  const ScalarField h = sf("x*y + sin(z)");
  const VectorField3 same = nambu_velocity(h, h);
  EXPECT_TRUE(check_zero(same, {}).zero);
  const Vec3 v = evaluate(nambu_velocity(sf("x*y*z"), sf("x^2+y^2+z^2")), {1, 2, 3});
  EXPECT_EQ(v, (Vec3{10, -32, 18}));
}

TEST(FieldsExamples, Jacobians) {
  const Matrix3Expr id = jacobian(vf("x", "y", "z"));
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) EXPECT_TRUE(id.entries[r][c].is_constant(r == c ? 1 : 0));
  EXPECT_EQ(poly(jacobian(cubic()).entries[0][0]), poly("2*(z^2-y^2)"));
  const Matrix3Expr zero = jacobian(vf("5", "5", "5"));
  for (const auto& row : zero.entries)
    for (const auto& e : row) EXPECT_TRUE(e.is_constant(0));
}

TEST(FieldsExamples, DotProducts) {
  EXPECT_TRUE(is_zero(dot(nambu_velocity(sf("x*y*z"), sf("x^2+y^2+z^2")), gradient(sf("x*y*z"))).expr));
  EXPECT_TRUE(simplify(dot(vf("1", "0", "0"), vf("0", "1", "0")).expr).is_constant(0));
  EXPECT_TRUE(is_zero(dot(cubic(), vf("2*x", "2*y", "2*z")).expr));
}

TEST(HamiltonizeExamples, Evaluations) {
  const SingularHamiltonian cubic_h = build_hamiltonian(sf("x*y*z"), sf("x^2+y^2+z^2"));
  EXPECT_EQ(eval_H(cubic_h, {{1, 2, 3}, {1, 0, 0}, 0}, {}), 10.0);
  EXPECT_EQ(eval_H(cubic_h, {{1, 2, 3}, {1, 1, 1}, 0}, {}), -4.0);
  EXPECT_EQ(eval_H(cubic_h, {{1, 2, 3}, {0, 0, 0}, 0}, {}), 0.0);
  EXPECT_EQ(canonical_rhs(cubic_h, {{1, 2, 3}, {4, 5, 6}, 0}).rdot, (Vec3{10, -32, 18}));

  const SingularHamiltonian top = build_hamiltonian(sf("(l_x^2+l_y^2+l_z^2)/2", kL),
                                                    sf("(l_x^2/1+l_y^2/2+l_z^2/3)/2", kL));
  EXPECT_NEAR(eval_H(top, {{1, 1, 1}, {1, 1, 1}, 0}, {}), 0.0, 1e-15);
}

TEST(HamiltonizeExamples, FromVectorField) {
  const SingularHamiltonian a = from_vector_field(cubic());
  const SingularHamiltonian b = build_hamiltonian(sf("x*y*z"), sf("x^2+y^2+z^2"));
  EXPECT_EQ(*to_polynomial(a.expression(), phase_vars(a)), *to_polynomial(b.expression(), phase_vars(b)));

  const SingularHamiltonian zero = from_vector_field(vf("0", "0", "0"), sf("x^2 + y*z"));
  EXPECT_EQ(to_string(zero.expression()), "x^2 + y*z");
  const CanonicalRhs z = canonical_rhs(zero, {{1, 2, 3}, {7, 8, 9}, 0});
  EXPECT_EQ(z.rdot, (Vec3{0, 0, 0}));
  EXPECT_EQ(z.pdot, (Vec3{-2, -3, -2}));

  const SingularHamiltonian unit = from_vector_field(vf("1", "0", "0"));
  const CanonicalRhs u = canonical_rhs(unit, {{4, -1, 2}, {3, 1, 5}, 0});
  EXPECT_EQ(u.rdot, (Vec3{1, 0, 0}));
  EXPECT_EQ(u.pdot, (Vec3{0, 0, 0}));

  const CanonicalRhs linear = canonical_rhs(from_vector_field(vf("x", "y", "z")), {{0.5, 0.25, 2}, {1, 2, 3}, 0});
  EXPECT_EQ(linear.pdot, (Vec3{-1, -2, -3}));
}

TEST(HamiltonizeExamples, RecoveryVerdicts) {
  const ScalarField h = sf("(l_x^2+l_y^2+l_z^2)/2", kL);
  const ScalarField g = sf("(l_x^2/1+l_y^2/2+l_z^2/3)/2", kL);
  EXPECT_TRUE(verify_recovers_nambu(build_hamiltonian(h, g), h, g));
  EXPECT_TRUE(verify_recovers_nambu(build_hamiltonian(h, g, sf("l_x^2", kL)), h, g));

  const ScalarField ch = sf("x*y*z");
  const ScalarField cg = sf("x^2+y^2+z^2");
  EXPECT_TRUE(verify_recovers_nambu(from_vector_field(cubic(), sf("x^2")), ch, cg));
  EXPECT_FALSE(verify_recovers_nambu(from_vector_field(cubic() + vf("1", "0", "0")), ch, cg));
}

TEST(InvariantsExamples, Verdicts) {
  EXPECT_TRUE(verify_invariant(cubic(), {sf("5"), "c"}).pass);
  const InvariantReport r = verify_invariant(cubic(), {sf("x + y + z"), "s"});
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.residual_polynomial);
  const std::array<Rational, 3> at = {1, 2, 0};
  EXPECT_EQ(r.residual_polynomial->evaluate(std::span<const Rational>(at)), -4);
}

TEST(InvariantsExamples, Brackets) {
  const std::set<std::string> u = {"u1", "u2"};
  const std::vector<std::string> order = {"u1", "u2"};
  EXPECT_EQ(*to_polynomial(jacobian_bracket({parse("u1^2", u), parse("u2", u)}), order),
            *to_polynomial(parse("2*u1", u), order));
  EXPECT_TRUE(simplify(jacobian_bracket({parse("u1", u), parse("u1", u)})).is_constant(0));
}

TEST(InvariantsExamples, FunctionalChecks) {
  const std::set<std::string> u = {"u1", "u2"};
  const ScalarField u1 = sf("x^2+y^2+z^2");
  const ScalarField u2 = sf("x*y*z");
  EXPECT_TRUE(functional_combination_check(cubic(), u1, u2, {parse("u2", u), parse("u1", u)}).pass);
  const FunctionalPair degenerate = {parse("u1", u), parse("u1", u)};
  EXPECT_TRUE(functional_combination_check(vf("0", "0", "0"), u1, u2, degenerate).pass);
  EXPECT_FALSE(functional_combination_check(cubic(), u1, u2, degenerate).pass);
}

TEST(InvariantsExamples, Reconstruction) {
  const ScalarField u1 = sf("x^2 + y*z");
  const ScalarField u2 = sf("x*y - z^3");
  const VectorField3 a = nambu_velocity(u1, u2);
  const Reconstruction direct = reconstruct_nambu(a, u1, u2);
  ASSERT_TRUE(direct.success());
  EXPECT_FALSE(direct.swapped);
  EXPECT_EQ(*to_polynomial(*direct.h), *to_polynomial(u1));
  EXPECT_EQ(*to_polynomial(*direct.g), *to_polynomial(u2));

  const Reconstruction doubled = reconstruct_nambu(a + a, u1, u2);
  ASSERT_FALSE(doubled.success());
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(poly(doubled.residual[i]), poly(a[i]));
}

}  // namespace
}  // namespace nambu
