#include "nambu/fields.hpp"

#include <algorithm>
#include <stdexcept>

#include "nambu/compiled_expr.hpp"

namespace nambu {
namespace {

void check_names(const Expr& expr, const SpaceVars& space_vars,
                 const std::vector<std::string>& params) {
  for (const std::string& name : free_names(expr)) {
    if (std::find(space_vars.begin(), space_vars.end(), name) != space_vars.end()) continue;
    if (std::find(params.begin(), params.end(), name) != params.end()) continue;
    throw std::invalid_argument("'" + name + "' is neither a space variable nor a parameter");
  }
}

void check_same_space(const SpaceVars& a, const SpaceVars& b) {
  if (a != b) throw std::invalid_argument("fields are defined over different space variables");
}

std::vector<std::string> merge_params(const std::vector<std::string>& a,
                                      const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  for (const auto& name : b) {
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
  }
  return out;
}

std::vector<std::string> slot_names(const SpaceVars& space_vars, const Binding& params) {
  std::vector<std::string> slots(space_vars.begin(), space_vars.end());
  for (const auto& [name, value] : params) slots.push_back(name);
  return slots;
}

std::vector<double> slot_values(const Vec3& r, const Binding& params) {
  std::vector<double> values(r.begin(), r.end());
  for (const auto& [name, value] : params) values.push_back(value);
  return values;
}

}  // namespace

ScalarField make_scalar_field(Expr expr, SpaceVars space_vars, std::vector<std::string> params) {
  check_names(expr, space_vars, params);
  return {std::move(expr), std::move(space_vars), std::move(params)};
}

VectorField3 make_vector_field(std::array<Expr, 3> components, SpaceVars space_vars,
                               std::vector<std::string> params) {
  for (const Expr& c : components) check_names(c, space_vars, params);
  return {std::move(components), std::move(space_vars), std::move(params)};
}

VectorField3 gradient(const ScalarField& f) {
  VectorField3 out{{}, f.space_vars, f.params};
  for (std::size_t i = 0; i < 3; ++i) {
    out.components[i] = differentiate(f.expr, f.space_vars[i]);
  }
  return out;
}

VectorField3 cross(const VectorField3& a, const VectorField3& b) {
  check_same_space(a.space_vars, b.space_vars);
  VectorField3 out{{}, a.space_vars, merge_params(a.params, b.params)};
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t j = (i + 1) % 3;
    const std::size_t k = (i + 2) % 3;
    out.components[i] = simplify(a[j] * b[k] - a[k] * b[j]);
  }
  return out;
}

VectorField3 nambu_velocity(const ScalarField& h, const ScalarField& g) {
  check_same_space(h.space_vars, g.space_vars);
  return cross(gradient(h), gradient(g));
}

Matrix3Expr jacobian(const VectorField3& a) {
  Matrix3Expr m;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      m.entries[i][j] = differentiate(a[i], a.space_vars[j]);
    }
  }
  return m;
}

ScalarField dot(const VectorField3& a, const VectorField3& b) {
  check_same_space(a.space_vars, b.space_vars);
  Expr sum = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  return {simplify(sum), a.space_vars, merge_params(a.params, b.params)};
}

VectorField3 operator+(const VectorField3& a, const VectorField3& b) {
  check_same_space(a.space_vars, b.space_vars);
  VectorField3 out{{}, a.space_vars, merge_params(a.params, b.params)};
  for (std::size_t i = 0; i < 3; ++i) out.components[i] = simplify(a[i] + b[i]);
  return out;
}

VectorField3 operator-(const VectorField3& a, const VectorField3& b) {
  check_same_space(a.space_vars, b.space_vars);
  VectorField3 out{{}, a.space_vars, merge_params(a.params, b.params)};
  for (std::size_t i = 0; i < 3; ++i) out.components[i] = simplify(a[i] - b[i]);
  return out;
}

VectorField3 scale(const ScalarField& factor, const VectorField3& a) {
  check_same_space(factor.space_vars, a.space_vars);
  VectorField3 out{{}, a.space_vars, merge_params(factor.params, a.params)};
  for (std::size_t i = 0; i < 3; ++i) out.components[i] = simplify(factor.expr * a[i]);
  return out;
}

namespace {

std::map<std::string, Expr, std::less<>> constants_for(const ExactBinding& values) {
  std::map<std::string, Expr, std::less<>> out;
  for (const auto& [name, value] : values) out.emplace(name, Expr::constant(value));
  return out;
}

std::vector<std::string> remaining_params(const std::vector<std::string>& params,
                                          const ExactBinding& values) {
  std::vector<std::string> out;
  for (const auto& name : params) {
    if (values.find(name) == values.end()) out.push_back(name);
  }
  return out;
}

}  // namespace

ScalarField bind_parameters(const ScalarField& f, const ExactBinding& values) {
  return {simplify(substitute(f.expr, constants_for(values))), f.space_vars,
          remaining_params(f.params, values)};
}

VectorField3 bind_parameters(const VectorField3& a, const ExactBinding& values) {
  const auto replacements = constants_for(values);
  VectorField3 out{{}, a.space_vars, remaining_params(a.params, values)};
  for (std::size_t i = 0; i < 3; ++i) {
    out.components[i] = simplify(substitute(a[i], replacements));
  }
  return out;
}

std::vector<std::string> polynomial_variables(const SpaceVars& space_vars,
                                              const std::vector<std::string>& params) {
  std::vector<std::string> vars(space_vars.begin(), space_vars.end());
  vars.insert(vars.end(), params.begin(), params.end());
  return vars;
}

std::optional<Polynomial> to_polynomial(const ScalarField& f) {
  return to_polynomial(f.expr, polynomial_variables(f.space_vars, f.params));
}

double evaluate(const ScalarField& f, const Vec3& r, const Binding& params) {
  const auto slots = slot_names(f.space_vars, params);
  return CompiledExpr(f.expr, slots)(slot_values(r, params));
}

Vec3 evaluate(const VectorField3& a, const Vec3& r, const Binding& params) {
  const auto slots = slot_names(a.space_vars, params);
  const auto values = slot_values(r, params);
  Vec3 out{};
  for (std::size_t i = 0; i < 3; ++i) out[i] = CompiledExpr(a[i], slots)(values);
  return out;
}

}  // namespace nambu
