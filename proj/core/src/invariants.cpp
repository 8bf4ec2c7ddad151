#include "nambu/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nambu/compiled_expr.hpp"
#include "nambu/errors.hpp"

namespace nambu {

std::string InvariantReport::residual_string() const {
  if (mode == CheckMode::kSymbolic && residual_polynomial) return residual_polynomial->to_string();
  std::ostringstream out;
  out.precision(17);
  out << max_residual;
  return out.str();
}

ScalarField invariant_residual(const VectorField3& drift, const ScalarField& u) {
  return dot(drift, gradient(u));
}

InvariantReport verify_invariant(const VectorField3& drift, const InvariantCandidate& u,
                                 const SamplingOptions& options) {
  if (!(options.tolerance > 0)) throw std::invalid_argument("tolerance must be positive");
  if (options.samples == 0) throw std::invalid_argument("at least one sample is required");

  const VectorField3 grad_u = gradient(u.u);
  const ScalarField residual = dot(drift, grad_u);
  // Scale of the individual terms, so cancellation is judged relatively.
  Expr magnitude = Expr::constant(0);
  for (std::size_t i = 0; i < 3; ++i) {
    Expr term = drift[i] * grad_u[i];
    magnitude = magnitude + Expr::pow(term, 2);
  }
  const ScalarField scale{Expr::apply(Function::kSqrt, magnitude), residual.space_vars,
                          residual.params};
  const ZeroCheck check = check_zero(residual, options, &scale);

  InvariantReport report;
  report.label = u.label;
  report.mode = check.mode;
  report.pass = check.zero;
  report.residual_polynomial = check.residual;
  report.max_residual = check.max_residual;
  report.tolerance = options.tolerance;
  report.samples = check.mode == CheckMode::kSampled ? check.samples : 0;
  report.seed = options.seed;
  if (check.rejected_samples > 0) {
    report.warnings.push_back(std::to_string(check.rejected_samples) +
                              " sample points were outside the domain and redrawn");
  }
  return report;
}

std::vector<std::vector<Rational>> rational_nullspace(std::vector<std::vector<Rational>> matrix,
                                                      std::size_t cols) {
  const std::size_t rows = matrix.size();
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && matrix[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(matrix[pivot], matrix[rank]);
    const Rational inv = 1 / matrix[rank][col];
    for (std::size_t c = col; c < cols; ++c) matrix[rank][c] *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || matrix[r][col] == 0) continue;
      const Rational factor = matrix[r][col];
      for (std::size_t c = col; c < cols; ++c) matrix[r][c] -= factor * matrix[rank][c];
    }
    pivot_cols.push_back(col);
    ++rank;
  }

  std::vector<std::vector<Rational>> basis;
  std::size_t next_pivot = 0;
  for (std::size_t col = 0; col < cols; ++col) {
    if (next_pivot < pivot_cols.size() && pivot_cols[next_pivot] == col) {
      ++next_pivot;
      continue;
    }
    std::vector<Rational> v(cols, 0);
    v[col] = 1;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) v[pivot_cols[r]] = -matrix[r][col];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Polynomial> find_polynomial_invariants(const VectorField3& drift, unsigned max_degree) {
  const std::vector<std::string> vars(drift.space_vars.begin(), drift.space_vars.end());
  std::array<Polynomial, 3> a;
  for (std::size_t i = 0; i < 3; ++i) {
    auto p = to_polynomial(drift[i], vars);
    if (!p) {
      throw NotPolynomial("component " + std::to_string(i + 1) + " (" + to_string(drift[i]) +
                          ") is not a polynomial");
    }
    if (p->variables().size() != 3) {
      throw NotPolynomial("component " + std::to_string(i + 1) +
                          " depends on unbound parameters");
    }
    a[i] = std::move(*p);
  }

  // Column k holds the coefficients of A . grad(m_k) for the k-th monomial.
  const std::vector<Exponents> monomials = monomials_up_to(3, max_degree);
  std::vector<Polynomial> images;
  images.reserve(monomials.size());
  std::map<Exponents, std::size_t, GrlexLess> row_of;
  for (const Exponents& m : monomials) {
    const Polynomial mono = Polynomial::monomial(vars, m, 1);
    Polynomial image(vars);
    for (std::size_t i = 0; i < 3; ++i) image += a[i] * mono.derivative(i);
    for (const auto& [e, c] : image.terms()) row_of.try_emplace(e, 0);
    images.push_back(std::move(image));
  }
  std::size_t next = 0;
  for (auto& [e, row] : row_of) row = next++;

  std::vector<std::vector<Rational>> matrix(row_of.size(),
                                            std::vector<Rational>(monomials.size(), 0));
  for (std::size_t k = 0; k < images.size(); ++k) {
    for (const auto& [e, c] : images[k].terms()) matrix[row_of.at(e)][k] = c;
  }

  std::vector<Polynomial> basis;
  for (const auto& v : rational_nullspace(std::move(matrix), monomials.size())) {
    Polynomial u(vars);
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k] != 0) u += Polynomial::monomial(vars, monomials[k], v[k]);
    }
    basis.push_back(std::move(u));
  }
  return basis;
}

Expr jacobian_bracket(const FunctionalPair& pair) {
  const Expr d11 = differentiate(pair.f1, pair.u1_name);
  const Expr d12 = differentiate(pair.f1, pair.u2_name);
  const Expr d21 = differentiate(pair.f2, pair.u1_name);
  const Expr d22 = differentiate(pair.f2, pair.u2_name);
  return simplify(d11 * d22 - d12 * d21);
}

namespace {

// sum_i |A_i| as a scale for sampled comparisons against A.
ScalarField drift_scale(const VectorField3& drift) {
  Expr sum = Expr::constant(0);
  for (std::size_t i = 0; i < 3; ++i) sum = sum + Expr::pow(drift[i], 2);
  return {Expr::apply(Function::kSqrt, sum), drift.space_vars, drift.params};
}

std::vector<std::string> warnings_for(const ScalarField& u1, const ScalarField& u2,
                                      const ZeroCheck& check, const SamplingOptions& options) {
  std::vector<std::string> warnings;
  if (auto w = independence_warning(u1, u2, options)) warnings.push_back(*w);
  if (check.rejected_samples > 0) {
    warnings.push_back(std::to_string(check.rejected_samples) +
                       " sample points were outside the domain and redrawn");
  }
  return warnings;
}

}  // namespace

CombinationReport functional_combination_check(const VectorField3& drift, const ScalarField& u1,
                                               const ScalarField& u2, const FunctionalPair& pair,
                                               const SamplingOptions& options) {
  CombinationReport report;
  report.bracket = jacobian_bracket(pair);
  const std::map<std::string, Expr, std::less<>> composition = {
      {pair.u1_name, u1.expr}, {pair.u2_name, u2.expr}};
  const ScalarField bracket_of_u{simplify(substitute(report.bracket, composition)),
                                 drift.space_vars, drift.params};
  const VectorField3 base = cross(gradient(u1), gradient(u2));
  report.residual = drift - scale(bracket_of_u, base);
  const ScalarField s = drift_scale(drift);
  report.check = check_zero(report.residual, options, &s);
  report.mode = report.check.mode;
  report.pass = report.check.zero;
  report.warnings = warnings_for(u1, u2, report.check, options);
  return report;
}

Reconstruction reconstruct_nambu(const VectorField3& drift, const ScalarField& u1,
                                 const ScalarField& u2, const SamplingOptions& options) {
  Reconstruction result;
  const ScalarField s = drift_scale(drift);
  const VectorField3 forward = nambu_velocity(u1, u2);

  result.residual = drift - forward;
  result.check = check_zero(result.residual, options, &s);
  if (result.check.zero) {
    result.h = u1;
    result.g = u2;
  } else {
    const VectorField3 swapped_residual = drift + forward;
    const ZeroCheck swapped_check = check_zero(swapped_residual, options, &s);
    if (swapped_check.zero) {
      result.h = u2;
      result.g = u1;
      result.swapped = true;
      result.residual = swapped_residual;
      result.check = swapped_check;
    }
  }
  result.warnings = warnings_for(u1, u2, result.check, options);
  return result;
}

std::optional<std::string> independence_warning(const ScalarField& u1, const ScalarField& u2,
                                                const SamplingOptions& options) {
  const VectorField3 g1 = gradient(u1);
  const VectorField3 g2 = gradient(u2);
  std::vector<std::string> slots(u1.space_vars.begin(), u1.space_vars.end());
  std::vector<double> values(3, 0.0);
  for (const auto& [name, value] : options.params) {
    slots.push_back(name);
    values.push_back(value);
  }
  std::array<CompiledExpr, 3> c1, c2;
  for (std::size_t i = 0; i < 3; ++i) {
    c1[i] = CompiledExpr(g1[i], slots);
    c2[i] = CompiledExpr(g2[i], slots);
  }
  PointSampler sampler(options.seed);
  for (std::size_t n = 0; n < std::max<std::size_t>(options.samples, 1); ++n) {
    const Vec3 r = sampler.next();
    std::copy(r.begin(), r.end(), values.begin());
    try {
      Vec3 a, b;
      for (std::size_t i = 0; i < 3; ++i) {
        a[i] = c1[i](values);
        b[i] = c2[i](values);
      }
      const Vec3 c = {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                      a[0] * b[1] - a[1] * b[0]};
      const double na = std::hypot(a[0], a[1], a[2]);
      const double nb = std::hypot(b[0], b[1], b[2]);
      const double nc = std::hypot(c[0], c[1], c[2]);
      if (std::isfinite(nc) && nc > 1e-10 * na * nb && na * nb > 0) return std::nullopt;
    } catch (const DomainError&) {
    }
  }
  return "gradients of the two candidates are parallel at every sampled point; "
         "they may not be functionally independent";
}

}  // namespace nambu
