#include <cmath>
#include <stdexcept>

#include "nambu/compiled_expr.hpp"
#include "nambu/errors.hpp"
#include "nambu/fields.hpp"

namespace nambu {

double PointSampler::uniform(double lo, double hi) {
  const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

namespace {

struct SampledResult {
  double max_residual = 0.0;
  double max_scale = 0.0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

// Evaluates `residuals` (max magnitude) and `scale` at seeded points,
// redrawing points where evaluation leaves the domain.
SampledResult sample(const std::vector<Expr>& residuals, const Expr* scale,
                     const SpaceVars& space_vars, const SamplingOptions& options) {
  if (options.samples == 0) throw std::invalid_argument("at least one sample is required");
  std::vector<std::string> slots(space_vars.begin(), space_vars.end());
  std::vector<double> values(3, 0.0);
  for (const auto& [name, value] : options.params) {
    slots.push_back(name);
    values.push_back(value);
  }
  std::vector<CompiledExpr> programs;
  for (const Expr& e : residuals) programs.emplace_back(e, slots);
  std::optional<CompiledExpr> scale_program;
  if (scale != nullptr) scale_program.emplace(*scale, slots);

  PointSampler sampler(options.seed);
  SampledResult result;
  const std::size_t max_attempts = 10 * options.samples;
  std::size_t attempts = 0;
  while (result.accepted < options.samples) {
    if (attempts++ >= max_attempts) {
      throw DomainError("sampling: too many points outside the domain (" +
                        std::to_string(result.rejected) + " rejected)");
    }
    const Vec3 r = sampler.next();
    std::copy(r.begin(), r.end(), values.begin());
    try {
      double worst = 0.0;
      for (const CompiledExpr& p : programs) worst = std::max(worst, std::abs(p(values)));
      const double s = scale_program ? std::abs((*scale_program)(values)) : 0.0;
      if (!std::isfinite(worst) || !std::isfinite(s)) {
        ++result.rejected;
        continue;
      }
      result.max_residual = std::max(result.max_residual, worst);
      result.max_scale = std::max(result.max_scale, s);
      ++result.accepted;
    } catch (const DomainError&) {
      ++result.rejected;
    }
  }
  return result;
}

ZeroCheck finish_sampled(const SampledResult& s, const SamplingOptions& options) {
  ZeroCheck check;
  check.mode = CheckMode::kSampled;
  check.max_residual = s.max_residual;
  check.scale = s.max_scale;
  check.samples = s.accepted;
  check.rejected_samples = s.rejected;
  check.seed = options.seed;
  check.zero = s.max_residual <= options.tolerance * (1.0 + s.max_scale);
  return check;
}

}  // namespace

ZeroCheck check_zero(const ScalarField& f, const SamplingOptions& options,
                     const ScalarField* scale) {
  if (auto poly = to_polynomial(f); poly && !contains_function(f.expr)) {
    ZeroCheck check;
    check.mode = CheckMode::kSymbolic;
    check.zero = poly->is_zero();
    check.seed = options.seed;
    check.residual = std::move(*poly);
    return check;
  }
  const Expr* scale_expr = scale ? &scale->expr : nullptr;
  return finish_sampled(sample({f.expr}, scale_expr, f.space_vars, options), options);
}

ZeroCheck check_zero(const VectorField3& a, const SamplingOptions& options,
                     const ScalarField* scale) {
  const auto vars = polynomial_variables(a.space_vars, a.params);
  std::array<std::optional<Polynomial>, 3> polys;
  bool symbolic = true;
  for (std::size_t i = 0; i < 3 && symbolic; ++i) {
    polys[i] = to_polynomial(a[i], vars);
    symbolic = polys[i].has_value();
  }
  if (symbolic) {
    ZeroCheck check;
    check.mode = CheckMode::kSymbolic;
    check.seed = options.seed;
    check.zero = polys[0]->is_zero() && polys[1]->is_zero() && polys[2]->is_zero();
    // The first nonzero component stands in for the residual.
    check.residual = *polys[0];
    for (const auto& p : polys) {
      if (!p->is_zero()) {
        check.residual = *p;
        break;
      }
    }
    return check;
  }
  const Expr* scale_expr = scale ? &scale->expr : nullptr;
  return finish_sampled(
      sample({a[0], a[1], a[2]}, scale_expr, a.space_vars, options), options);
}

}  // namespace nambu
