#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nambu/expr.hpp"
#include "nambu/polynomial.hpp"

namespace nambu {

using Vec3 = std::array<double, 3>;
using SpaceVars = std::array<std::string, 3>;

inline const SpaceVars kDefaultSpaceVars = {"x1", "x2", "x3"};

// Scalar function on configuration space.
struct ScalarField {
  Expr expr;
  SpaceVars space_vars = kDefaultSpaceVars;
  std::vector<std::string> params;
};

struct VectorField3 {
  std::array<Expr, 3> components;
  SpaceVars space_vars = kDefaultSpaceVars;
  std::vector<std::string> params;

  const Expr& operator[](std::size_t i) const { return components[i]; }
};

// entries[i][j] = dA_i/dx_j.
struct Matrix3Expr {
  std::array<std::array<Expr, 3>, 3> entries;
};

// Validating constructors: every free name must be a space variable or a
// parameter, otherwise std::invalid_argument.
ScalarField make_scalar_field(Expr expr, SpaceVars space_vars = kDefaultSpaceVars,
                              std::vector<std::string> params = {});
VectorField3 make_vector_field(std::array<Expr, 3> components,
                               SpaceVars space_vars = kDefaultSpaceVars,
                               std::vector<std::string> params = {});

VectorField3 gradient(const ScalarField& f);
// Right-handed cross product. Throws std::invalid_argument when the space
// variables differ; parameter lists are merged.
VectorField3 cross(const VectorField3& a, const VectorField3& b);
// grad(h) x grad(g).
VectorField3 nambu_velocity(const ScalarField& h, const ScalarField& g);
Matrix3Expr jacobian(const VectorField3& a);
ScalarField dot(const VectorField3& a, const VectorField3& b);

VectorField3 operator+(const VectorField3& a, const VectorField3& b);
VectorField3 operator-(const VectorField3& a, const VectorField3& b);
// Componentwise product with a scalar field over the same space.
VectorField3 scale(const ScalarField& factor, const VectorField3& a);

// Replaces parameters by exact constants and drops them from `params`.
ScalarField bind_parameters(const ScalarField& f, const ExactBinding& values);
VectorField3 bind_parameters(const VectorField3& a, const ExactBinding& values);

// Space variables followed by parameters; the variable order used for
// canonical polynomial forms of fields.
std::vector<std::string> polynomial_variables(const SpaceVars& space_vars,
                                              const std::vector<std::string>& params);
std::optional<Polynomial> to_polynomial(const ScalarField& f);

double evaluate(const ScalarField& f, const Vec3& r, const Binding& params = {});
Vec3 evaluate(const VectorField3& a, const Vec3& r, const Binding& params = {});

enum class CheckMode { kSymbolic, kSampled };

struct SamplingOptions {
  double tolerance = 1e-9;
  std::size_t samples = 100;
  std::uint64_t seed = 42;
  // Values for parameters that are still symbolic.
  Binding params;
};

// Outcome of testing whether a scalar expression vanishes identically.
struct ZeroCheck {
  bool zero = false;
  CheckMode mode = CheckMode::kSymbolic;
  // Canonical polynomial of the residual in symbolic mode.
  std::optional<Polynomial> residual;
  // Largest |residual| over the samples in sampled mode (0 in symbolic mode).
  double max_residual = 0.0;
  // Largest value of the scale field over the samples.
  double scale = 0.0;
  std::size_t samples = 0;
  std::size_t rejected_samples = 0;
  std::uint64_t seed = 0;
};

// Symbolic when `f` is polynomial, otherwise sampled at options.samples
// seeded uniform points of [-1,1]^3. A sampled check passes iff
// max|f| <= tolerance * (1 + max scale), where `scale` (if given) is
// evaluated at the same points. Points where evaluation hits a DomainError
// are redrawn, up to 10 * samples attempts; beyond that DomainError is
// rethrown.
ZeroCheck check_zero(const ScalarField& f, const SamplingOptions& options,
                     const ScalarField* scale = nullptr);
// All three components; symbolic only if every component is polynomial. In
// sampled mode the residual is the largest component magnitude.
ZeroCheck check_zero(const VectorField3& a, const SamplingOptions& options,
                     const ScalarField* scale = nullptr);

// Deterministic sample points in [-1,1]^3. Coordinates come straight from the
// top 53 bits of std::mt19937_64, so sequences are identical across standard
// libraries for a given seed.
class PointSampler {
 public:
  explicit PointSampler(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi);
  Vec3 next() { return {uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)}; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace nambu
