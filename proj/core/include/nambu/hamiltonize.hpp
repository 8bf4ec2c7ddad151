#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nambu/compiled_expr.hpp"
#include "nambu/expr.hpp"
#include "nambu/fields.hpp"

namespace nambu {

using MomentumNames = std::array<std::string, 3>;

// p1,p2,p3 for the default space variables x1,x2,x3; otherwise "p_" followed
// by the part of each variable name after its last underscore (l_x -> p_x,
// y -> p_y). Falls back to p1,p2,p3 when that would collide with a declared
// name.
MomentumNames default_momentum_names(const SpaceVars& space_vars,
                                     const std::vector<std::string>& params = {});

// H(r, p) = p . A(r) + V(r), linear in the momenta.
struct SingularHamiltonian {
  VectorField3 drift;
  ScalarField potential;
  MomentumNames momenta;

  const SpaceVars& space_vars() const { return drift.space_vars; }
  const std::vector<std::string>& params() const { return drift.params; }

  // The full Hamiltonian with the momenta as variables.
  Expr expression() const;
};

struct PhaseState {
  Vec3 r{};
  Vec3 p{};
  double t = 0.0;
};

// A = grad(h) x grad(g); V defaults to the zero field.
SingularHamiltonian build_hamiltonian(const ScalarField& h, const ScalarField& g,
                                      const std::optional<ScalarField>& potential = {});
// Hamiltonization of a given first-order field without knowing h, g.
SingularHamiltonian from_vector_field(const VectorField3& drift,
                                      const std::optional<ScalarField>& potential = {});

double eval_H(const SingularHamiltonian& hamiltonian, const PhaseState& state,
              const Binding& params = {});

struct CanonicalRhs {
  Vec3 rdot{};
  Vec3 pdot{};
};

// rdot_i = A_i(r); pdot_j = -sum_i p_i dA_i/dx_j(r) - dV/dx_j(r).
CanonicalRhs canonical_rhs(const SingularHamiltonian& hamiltonian, const PhaseState& state,
                           const Binding& params = {});

// The six right-hand sides {dH/dp_i, -dH/dx_j} as simplified expressions over
// space variables, momenta and parameters.
struct CanonicalEquations {
  std::array<Expr, 3> rdot;
  std::array<Expr, 3> pdot;
};
CanonicalEquations canonical_equations(const SingularHamiltonian& hamiltonian);

// True iff dH/dp - grad(h) x grad(g) vanishes (symbolically when polynomial,
// otherwise by sampling).
bool verify_recovers_nambu(const SingularHamiltonian& hamiltonian, const ScalarField& h,
                           const ScalarField& g, const SamplingOptions& options = {});

// The canonical equations compiled for repeated evaluation. Parameters must be
// bound at construction.
class CompiledHamiltonian {
 public:
  CompiledHamiltonian(const SingularHamiltonian& hamiltonian, const Binding& params = {});

  Vec3 rdot(const Vec3& r) const;
  Vec3 pdot(const Vec3& r, const Vec3& p) const;
  double energy(const Vec3& r, const Vec3& p) const;

 private:
  std::vector<double> slots(const Vec3& r, const Vec3& p) const;

  std::vector<double> param_values_;
  std::array<CompiledExpr, 3> rdot_;
  std::array<CompiledExpr, 3> pdot_;
  CompiledExpr energy_;
};

}  // namespace nambu
