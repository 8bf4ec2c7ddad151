#include "nambu/hamiltonize.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace nambu {

MomentumNames default_momentum_names(const SpaceVars& space_vars,
                                     const std::vector<std::string>& params) {
  const MomentumNames fallback = {"p1", "p2", "p3"};
  if (space_vars == kDefaultSpaceVars) return fallback;
  MomentumNames names;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string& v = space_vars[i];
    const auto underscore = v.rfind('_');
    const std::string suffix =
        underscore == std::string::npos || underscore + 1 == v.size() ? v : v.substr(underscore + 1);
    names[i] = "p_" + suffix;
  }
  std::set<std::string> taken(space_vars.begin(), space_vars.end());
  taken.insert(params.begin(), params.end());
  const std::set<std::string> distinct(names.begin(), names.end());
  const bool clash = distinct.size() < 3 || std::any_of(names.begin(), names.end(), [&](const auto& n) {
                       return taken.count(n) > 0;
                     });
  if (!clash) return names;
  if (std::any_of(fallback.begin(), fallback.end(), [&](const auto& n) { return taken.count(n) > 0; })) {
    throw std::invalid_argument("cannot choose momentum names distinct from the declared names");
  }
  return fallback;
}

Expr SingularHamiltonian::expression() const {
  Expr sum = potential.expr;
  for (std::size_t i = 0; i < 3; ++i) {
    sum = sum + Expr::variable(momenta[i]) * drift[i];
  }
  return simplify(sum);
}

namespace {

ScalarField zero_potential(const VectorField3& drift) {
  return {Expr::constant(0), drift.space_vars, drift.params};
}

SingularHamiltonian assemble(VectorField3 drift, const std::optional<ScalarField>& potential) {
  ScalarField v = potential.value_or(zero_potential(drift));
  if (v.space_vars != drift.space_vars) {
    throw std::invalid_argument("potential is defined over different space variables");
  }
  for (const std::string& p : v.params) {
    if (std::find(drift.params.begin(), drift.params.end(), p) == drift.params.end()) {
      drift.params.push_back(p);
    }
  }
  v.params = drift.params;
  MomentumNames momenta = default_momentum_names(drift.space_vars, drift.params);
  return {std::move(drift), std::move(v), std::move(momenta)};
}

}  // namespace

SingularHamiltonian build_hamiltonian(const ScalarField& h, const ScalarField& g,
                                      const std::optional<ScalarField>& potential) {
  return assemble(nambu_velocity(h, g), potential);
}

SingularHamiltonian from_vector_field(const VectorField3& drift,
                                      const std::optional<ScalarField>& potential) {
  VectorField3 simplified = drift;
  for (auto& c : simplified.components) c = simplify(c);
  return assemble(std::move(simplified), potential);
}

CanonicalEquations canonical_equations(const SingularHamiltonian& hamiltonian) {
  CanonicalEquations eq;
  const Matrix3Expr jac = jacobian(hamiltonian.drift);
  const VectorField3 grad_v = gradient(hamiltonian.potential);
  for (std::size_t i = 0; i < 3; ++i) eq.rdot[i] = hamiltonian.drift[i];
  for (std::size_t j = 0; j < 3; ++j) {
    Expr sum = grad_v[j];
    for (std::size_t i = 0; i < 3; ++i) {
      sum = sum + Expr::variable(hamiltonian.momenta[i]) * jac.entries[i][j];
    }
    eq.pdot[j] = simplify(-sum);
  }
  return eq;
}

CompiledHamiltonian::CompiledHamiltonian(const SingularHamiltonian& hamiltonian,
                                         const Binding& params) {
  std::vector<std::string> slots(hamiltonian.space_vars().begin(), hamiltonian.space_vars().end());
  slots.insert(slots.end(), hamiltonian.momenta.begin(), hamiltonian.momenta.end());
  for (const auto& [name, value] : params) {
    slots.push_back(name);
    param_values_.push_back(value);
  }
  const CanonicalEquations eq = canonical_equations(hamiltonian);
  for (std::size_t i = 0; i < 3; ++i) {
    rdot_[i] = CompiledExpr(eq.rdot[i], slots);
    pdot_[i] = CompiledExpr(eq.pdot[i], slots);
  }
  energy_ = CompiledExpr(hamiltonian.expression(), slots);
}

std::vector<double> CompiledHamiltonian::slots(const Vec3& r, const Vec3& p) const {
  std::vector<double> values;
  values.reserve(6 + param_values_.size());
  values.insert(values.end(), r.begin(), r.end());
  values.insert(values.end(), p.begin(), p.end());
  values.insert(values.end(), param_values_.begin(), param_values_.end());
  return values;
}

Vec3 CompiledHamiltonian::rdot(const Vec3& r) const {
  // Momentum slots are present but never read by the position equations.
  const auto values = slots(r, Vec3{});
  return {rdot_[0](values), rdot_[1](values), rdot_[2](values)};
}

Vec3 CompiledHamiltonian::pdot(const Vec3& r, const Vec3& p) const {
  const auto values = slots(r, p);
  return {pdot_[0](values), pdot_[1](values), pdot_[2](values)};
}

double CompiledHamiltonian::energy(const Vec3& r, const Vec3& p) const {
  return energy_(slots(r, p));
}

double eval_H(const SingularHamiltonian& hamiltonian, const PhaseState& state,
              const Binding& params) {
  return CompiledHamiltonian(hamiltonian, params).energy(state.r, state.p);
}

CanonicalRhs canonical_rhs(const SingularHamiltonian& hamiltonian, const PhaseState& state,
                           const Binding& params) {
  const CompiledHamiltonian compiled(hamiltonian, params);
  return {compiled.rdot(state.r), compiled.pdot(state.r, state.p)};
}

bool verify_recovers_nambu(const SingularHamiltonian& hamiltonian, const ScalarField& h,
                           const ScalarField& g, const SamplingOptions& options) {
  // dH/dp, taken from the full expression rather than read off the drift.
  const Expr full = hamiltonian.expression();
  VectorField3 dh_dp{{}, hamiltonian.space_vars(), hamiltonian.params()};
  for (std::size_t i = 0; i < 3; ++i) {
    dh_dp.components[i] = differentiate(full, hamiltonian.momenta[i]);
  }
  return check_zero(dh_dp - nambu_velocity(h, g), options).zero;
}

}  // namespace nambu
