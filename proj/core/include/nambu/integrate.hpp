#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nambu/fields.hpp"
#include "nambu/hamiltonize.hpp"

namespace nambu {

enum class Method { kRk4, kMidpoint };

std::string_view method_name(Method method);
// Throws std::invalid_argument for anything but "rk4" / "midpoint".
Method method_from_name(std::string_view name);

struct IntegrationOptions {
  double t_end = 1.0;
  double dt = 1e-3;
  Method method = Method::kRk4;
  // Keep every k-th state; the initial and final states are always kept.
  std::size_t store_every = 1;
  // Values for parameters that are still symbolic.
  Binding params;
};

inline constexpr int kMidpointMaxIterations = 50;
inline constexpr double kMidpointTolerance = 1e-13;

struct Trajectory {
  std::vector<double> times;
  std::vector<PhaseState> states;
  bool has_momentum = false;
  Method method = Method::kRk4;
  double dt = 0.0;
  // FNV-1a of the printed right-hand side.
  std::string system_hash;
  SpaceVars space_vars = kDefaultSpaceVars;
  MomentumNames momenta = {"p1", "p2", "p3"};
};

// Fixed-step integration of rdot = A(r) from t = 0 to t_end; the last step is
// shortened to land on t_end. Throws std::invalid_argument for non-positive
// dt/t_end or store_every == 0, StepDivergence on a non-finite state and
// MidpointNoConvergence when the implicit solve stalls.
Trajectory integrate_flow(const VectorField3& drift, const Vec3& r0,
                          const IntegrationOptions& options);

// The same on phase space with (rdot, pdot) from canonical_rhs().
Trajectory integrate_canonical(const SingularHamiltonian& hamiltonian, const Vec3& r0,
                               const Vec3& p0, const IntegrationOptions& options);

// A monitored quantity. `expr` may reference the space variables, and for
// canonical trajectories the momenta.
struct Quantity {
  std::string label;
  Expr expr;
};

Quantity quantity(std::string label, const ScalarField& f);
Quantity quantity(std::string label, const SingularHamiltonian& hamiltonian);

struct QuantityDrift {
  std::string label;
  double initial = 0.0;
  double max_drift = 0.0;
  double time_of_max_drift = 0.0;
};

struct ConservationReport {
  std::vector<QuantityDrift> quantities;

  // Throws std::out_of_range for an unknown label.
  const QuantityDrift& at(std::string_view label) const;
};

// Max |q(t) - q(0)| over the stored states. Throws std::invalid_argument for
// an empty trajectory.
ConservationReport conservation_report(const Trajectory& trajectory,
                                       std::span<const Quantity> quantities,
                                       const Binding& params = {});

// Header t,x1,x2,x3[,p1,p2,p3] (always those column names) and one
// row per stored state with 17 significant digits.
void write_csv(const Trajectory& trajectory, std::ostream& out);

}  // namespace nambu
