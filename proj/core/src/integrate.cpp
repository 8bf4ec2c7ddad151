#include "nambu/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>

#include "nambu/compiled_expr.hpp"
#include "nambu/errors.hpp"

namespace nambu {

std::string_view method_name(Method method) {
  return method == Method::kRk4 ? "rk4" : "midpoint";
}

Method method_from_name(std::string_view name) {
  if (name == "rk4") return Method::kRk4;
  if (name == "midpoint") return Method::kMidpoint;
  throw std::invalid_argument("unknown integration method '" + std::string(name) + "'");
}

namespace {

template <std::size_t N>
using State = std::array<double, N>;

template <std::size_t N>
using Rhs = std::function<State<N>(const State<N>&)>;

template <std::size_t N>
State<N> axpy(const State<N>& y, double h, const State<N>& k) {
  State<N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + h * k[i];
  return out;
}

// The steps return the increment y1 - y0; run() adds it with compensated
// summation so that roundoff does not random-walk the state.
template <std::size_t N>
State<N> rk4_increment(const Rhs<N>& f, const State<N>& y, double h) {
  const State<N> k1 = f(y);
  const State<N> k2 = f(axpy(y, h / 2, k1));
  const State<N> k3 = f(axpy(y, h / 2, k2));
  const State<N> k4 = f(axpy(y, h, k3));
  State<N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  return out;
}

template <std::size_t N>
bool finite(const State<N>& y) {
  return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

// y1 = y0 + h f((y0 + y1)/2), by fixed-point iteration started from an
// explicit Euler predictor.
template <std::size_t N>
State<N> midpoint_increment(const Rhs<N>& f, const State<N>& y, double h, double t) {
  auto sweep = [&](const State<N>& delta) {
    State<N> mid;
    for (std::size_t i = 0; i < N; ++i) mid[i] = y[i] + 0.5 * delta[i];
    const State<N> k = f(mid);
    State<N> out;
    for (std::size_t i = 0; i < N; ++i) out[i] = h * k[i];
    return out;
  };
  State<N> delta = sweep(State<N>{});
  for (int iteration = 0; iteration < kMidpointMaxIterations; ++iteration) {
    const State<N> candidate = sweep(delta);
    if (!finite(candidate)) return candidate;
    double change = 0.0;
    double size = 1.0;
    for (std::size_t i = 0; i < N; ++i) {
      change = std::max(change, std::abs(candidate[i] - delta[i]));
      size = std::max(size, std::abs(y[i] + candidate[i]));
    }
    delta = candidate;
    if (change <= kMidpointTolerance * size) {
      // A couple of extra sweeps remove the bias a truncated iteration leaves
      // in quadratic invariants.
      for (int polish = 0; polish < 2; ++polish) delta = sweep(delta);
      return delta;
    }
  }
  throw MidpointNoConvergence(t);
}

void validate(const IntegrationOptions& options) {
  if (!(options.dt > 0) || !std::isfinite(options.dt)) {
    throw std::invalid_argument("dt must be positive");
  }
  if (!(options.t_end > 0) || !std::isfinite(options.t_end)) {
    throw std::invalid_argument("t_end must be positive");
  }
  if (options.store_every == 0) throw std::invalid_argument("store_every must be at least 1");
}

template <std::size_t N>
void run(const Rhs<N>& f, State<N> y, const IntegrationOptions& options,
         const std::function<void(double, const State<N>&)>& store) {
  validate(options);
  // Steps of size dt, then one shortened step onto t_end. The ratio is
  // rounded first so that e.g. 10 / 1e-3 gives exactly 10000 steps.
  const double ratio = options.t_end / options.dt;
  auto steps = static_cast<std::size_t>(std::ceil(ratio));
  if (std::abs(ratio - std::round(ratio)) <= 1e-9 * std::max(1.0, ratio)) {
    steps = static_cast<std::size_t>(std::round(ratio));
  }
  steps = std::max<std::size_t>(steps, 1);

  if (!finite(y)) throw StepDivergence(0.0);
  store(0.0, y);
  double t = 0.0;
  State<N> carry{};
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t_next = k == steps ? options.t_end : static_cast<double>(k) * options.dt;
    const double h = t_next - t;
    const State<N> delta =
        options.method == Method::kRk4 ? rk4_increment(f, y, h) : midpoint_increment(f, y, h, t);
    if (!finite(delta)) throw StepDivergence(t);
    for (std::size_t i = 0; i < N; ++i) {
      const double add = delta[i] + carry[i];
      const double sum = y[i] + add;
      carry[i] = add - (sum - y[i]);
      y[i] = sum;
    }
    if (!finite(y)) throw StepDivergence(t);
    t = t_next;
    if (k % options.store_every == 0 || k == steps) store(t, y);
  }
}

std::string fnv1a(const std::string& text) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

std::string describe(const VectorField3& a) {
  std::string text;
  for (const auto& v : a.space_vars) text += v + ",";
  for (const auto& c : a.components) text += to_string(c) + ";";
  return text;
}

}  // namespace

Trajectory integrate_flow(const VectorField3& drift, const Vec3& r0,
                          const IntegrationOptions& options) {
  validate(options);
  std::vector<std::string> slots(drift.space_vars.begin(), drift.space_vars.end());
  std::vector<double> base(3, 0.0);
  for (const auto& [name, value] : options.params) {
    slots.push_back(name);
    base.push_back(value);
  }
  std::array<CompiledExpr, 3> components;
  for (std::size_t i = 0; i < 3; ++i) components[i] = CompiledExpr(simplify(drift[i]), slots);

  const Rhs<3> f = [&](const State<3>& r) {
    std::vector<double> values = base;
    std::copy(r.begin(), r.end(), values.begin());
    return State<3>{components[0](values), components[1](values), components[2](values)};
  };

  Trajectory traj;
  traj.method = options.method;
  traj.dt = options.dt;
  traj.space_vars = drift.space_vars;
  traj.system_hash = fnv1a(describe(drift));
  run<3>(f, r0, options, [&](double t, const State<3>& r) {
    traj.times.push_back(t);
    traj.states.push_back({r, Vec3{}, t});
  });
  return traj;
}

Trajectory integrate_canonical(const SingularHamiltonian& hamiltonian, const Vec3& r0,
                               const Vec3& p0, const IntegrationOptions& options) {
  validate(options);
  const CompiledHamiltonian compiled(hamiltonian, options.params);
  const Rhs<6> f = [&](const State<6>& y) {
    const Vec3 r = {y[0], y[1], y[2]};
    const Vec3 p = {y[3], y[4], y[5]};
    const Vec3 rdot = compiled.rdot(r);
    const Vec3 pdot = compiled.pdot(r, p);
    return State<6>{rdot[0], rdot[1], rdot[2], pdot[0], pdot[1], pdot[2]};
  };

  Trajectory traj;
  traj.has_momentum = true;
  traj.method = options.method;
  traj.dt = options.dt;
  traj.space_vars = hamiltonian.space_vars();
  traj.momenta = hamiltonian.momenta;
  traj.system_hash = fnv1a(describe(hamiltonian.drift) + "V=" +
                           to_string(hamiltonian.potential.expr));
  const State<6> y0 = {r0[0], r0[1], r0[2], p0[0], p0[1], p0[2]};
  run<6>(f, y0, options, [&](double t, const State<6>& y) {
    traj.times.push_back(t);
    traj.states.push_back({{y[0], y[1], y[2]}, {y[3], y[4], y[5]}, t});
  });
  return traj;
}

Quantity quantity(std::string label, const ScalarField& f) { return {std::move(label), f.expr}; }

Quantity quantity(std::string label, const SingularHamiltonian& hamiltonian) {
  return {std::move(label), hamiltonian.expression()};
}

const QuantityDrift& ConservationReport::at(std::string_view label) const {
  for (const auto& q : quantities) {
    if (q.label == label) return q;
  }
  throw std::out_of_range("no quantity labelled '" + std::string(label) + "'");
}

ConservationReport conservation_report(const Trajectory& trajectory,
                                       std::span<const Quantity> quantities,
                                       const Binding& params) {
  if (trajectory.states.empty()) throw std::invalid_argument("empty trajectory");
  std::vector<std::string> slots(trajectory.space_vars.begin(), trajectory.space_vars.end());
  slots.insert(slots.end(), trajectory.momenta.begin(), trajectory.momenta.end());
  std::vector<double> values(6, 0.0);
  for (const auto& [name, value] : params) {
    slots.push_back(name);
    values.push_back(value);
  }

  ConservationReport report;
  for (const Quantity& q : quantities) {
    const CompiledExpr program(q.expr, slots);
    QuantityDrift drift;
    drift.label = q.label;
    for (std::size_t k = 0; k < trajectory.states.size(); ++k) {
      const PhaseState& s = trajectory.states[k];
      std::copy(s.r.begin(), s.r.end(), values.begin());
      std::copy(s.p.begin(), s.p.end(), values.begin() + 3);
      const double v = program(values);
      if (k == 0) {
        drift.initial = v;
        continue;
      }
      const double d = std::abs(v - drift.initial);
      if (d > drift.max_drift) {
        drift.max_drift = d;
        drift.time_of_max_drift = trajectory.times[k];
      }
    }
    report.quantities.push_back(std::move(drift));
  }
  return report;
}

void write_csv(const Trajectory& trajectory, std::ostream& out) {
  out << (trajectory.has_momentum ? "t,x1,x2,x3,p1,p2,p3\n" : "t,x1,x2,x3\n");
  char buffer[32];
  auto put = [&](double v) {
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    out << buffer;
  };
  for (std::size_t k = 0; k < trajectory.states.size(); ++k) {
    const PhaseState& s = trajectory.states[k];
    put(trajectory.times[k]);
    for (double v : s.r) {
      out << ',';
      put(v);
    }
    if (trajectory.has_momentum) {
      for (double v : s.p) {
        out << ',';
        put(v);
      }
    }
    out << '\n';
  }
}

}  // namespace nambu
