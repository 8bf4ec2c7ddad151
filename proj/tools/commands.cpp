#include "commands.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "nambu/errors.hpp"
#include "nambu/hamiltonize.hpp"
#include "nambu/integrate.hpp"
#include "nambu/invariants.hpp"
#include "nambu/serialize.hpp"
#include "system_spec.hpp"

namespace nambu::cli {

namespace fs = std::filesystem;

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  const char* env = std::getenv("NAMBU_SEED");
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  errno = 0;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(env, &end, 10);
  if (errno != 0 || *end != '\0' || *env == '-') {
    throw std::invalid_argument("NAMBU_SEED must be a non-negative integer, got '" +
                                std::string(env) + "'");
  }
  return value;
}

namespace {

constexpr std::string_view kBuiltinPrefix = "builtin:";

struct Loaded {
  SystemSpec spec;
  std::string source;
};

Loaded load(const SpecSource& source) {
  const std::string& location = source.location;
  if (location.rfind(kBuiltinPrefix, 0) == 0) {
    const std::string name = location.substr(kBuiltinPrefix.size());
    const auto text = builtin_example(name);
    if (!text) throw SpecError(location, 0, "no built-in example named '" + name + "'");
    return {parse_spec(*text, location), location};
  }
  return {load_spec(location), location};
}

// Expanded polynomial form when there is one, the simplified expression
// otherwise. Both print in the input grammar.
std::string pretty(const Expr& e, const std::vector<std::string>& order) {
  if (auto p = to_polynomial(e, order)) return p->to_string();
  return to_string(simplify(e));
}

std::string pretty(const ScalarField& f) {
  return pretty(f.expr, polynomial_variables(f.space_vars, f.params));
}

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

void write_json_file(const fs::path& path, const Json& j) {
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot write " + path.string());
  file << j.dump(2) << '\n';
}

SingularHamiltonian hamiltonian_of(const System& system) {
  if (system.h) return build_hamiltonian(*system.h, *system.g, system.potential);
  return from_vector_field(system.drift, system.potential);
}

// Quantities tracked by simulate: h and g when given, then the listed
// invariants under labels not already taken.
std::vector<Quantity> tracked_quantities(const System& system) {
  std::vector<Quantity> quantities;
  std::set<std::string> seen;
  auto add = [&](const std::string& label, const ScalarField& f) {
    if (seen.insert(label).second) quantities.push_back(quantity(label, f));
  };
  if (system.h) {
    add("h", *system.h);
    add("g", *system.g);
  }
  for (const auto& c : system.candidates) add(c.label, c.u);
  return quantities;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& body) {
  try {
    return body();
  } catch (const SpecError& e) {
    err << "nambu: error: " << e.what() << '\n';
    return kExitSpecError;
  } catch (const StepDivergence& e) {
    err << "nambu: error: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const MidpointNoConvergence& e) {
    err << "nambu: error: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const NotPolynomial& e) {
    err << "nambu: error: " << e.what() << '\n';
    return kExitSpecError;
  } catch (const std::exception& e) {
    err << "nambu: error: " << e.what() << '\n';
    return kExitSpecError;
  }
}

}  // namespace

int cmd_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!(options.t_end > 0) || !std::isfinite(options.t_end)) {
      throw std::invalid_argument("--t-end must be positive");
    }
    if (!(options.dt > 0) || !std::isfinite(options.dt)) {
      throw std::invalid_argument("--dt must be positive");
    }
    if (options.store_every == 0) throw std::invalid_argument("--store-every must be at least 1");
    IntegrationOptions run;
    run.t_end = options.t_end;
    run.dt = options.dt;
    run.method = method_from_name(options.method);
    run.store_every = options.store_every;
    const std::uint64_t seed = resolve_seed(options.seed);

    const Loaded loaded = load(options.spec);
    const System system = build_system(loaded.spec, true, loaded.source);
    std::vector<Quantity> quantities = tracked_quantities(system);

    Trajectory trajectory;
    if (loaded.spec.p0) {
      const SingularHamiltonian hamiltonian = hamiltonian_of(system);
      quantities.push_back(quantity("H", hamiltonian));
      trajectory = integrate_canonical(hamiltonian, loaded.spec.r0, *loaded.spec.p0, run);
    } else {
      trajectory = integrate_flow(system.drift, loaded.spec.r0, run);
    }

    const ConservationReport conservation = conservation_report(trajectory, quantities, {});
    Json report;
    report["system"] = loaded.spec.name;
    report["t_end"] = options.t_end;
    report["store_every"] = options.store_every;
    report["seed"] = seed;
    report["tolerance"] = options.tolerance;
    report["r0"] = loaded.spec.r0;
    if (loaded.spec.p0) report["p0"] = *loaded.spec.p0;
    const Json details = to_json(conservation, trajectory);
    for (const auto& [key, value] : details.items()) report[key] = value;

    const fs::path csv_path =
        options.csv_path.value_or(options.out_dir / (loaded.spec.name + "_trajectory.csv"));
    const fs::path report_path =
        options.report_path.value_or(options.out_dir / (loaded.spec.name + "_conservation.json"));
    for (const fs::path& p : {csv_path, report_path}) {
      if (p.has_parent_path()) fs::create_directories(p.parent_path());
    }
    {
      std::ofstream csv(csv_path);
      if (!csv) throw std::runtime_error("cannot write " + csv_path.string());
      write_csv(trajectory, csv);
    }
    write_json_file(report_path, report);

    out << "simulated " << loaded.spec.name << " with " << method_name(run.method) << " to t = "
        << format_double(options.t_end) << " (" << trajectory.states.size() << " stored states)\n";
    for (const auto& q : conservation.quantities) {
      out << "  " << q.label << ": initial " << format_double(q.initial) << ", max drift "
          << format_double(q.max_drift) << '\n';
    }
    out << "wrote " << csv_path.string() << '\n' << "wrote " << report_path.string() << '\n';
    return kExitOk;
  });
}

int cmd_hamiltonize(const HamiltonizeOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Loaded loaded = load(options.spec);
    const System system = build_system(loaded.spec, options.numeric, loaded.source);
    const SingularHamiltonian hamiltonian = hamiltonian_of(system);
    const CanonicalEquations eq = canonical_equations(hamiltonian);

    const SpaceVars& vars = hamiltonian.space_vars();
    std::vector<std::string> order(vars.begin(), vars.end());
    order.insert(order.end(), hamiltonian.momenta.begin(), hamiltonian.momenta.end());
    order.insert(order.end(), hamiltonian.params().begin(), hamiltonian.params().end());

    const std::string h_text = pretty(hamiltonian.expression(), order);
    if (options.json) {
      Json j;
      j["system"] = loaded.spec.name;
      j["variables"] = vars;
      j["momenta"] = hamiltonian.momenta;
      j["params"] = hamiltonian.params();
      j["H"] = h_text;
      j["A"] = Json::array();
      for (std::size_t i = 0; i < 3; ++i) j["A"].push_back(pretty(hamiltonian.drift[i], order));
      j["V"] = pretty(hamiltonian.potential.expr, order);
      Json rdot, pdot;
      for (std::size_t i = 0; i < 3; ++i) {
        rdot[vars[i]] = pretty(eq.rdot[i], order);
        pdot[hamiltonian.momenta[i]] = pretty(eq.pdot[i], order);
      }
      j["rdot"] = std::move(rdot);
      j["pdot"] = std::move(pdot);
      out << j.dump(2) << '\n';
      return kExitOk;
    }
    out << "H = " << h_text << '\n';
    for (std::size_t i = 0; i < 3; ++i) {
      out << "d" << vars[i] << "/dt = " << pretty(eq.rdot[i], order) << '\n';
    }
    for (std::size_t i = 0; i < 3; ++i) {
      out << "d" << hamiltonian.momenta[i] << "/dt = " << pretty(eq.pdot[i], order) << '\n';
    }
    return kExitOk;
  });
}

int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!(options.tolerance > 0) || !std::isfinite(options.tolerance)) {
      throw std::invalid_argument("--tol must be positive");
    }
    if (options.samples == 0) throw std::invalid_argument("--samples must be at least 1");
    SamplingOptions sampling;
    sampling.tolerance = options.tolerance;
    sampling.samples = options.samples;
    sampling.seed = resolve_seed(options.seed);

    const Loaded loaded = load(options.spec);
    const System system = build_system(loaded.spec, true, loaded.source);
    std::vector<InvariantCandidate> candidates = system.candidates;
    if (candidates.empty() && system.h) {
      candidates = {{*system.h, "h"}, {*system.g, "g"}};
    }
    if (candidates.empty()) {
      throw SpecError(loaded.source, 0, "no invariant candidates to verify");
    }

    bool all_pass = true;
    Json j;
    j["system"] = loaded.spec.name;
    j["seed"] = sampling.seed;
    j["tolerance"] = sampling.tolerance;
    j["samples"] = sampling.samples;
    j["candidates"] = Json::array();
    std::ostringstream summary;
    summary << "system " << loaded.spec.name << '\n';
    for (const auto& c : candidates) {
      const InvariantReport report = verify_invariant(system.drift, c, sampling);
      all_pass = all_pass && report.pass;
      j["candidates"].push_back(to_json(report));
      summary << "  " << c.label << " = " << pretty(c.u) << ": " << (report.pass ? "pass" : "fail")
              << " (" << (report.mode == CheckMode::kSymbolic ? "symbolic" : "sampled")
              << ", residual " << report.residual_string() << ")\n";
      for (const auto& w : report.warnings) summary << "    warning: " << w << '\n';
    }

    if (candidates.size() >= 2) {
      const ScalarField& u1 = candidates[0].u;
      const ScalarField& u2 = candidates[1].u;
      if (system.functional) {
        const CombinationReport combo =
            functional_combination_check(system.drift, u1, u2, *system.functional, sampling);
        all_pass = all_pass && combo.pass;
        Json cj;
        cj["F1"] = to_string(system.functional->f1);
        cj["F2"] = to_string(system.functional->f2);
        cj["bracket"] = to_string(combo.bracket);
        cj["mode"] = combo.mode == CheckMode::kSymbolic ? "symbolic" : "sampled";
        cj["verdict"] = combo.pass ? "pass" : "fail";
        cj["residual"] = to_json(combo.residual);
        if (combo.mode == CheckMode::kSampled) cj["max_residual"] = combo.check.max_residual;
        if (!combo.warnings.empty()) cj["warnings"] = combo.warnings;
        j["functional"] = std::move(cj);
        summary << "  [F1, F2] = " << to_string(combo.bracket) << ": "
                << (combo.pass ? "pass" : "fail") << '\n';
        for (const auto& w : combo.warnings) summary << "    warning: " << w << '\n';
      }
      const Reconstruction rec = reconstruct_nambu(system.drift, u1, u2, sampling);
      if (!system.functional) all_pass = all_pass && rec.success();
      Json rj;
      rj["verdict"] = rec.success() ? "pass" : "fail";
      if (rec.success()) {
        rj["h"] = pretty(*rec.h);
        rj["g"] = pretty(*rec.g);
        rj["swapped"] = rec.swapped;
        summary << "  reconstruction: A = grad(h) x grad(g) with h = " << pretty(*rec.h)
                << ", g = " << pretty(*rec.g) << '\n';
      } else {
        rj["residual"] = to_json(rec.residual);
        summary << "  reconstruction: A is not grad(" << candidates[0].label << ") x grad("
                << candidates[1].label << ") up to sign\n";
      }
      if (!rec.warnings.empty()) rj["warnings"] = rec.warnings;
      j["reconstruction"] = std::move(rj);
    }
    j["verdict"] = all_pass ? "pass" : "fail";
    summary << "verdict: " << (all_pass ? "pass" : "fail") << '\n';

    if (options.report_path) {
      if (options.report_path->has_parent_path()) {
        fs::create_directories(options.report_path->parent_path());
      }
      write_json_file(*options.report_path, j);
    }
    if (options.json) {
      out << j.dump(2) << '\n';
    } else {
      out << summary.str();
    }
    return all_pass ? kExitOk : kExitVerificationFailed;
  });
}

int cmd_find_invariants(const FindInvariantsOptions& options, std::ostream& out,
                        std::ostream& err) {
  return guarded(err, [&] {
    const Loaded loaded = load(options.spec);
    const System system = build_system(loaded.spec, true, loaded.source);
    const std::vector<Polynomial> basis =
        find_polynomial_invariants(system.drift, options.max_degree);
    if (options.json) {
      Json j;
      j["system"] = loaded.spec.name;
      j["max_degree"] = options.max_degree;
      j["dimension"] = basis.size();
      j["basis"] = Json::array();
      for (const auto& p : basis) j["basis"].push_back(p.to_string());
      out << j.dump(2) << '\n';
      return kExitOk;
    }
    out << "polynomial invariants of " << loaded.spec.name << " up to degree "
        << options.max_degree << " (dimension " << basis.size() << "):\n";
    for (const auto& p : basis) out << "  " << p.to_string() << '\n';
    return kExitOk;
  });
}

int cmd_examples(const ExamplesOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::vector<std::string> names;
    if (options.name) {
      if (!builtin_example(*options.name)) {
        throw std::invalid_argument("no built-in example named '" + *options.name +
                                    "' (available: rotator, cubic)");
      }
      names.push_back(*options.name);
    } else {
      names = builtin_example_names();
    }
    for (const std::string& name : names) {
      const std::string text = *builtin_example(name);
      if (options.to_stdout) {
        out << text;
        continue;
      }
      fs::create_directories(options.out_dir);
      const fs::path path = options.out_dir / (name + ".json");
      std::ofstream file(path);
      if (!file) throw std::runtime_error("cannot write " + path.string());
      file << text;
      out << "wrote " << path.string() << '\n';
    }
    return kExitOk;
  });
}

}  // namespace nambu::cli
