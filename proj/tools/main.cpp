#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace nambu::cli;

int main(int argc, char** argv) {
  CLI::App app{"Hamiltonization and first-integral analysis of Nambu systems"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "nambu 1.0.0");

  const std::string spec_help = "system spec file (JSON), or builtin:rotator / builtin:cubic";

  SimulateOptions sim;
  std::string sim_out_dir = ".", sim_csv, sim_report;
  std::uint64_t sim_seed = 0;
  auto* simulate = app.add_subcommand("simulate", "integrate a system and report conservation");
  simulate->add_option("spec", sim.spec.location, spec_help)->required();
  simulate->add_option("--t-end", sim.t_end, "final time")->capture_default_str();
  simulate->add_option("--dt", sim.dt, "time step")->capture_default_str();
  simulate->add_option("--method", sim.method, "rk4 or midpoint")
      ->check(CLI::IsMember({"rk4", "midpoint"}))
      ->capture_default_str();
  simulate->add_option("--store-every", sim.store_every, "keep every n-th state")
      ->capture_default_str();
  simulate->add_option("--out-dir", sim_out_dir, "directory for default output names")
      ->capture_default_str();
  simulate->add_option("--csv", sim_csv, "trajectory CSV path");
  simulate->add_option("--report", sim_report, "conservation JSON path");
  auto* sim_seed_opt = simulate->add_option("--seed", sim_seed, "seed (default: NAMBU_SEED or 42)");
  simulate->add_option("--tol", sim.tolerance, "tolerance recorded in the report")
      ->capture_default_str();

  HamiltonizeOptions ham;
  auto* hamiltonize = app.add_subcommand("hamiltonize", "print H = p.A + V and its canonical flow");
  hamiltonize->add_option("spec", ham.spec.location, spec_help)->required();
  hamiltonize->add_flag("--json", ham.json, "machine-readable output");
  hamiltonize->add_flag("--numeric", ham.numeric, "substitute parameter values");

  VerifyOptions ver;
  std::string ver_report;
  std::uint64_t ver_seed = 0;
  auto* verify = app.add_subcommand("verify", "check candidate invariants and the Nambu form");
  verify->add_option("spec", ver.spec.location, spec_help)->required();
  verify->add_flag("--json", ver.json, "print the JSON report instead of a summary");
  verify->add_option("--report", ver_report, "also write the JSON report here");
  auto* ver_seed_opt = verify->add_option("--seed", ver_seed, "seed (default: NAMBU_SEED or 42)");
  verify->add_option("--tol", ver.tolerance, "sampling tolerance")->capture_default_str();
  verify->add_option("--samples", ver.samples, "number of sample points")->capture_default_str();

  FindInvariantsOptions find;
  auto* find_cmd = app.add_subcommand("find-invariants", "polynomial first integrals up to a degree");
  find_cmd->add_option("spec", find.spec.location, spec_help)->required();
  find_cmd->add_option("--max-degree", find.max_degree, "maximum total degree")
      ->check(CLI::Range(0u, 12u))
      ->capture_default_str();
  find_cmd->add_flag("--json", find.json, "machine-readable output");

  ExamplesOptions ex;
  std::string ex_name, ex_out_dir = ".";
  auto* examples = app.add_subcommand("examples", "write the built-in example specs");
  auto* ex_name_opt = examples->add_option("name", ex_name, "rotator or cubic (default: both)");
  examples->add_option("--out-dir", ex_out_dir, "output directory")->capture_default_str();
  examples->add_flag("--stdout", ex.to_stdout, "print instead of writing files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitSpecError;
  }

  if (simulate->parsed()) {
    sim.out_dir = sim_out_dir;
    if (!sim_csv.empty()) sim.csv_path = sim_csv;
    if (!sim_report.empty()) sim.report_path = sim_report;
    if (sim_seed_opt->count() > 0) sim.seed = sim_seed;
    return cmd_simulate(sim, std::cout, std::cerr);
  }
  if (hamiltonize->parsed()) return cmd_hamiltonize(ham, std::cout, std::cerr);
  if (verify->parsed()) {
    if (!ver_report.empty()) ver.report_path = ver_report;
    if (ver_seed_opt->count() > 0) ver.seed = ver_seed;
    return cmd_verify(ver, std::cout, std::cerr);
  }
  if (find_cmd->parsed()) return cmd_find_invariants(find, std::cout, std::cerr);
  if (examples->parsed()) {
    if (ex_name_opt->count() > 0) ex.name = ex_name;
    ex.out_dir = ex_out_dir;
    return cmd_examples(ex, std::cout, std::cerr);
  }
  return kExitSpecError;
}
