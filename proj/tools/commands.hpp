#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

namespace nambu::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitSpecError = 1,
  kExitDivergence = 2,
  kExitVerificationFailed = 3,
};

constexpr std::uint64_t kDefaultSeed = 42;
constexpr double kDefaultTolerance = 1e-9;
constexpr std::size_t kDefaultSamples = 100;

// --seed, then NAMBU_SEED, then kDefaultSeed. Throws std::invalid_argument on a
// malformed environment value.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag);

// Either a path or "builtin:<name>".
struct SpecSource {
  std::string location;
};

struct SimulateOptions {
  SpecSource spec;
  double t_end = 10.0;
  double dt = 1e-3;
  std::string method = "rk4";
  std::size_t store_every = 1;
  std::filesystem::path out_dir = ".";
  std::optional<std::filesystem::path> csv_path;
  std::optional<std::filesystem::path> report_path;
  std::optional<std::uint64_t> seed;
  double tolerance = kDefaultTolerance;
};

struct HamiltonizeOptions {
  SpecSource spec;
  bool json = false;
  bool numeric = false;
};

struct VerifyOptions {
  SpecSource spec;
  bool json = false;
  std::optional<std::filesystem::path> report_path;
  std::optional<std::uint64_t> seed;
  double tolerance = kDefaultTolerance;
  std::size_t samples = kDefaultSamples;
};

struct FindInvariantsOptions {
  SpecSource spec;
  unsigned max_degree = 3;
  bool json = false;
};

struct ExamplesOptions {
  std::optional<std::string> name;
  std::filesystem::path out_dir = ".";
  bool to_stdout = false;
};

int cmd_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err);
int cmd_hamiltonize(const HamiltonizeOptions& options, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);
int cmd_find_invariants(const FindInvariantsOptions& options, std::ostream& out,
                        std::ostream& err);
int cmd_examples(const ExamplesOptions& options, std::ostream& out, std::ostream& err);

}  // namespace nambu::cli
