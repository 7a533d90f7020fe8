#ifndef GOSSIP_COMMANDS_HPP
#define GOSSIP_COMMANDS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "gossip/config.hpp"

namespace gossip {

// Exit code contract, stable for scripts.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitConfigError = 2;

struct CliOptions {
  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<long> max_steps;
  std::optional<double> tol;
  std::optional<std::string> scheduler;  // "uniform" | "roundrobin"
  std::string format = "json";           // matrix files: "json" | "csv"
  std::optional<std::string> matrices_dir;  // verify/simulate input
};

// Loads the config and applies command-line overrides.
ProblemConfig load_with_overrides(const CliOptions& opt);

// Output directory for one run: <out>/run-<first 12 hash chars>.
std::filesystem::path run_directory(const CliOptions& opt,
                                    const ProblemConfig& cfg);

// Topology and admissibility gate: check_simple, two-edge connectivity,
// partition admissibility, realized-mixing warnings. Writes check.json.
int cmd_check(const CliOptions& opt);

// Builds all local matrices and writes one file per edge plus a manifest.
int cmd_realize(const CliOptions& opt);

// Full cycle sweep; exit 0 iff the matrix set is w-holonomic for the graph.
int cmd_verify(const CliOptions& opt);

// Runs the gossip process and writes trace.csv plus convergence.json.
int cmd_simulate(const CliOptions& opt);

// check -> realize -> verify -> simulate, stopping at the first failure;
// writes bundle.json with provenance.
int cmd_all(const CliOptions& opt);

}  // namespace gossip

#endif
