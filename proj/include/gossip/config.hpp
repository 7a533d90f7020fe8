#ifndef GOSSIP_CONFIG_HPP
#define GOSSIP_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gossip/realization.hpp"
#include "gossip/sim.hpp"

namespace gossip {

// Everything a run needs, parsed from a single JSON document. Indices and
// agent ids are 1-based in the file and converted here; the rest of the
// library is 0-based.
struct ProblemConfig {
  int num_agents = 0;
  int entries_per_agent = 1;
  std::vector<Edge> edges;
  std::vector<double> weights;  // raw, renormalized by weight_vector()
  std::vector<int> pi0;
  std::vector<std::vector<int>> cells;

  double theta = 0.5;
  double ratio_tol = tol::kRatioDefault;
  double weight_sum_slack = tol::kWeightSumSlack;
  std::map<std::pair<int, int>, BetaPair> beta_overrides;  // global (p,q)
  bool has_explicit_permutation = false;
  std::map<Edge, IndexPermutation> permutation_edges;

  Scheduler::Kind scheduler = Scheduler::Kind::uniform_random;
  std::uint64_t seed = 0;
  long max_steps = 100'000;
  double spread_tol = tol::kSpreadDefault;
  long snapshot_stride = 0;  // 0 -> |E|
  std::size_t cycle_cap = 1'000'000;

  struct RandomInit {
    std::uint64_t seed = 0;
    double low = 0.0;
    double high = 1.0;
  };
  std::optional<std::vector<double>> initial_state;
  std::optional<RandomInit> random_init;  // used when no explicit vector
  // The random draw defaulted its seed to the main seed, so a --seed
  // override must follow suit.
  bool random_seed_follows_main = false;

  std::string config_hash;  // FNV-1a of the file bytes, hex

  Graph graph() const;
  IndexMap index_map() const;
  IndexPartition partition() const;
  WeightVector weight_vector() const;
  BetaPolicy beta_policy() const;
  PermutationSpec permutation_spec() const;

  // Explicit vector, or the seeded-random draw documented in the README:
  // x_i = low + (high-low) * (rng() >> 11) * 2^-53 from std::mt19937_64.
  std::vector<double> initial_vector() const;
};

// Parses and cross-validates. Throws ConfigError with field-level messages.
ProblemConfig parse_config(const nlohmann::json& j);

// Reads the file, parses it, and records the config hash.
ProblemConfig load_config(const std::filesystem::path& path);

// 64-bit FNV-1a, hex encoded; names run directories and ties reports to the
// exact config bytes that produced them.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace gossip

#endif
