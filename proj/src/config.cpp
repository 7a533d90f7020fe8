#include "gossip/config.hpp"

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "gossip/errors.hpp"

namespace gossip {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw ConfigError(field + ": " + why);
}

const json& require(const json& j, const std::string& key) {
  if (!j.contains(key)) fail(key, "missing required field");
  return j.at(key);
}

int get_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(field, "expected an integer");
  return j.get<int>();
}

long get_long(const json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(field, "expected an integer");
  return j.get<long>();
}

double get_double(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  return j.get<double>();
}

// 1-based index pair [i, j] -> 0-based Edge.
Edge parse_edge(const json& j, int num_agents, const std::string& field) {
  if (!j.is_array() || j.size() != 2) fail(field, "expected a pair [i, j]");
  const int u = get_int(j[0], field);
  const int v = get_int(j[1], field);
  for (int id : {u, v}) {
    if (id < 1 || id > num_agents) {
      fail(field, "agent id " + std::to_string(id) + " outside 1.." +
                      std::to_string(num_agents));
    }
  }
  return make_edge(u - 1, v - 1);
}

std::vector<int> parse_index_list(const json& j, int total,
                                  const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array of indices");
  std::vector<int> out;
  out.reserve(j.size());
  for (const auto& entry : j) {
    const int idx = get_int(entry, field);
    if (idx < 1 || idx > total) {
      fail(field, "index " + std::to_string(idx) + " outside 1.." +
                      std::to_string(total));
    }
    out.push_back(idx - 1);
  }
  return out;
}

}  // namespace

ProblemConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  ProblemConfig cfg;

  cfg.num_agents = get_int(require(j, "num_agents"), "num_agents");
  if (cfg.num_agents < 1) fail("num_agents", "must be >= 1");
  cfg.entries_per_agent =
      j.contains("entries_per_agent")
          ? get_int(j.at("entries_per_agent"), "entries_per_agent")
          : 1;
  if (cfg.entries_per_agent < 1) fail("entries_per_agent", "must be >= 1");
  const int total = cfg.num_agents * cfg.entries_per_agent;

  const json& edges = require(j, "edges");
  if (!edges.is_array()) fail("edges", "expected an array of pairs");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    cfg.edges.push_back(parse_edge(edges[i], cfg.num_agents,
                                   "edges[" + std::to_string(i) + "]"));
  }

  const json& weights = require(j, "weights");
  if (!weights.is_array()) fail("weights", "expected an array of numbers");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    cfg.weights.push_back(
        get_double(weights[i], "weights[" + std::to_string(i) + "]"));
  }
  if (static_cast<int>(cfg.weights.size()) != total) {
    fail("weights", "length " + std::to_string(cfg.weights.size()) +
                        " does not equal num_agents*entries_per_agent = " +
                        std::to_string(total));
  }

  const json& partition = require(j, "partition");
  if (!partition.is_object()) {
    fail("partition", "expected an object with keys pi0 and cells");
  }
  if (partition.contains("pi0")) {
    cfg.pi0 = parse_index_list(partition.at("pi0"), total, "partition.pi0");
  }
  const json& cells = require(partition, "cells");
  if (!cells.is_array()) fail("partition.cells", "expected an array of cells");
  for (std::size_t a = 0; a < cells.size(); ++a) {
    cfg.cells.push_back(parse_index_list(
        cells[a], total, "partition.cells[" + std::to_string(a) + "]"));
  }

  if (j.contains("theta")) {
    cfg.theta = get_double(j.at("theta"), "theta");
    if (!(cfg.theta > 0.0 && cfg.theta < 1.0)) {
      fail("theta", "must lie strictly inside (0,1)");
    }
  }
  if (j.contains("ratio_tol")) {
    cfg.ratio_tol = get_double(j.at("ratio_tol"), "ratio_tol");
    if (!(cfg.ratio_tol > 0.0)) fail("ratio_tol", "must be positive");
  }
  if (j.contains("weight_sum_slack")) {
    cfg.weight_sum_slack =
        get_double(j.at("weight_sum_slack"), "weight_sum_slack");
    if (!(cfg.weight_sum_slack > 0.0)) {
      fail("weight_sum_slack", "must be positive");
    }
  }

  if (j.contains("beta_overrides")) {
    const json& overrides = j.at("beta_overrides");
    if (!overrides.is_array()) fail("beta_overrides", "expected an array");
    for (std::size_t i = 0; i < overrides.size(); ++i) {
      const std::string field = "beta_overrides[" + std::to_string(i) + "]";
      const json& entry = overrides[i];
      if (!entry.is_object()) fail(field, "expected an object");
      const json& pair = require(entry, "pair");
      if (!pair.is_array() || pair.size() != 2) {
        fail(field + ".pair", "expected [[i,k],[j,l]]");
      }
      auto coord = [&](const json& c, const std::string& f) {
        if (!c.is_array() || c.size() != 2) fail(f, "expected [agent, entry]");
        const int agent = get_int(c[0], f);
        const int entry_no = get_int(c[1], f);
        if (agent < 1 || agent > cfg.num_agents) fail(f, "agent out of range");
        if (entry_no < 1 || entry_no > cfg.entries_per_agent) {
          fail(f, "entry out of range");
        }
        return psi(agent, entry_no, cfg.entries_per_agent) - 1;
      };
      const int p = coord(pair[0], field + ".pair[0]");
      const int q = coord(pair[1], field + ".pair[1]");
      BetaPair betas;
      betas.beta1 = get_double(require(entry, "beta1"), field + ".beta1");
      betas.beta2 = get_double(require(entry, "beta2"), field + ".beta2");
      for (double b : {betas.beta1, betas.beta2}) {
        if (!(b > 0.0 && b < 1.0)) {
          fail(field, "betas must lie strictly inside (0,1)");
        }
      }
      if (!cfg.beta_overrides.emplace(std::make_pair(p, q), betas).second) {
        fail(field, "duplicate override for this pair");
      }
    }
  }

  if (j.contains("permutation")) {
    cfg.has_explicit_permutation = true;
    const json& perm = j.at("permutation");
    if (!perm.is_object()) fail("permutation", "expected an object");
    const json& entries = require(perm, "edges");
    if (!entries.is_array()) fail("permutation.edges", "expected an array");
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const std::string field = "permutation.edges[" + std::to_string(i) + "]";
      const json& entry = entries[i];
      if (!entry.is_object()) fail(field, "expected an object");
      const Edge e = parse_edge(require(entry, "edge"), cfg.num_agents,
                                field + ".edge");
      const auto cycle =
          parse_index_list(require(entry, "cycle"), total, field + ".cycle");
      if (cycle.size() < 2) fail(field + ".cycle", "needs at least 2 indices");
      std::set<int> distinct(cycle.begin(), cycle.end());
      if (distinct.size() != cycle.size()) {
        fail(field + ".cycle", "repeats an index");
      }
      IndexPermutation& target = cfg.permutation_edges[e];
      for (std::size_t c = 0; c < cycle.size(); ++c) {
        const int from = cycle[c];
        const int to = cycle[(c + 1) % cycle.size()];
        if (target.count(from)) {
          fail(field + ".cycle", "index " + std::to_string(from + 1) +
                                     " already permuted on this edge");
        }
        target[from] = to;
      }
    }
  }

  if (j.contains("scheduler")) {
    const json& sched = j.at("scheduler");
    if (!sched.is_string()) fail("scheduler", "expected a string");
    const std::string name = sched.get<std::string>();
    if (name == "uniform") {
      cfg.scheduler = Scheduler::Kind::uniform_random;
    } else if (name == "roundrobin") {
      cfg.scheduler = Scheduler::Kind::round_robin;
    } else {
      fail("scheduler", "expected \"uniform\" or \"roundrobin\", got \"" +
                            name + "\"");
    }
  }

  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer())
      fail("seed", "expected an integer");
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("max_steps")) {
    cfg.max_steps = get_long(j.at("max_steps"), "max_steps");
    if (cfg.max_steps < 0) fail("max_steps", "must be >= 0");
  }
  if (j.contains("tol")) {
    cfg.spread_tol = get_double(j.at("tol"), "tol");
    if (!(cfg.spread_tol > 0.0)) fail("tol", "must be positive");
  }
  if (j.contains("snapshot_stride")) {
    cfg.snapshot_stride = get_long(j.at("snapshot_stride"), "snapshot_stride");
    if (cfg.snapshot_stride < 0) fail("snapshot_stride", "must be >= 0");
  }
  if (j.contains("cycle_cap")) {
    const long cap = get_long(j.at("cycle_cap"), "cycle_cap");
    if (cap < 1) fail("cycle_cap", "must be >= 1");
    cfg.cycle_cap = static_cast<std::size_t>(cap);
  }

  if (j.contains("initial_state")) {
    const json& init = j.at("initial_state");
    if (init.is_array()) {
      std::vector<double> x0;
      for (std::size_t i = 0; i < init.size(); ++i) {
        x0.push_back(
            get_double(init[i], "initial_state[" + std::to_string(i) + "]"));
      }
      if (static_cast<int>(x0.size()) != total) {
        fail("initial_state", "length must be " + std::to_string(total));
      }
      cfg.initial_state = std::move(x0);
    } else if (init.is_object() && init.contains("random")) {
      const json& rnd = init.at("random");
      ProblemConfig::RandomInit ri;
      cfg.random_seed_follows_main = !rnd.contains("seed");
      ri.seed = rnd.contains("seed") ? rnd.at("seed").get<std::uint64_t>()
                                     : cfg.seed;
      ri.low = rnd.contains("low")
                   ? get_double(rnd.at("low"), "initial_state.random.low")
                   : 0.0;
      ri.high = rnd.contains("high")
                    ? get_double(rnd.at("high"), "initial_state.random.high")
                    : 1.0;
      if (!(ri.high > ri.low)) {
        fail("initial_state.random", "high must exceed low");
      }
      cfg.random_init = ri;
    } else {
      fail("initial_state",
           "expected an array of numbers or {\"random\": {...}}");
    }
  } else {
    cfg.random_init = ProblemConfig::RandomInit{cfg.seed, 0.0, 1.0};
    cfg.random_seed_follows_main = true;
  }

  // Structural cross-validation: these constructors throw ConfigError with
  // the precise defect. The graph is deliberately not built here; simplicity
  // is a checked predicate reported by the check command, not a parse error.
  cfg.partition();
  cfg.weight_vector();
  return cfg;
}

ProblemConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string bytes = buffer.str();
  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path.string() +
                      " is not valid JSON: " + e.what());
  }
  ProblemConfig cfg = parse_config(j);
  cfg.config_hash = fnv1a_hex(bytes);
  return cfg;
}

Graph ProblemConfig::graph() const { return Graph(num_agents, edges); }

IndexMap ProblemConfig::index_map() const {
  return IndexMap{num_agents, entries_per_agent};
}

IndexPartition ProblemConfig::partition() const {
  return IndexPartition(pi0, cells, num_agents * entries_per_agent);
}

WeightVector ProblemConfig::weight_vector() const {
  return WeightVector::normalized(weights, weight_sum_slack);
}

BetaPolicy ProblemConfig::beta_policy() const {
  BetaPolicy policy;
  policy.theta = theta;
  policy.ratio_tol = ratio_tol;
  policy.overrides = beta_overrides;
  return policy;
}

PermutationSpec ProblemConfig::permutation_spec() const {
  if (!has_explicit_permutation) return PermutationSpec::defaults();
  return PermutationSpec::explicit_spec(permutation_edges);
}

std::vector<double> ProblemConfig::initial_vector() const {
  if (initial_state) return *initial_state;
  const RandomInit ri = random_init.value_or(RandomInit{seed, 0.0, 1.0});
  std::mt19937_64 rng(ri.seed);
  std::vector<double> x0(static_cast<std::size_t>(num_agents) *
                         entries_per_agent);
  for (double& v : x0) {
    const double unit =
        static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0,1)
    v = ri.low + (ri.high - ri.low) * unit;
  }
  return x0;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[hash & 0xF];
    hash >>= 4;
  }
  return out;
}

}  // namespace gossip
