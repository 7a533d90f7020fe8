#include "gossip/commands.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>

#include "gossip/errors.hpp"
#include "gossip/holonomy.hpp"
#include "gossip/log.hpp"
#include "gossip/serialize.hpp"
#include "gossip/version.hpp"

namespace gossip {

namespace {

using nlohmann::json;

std::string edge_name(Edge e) {
  return "(" + std::to_string(e.first + 1) + "," +
         std::to_string(e.second + 1) + ")";
}

struct CheckOutcome {
  bool simple = false;
  bool two_edge_connected = false;
  std::vector<Edge> bridges;
  std::optional<AdmissibilityReport> admissibility;
  bool pass = false;
};

CheckOutcome run_checks(const ProblemConfig& cfg) {
  CheckOutcome outcome;
  outcome.simple = check_simple(cfg.num_agents, cfg.edges);
  if (!outcome.simple) return outcome;
  const Graph g = cfg.graph();
  outcome.bridges = find_bridges(g);
  outcome.two_edge_connected = is_connected(g) && outcome.bridges.empty();
  outcome.admissibility = is_admissible(g, cfg.index_map(), cfg.partition());
  outcome.pass = outcome.simple && outcome.two_edge_connected &&
                 outcome.admissibility->admissible;
  return outcome;
}

json check_json(const CheckOutcome& outcome) {
  json bridges = json::array();
  for (const Edge& e : outcome.bridges) {
    bridges.push_back(json::array({e.first + 1, e.second + 1}));
  }
  json out = {{"simple", outcome.simple},
              {"two_edge_connected", outcome.two_edge_connected},
              {"bridges", bridges},
              {"pass", outcome.pass}};
  if (outcome.admissibility) {
    out["admissibility"] = to_json(*outcome.admissibility);
  }
  return out;
}

void print_check(const CheckOutcome& outcome) {
  std::printf("simple: %s\n", outcome.simple ? "PASS" : "FAIL");
  if (!outcome.simple) return;
  if (outcome.two_edge_connected) {
    std::printf("two-edge-connected: PASS\n");
  } else if (outcome.bridges.empty()) {
    std::printf("two-edge-connected: FAIL (disconnected)\n");
  } else {
    std::printf("two-edge-connected: FAIL (bridges:");
    for (const Edge& e : outcome.bridges) {
      std::printf(" %s", edge_name(e).c_str());
    }
    std::printf(")\n");
  }
  if (outcome.admissibility) {
    std::printf("admissible: %s (%zu cells)\n",
                outcome.admissibility->admissible ? "PASS" : "FAIL",
                outcome.admissibility->cells.size());
    for (const auto& warning : outcome.admissibility->warnings) {
      logging::warn(warning);
    }
  }
  std::printf("check: %s\n", outcome.pass ? "PASS" : "FAIL");
}

LocalMatrixSet obtain_matrix_set(const CliOptions& opt,
                                 const ProblemConfig& cfg) {
  if (opt.matrices_dir) {
    return read_matrix_set(*opt.matrices_dir, cfg.index_map(), cfg.partition(),
                           cfg.weight_vector());
  }
  return realize_all(cfg.graph(), cfg.index_map(), cfg.partition(),
                     cfg.weight_vector(), cfg.beta_policy(),
                     cfg.permutation_spec());
}

Scheduler make_scheduler(const ProblemConfig& cfg) {
  return cfg.scheduler == Scheduler::Kind::uniform_random
             ? Scheduler::uniform(cfg.seed)
             : Scheduler::round_robin();
}

// Shared failure handling: config problems exit 2, everything else 1.
template <typename Body>
int guarded(Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    logging::error(e.what());
    std::printf("error: %s\n", e.what());
    return kExitConfigError;
  } catch (const std::exception& e) {
    logging::error(e.what());
    std::printf("error: %s\n", e.what());
    return kExitVerificationFailure;
  }
}


json stamped(json j, const ProblemConfig& cfg) {
  j["config_hash"] = cfg.config_hash;
  return j;
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buffer[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buffer;
}

struct VerifyOutcome {
  HolonomyReport report;
};

VerifyOutcome do_verify(const ProblemConfig& cfg, const LocalMatrixSet& ms) {
  if (cfg.ratio_tol > tol::kEigenCycle) {
    logging::warn(
        "config ratio_tol (" + std::to_string(cfg.ratio_tol) +
        ") exceeds the holonomy comparison tolerance (1e-10); matrices built "
        "from pinned betas that only approximately satisfy the ratio "
        "constraint will fail verification");
  }
  VerifyOutcome outcome{verify_holonomy(cfg.graph(), ms, cfg.weight_vector(),
                                        cfg.partition(), {cfg.cycle_cap})};
  return outcome;
}

void print_verify(const HolonomyReport& report) {
  for (const auto& c : report.cycles) {
    std::string verts;
    for (int v : c.cycle.vertices()) {
      verts += (verts.empty() ? "" : ",") + std::to_string(v + 1);
    }
    std::printf("cycle [%s]: order %ld\n", verts.c_str(), c.order);
  }
  std::printf("holonomy: %s (%zu cycles)\n", report.overall ? "PASS" : "FAIL",
              report.cycles.size());
}

struct SimulateOutcome {
  RunResult result;
  ConvergenceReport report;
  bool pass = false;
};

SimulateOutcome do_simulate(const ProblemConfig& cfg,
                            const LocalMatrixSet& ms) {
  SimulateOutcome outcome;
  const auto x0 = cfg.initial_vector();
  StopRule stop;
  stop.max_steps = cfg.max_steps;
  stop.spread_tol = cfg.spread_tol;
  outcome.result = run(x0, ms, make_scheduler(cfg), stop, cfg.snapshot_stride);
  outcome.report = detect_limit_behavior(outcome.result, cfg.partition(),
                                         cfg.weight_vector(), x0,
                                         cfg.spread_tol);
  outcome.pass = outcome.report.all_converged &&
                 (!outcome.report.pi0 || outcome.report.pi0->multiset_conserved);
  return outcome;
}

void print_simulate(const SimulateOutcome& outcome) {
  for (const auto& cell : outcome.report.cells) {
    std::printf("%s: %s spread=%.3g achieved=%.10g target=%.10g\n",
                cell.name.c_str(), cell.converged ? "converged" : "NOT converged",
                cell.final_spread, cell.achieved, cell.target);
  }
  if (outcome.report.pi0) {
    std::printf("pi0: multiset %s, observed orbit size %d\n",
                outcome.report.pi0->multiset_conserved ? "conserved"
                                                       : "NOT conserved",
                outcome.report.pi0->observed_orbit_size);
  }
  std::printf("simulate: %s (steps=%ld)\n", outcome.pass ? "PASS" : "FAIL",
              outcome.report.steps_used);
}

}  // namespace

ProblemConfig load_with_overrides(const CliOptions& opt) {
  ProblemConfig cfg = load_config(opt.config_path);
  if (opt.seed) {
    cfg.seed = *opt.seed;
    if (cfg.random_init && cfg.random_seed_follows_main) {
      cfg.random_init->seed = *opt.seed;
    }
  }
  if (opt.max_steps) cfg.max_steps = *opt.max_steps;
  if (opt.tol) cfg.spread_tol = *opt.tol;
  if (opt.scheduler) {
    if (*opt.scheduler == "uniform") {
      cfg.scheduler = Scheduler::Kind::uniform_random;
    } else if (*opt.scheduler == "roundrobin") {
      cfg.scheduler = Scheduler::Kind::round_robin;
    } else {
      throw ConfigError("--scheduler expects uniform or roundrobin, got " +
                        *opt.scheduler);
    }
  }
  if (opt.format != "json" && opt.format != "csv") {
    throw ConfigError("--format expects json or csv, got " + opt.format);
  }
  return cfg;
}

std::filesystem::path run_directory(const CliOptions& opt,
                                    const ProblemConfig& cfg) {
  const std::string prefix =
      cfg.config_hash.empty() ? "adhoc" : cfg.config_hash.substr(0, 12);
  const auto dir = std::filesystem::path(opt.out_dir) / ("run-" + prefix);
  std::filesystem::create_directories(dir);
  return dir;
}

int cmd_check(const CliOptions& opt) {
  return guarded([&] {
    const ProblemConfig cfg = load_with_overrides(opt);
    const CheckOutcome outcome = run_checks(cfg);
    write_json_file(run_directory(opt, cfg) / "check.json",
                    stamped(check_json(outcome), cfg));
    print_check(outcome);
    return outcome.pass ? kExitOk : kExitVerificationFailure;
  });
}

int cmd_realize(const CliOptions& opt) {
  return guarded([&] {
    const ProblemConfig cfg = load_with_overrides(opt);
    const CheckOutcome checks = run_checks(cfg);
    if (!checks.pass) {
      print_check(checks);
      std::printf("realize: blocked by failed checks\n");
      return kExitVerificationFailure;
    }
    const LocalMatrixSet ms =
        realize_all(cfg.graph(), cfg.index_map(), cfg.partition(),
                    cfg.weight_vector(), cfg.beta_policy(),
                    cfg.permutation_spec());
    for (const auto& warning : ms.warnings()) logging::warn(warning);
    const auto dir = run_directory(opt, cfg) / "matrices";
    write_matrix_set(dir, ms, opt.format, cfg.config_hash);
    std::printf("realize: wrote %zu local matrices to %s\n",
                ms.matrices().size(), dir.string().c_str());
    return kExitOk;
  });
}

int cmd_verify(const CliOptions& opt) {
  return guarded([&] {
    const ProblemConfig cfg = load_with_overrides(opt);
    const LocalMatrixSet ms = obtain_matrix_set(opt, cfg);
    const VerifyOutcome outcome = do_verify(cfg, ms);
    write_json_file(run_directory(opt, cfg) / "holonomy.json",
                    stamped(to_json(outcome.report), cfg));
    print_verify(outcome.report);
    return outcome.report.overall ? kExitOk : kExitVerificationFailure;
  });
}

int cmd_simulate(const CliOptions& opt) {
  return guarded([&] {
    const ProblemConfig cfg = load_with_overrides(opt);
    const LocalMatrixSet ms = obtain_matrix_set(opt, cfg);
    const SimulateOutcome outcome = do_simulate(cfg, ms);
    const auto dir = run_directory(opt, cfg);
    write_trace_csv(dir / "trace.csv", outcome.result.trace);
    write_json_file(dir / "convergence.json",
                    stamped(to_json(outcome.report), cfg));
    print_simulate(outcome);
    return outcome.pass ? kExitOk : kExitVerificationFailure;
  });
}

int cmd_all(const CliOptions& opt) {
  return guarded([&] {
    const ProblemConfig cfg = load_with_overrides(opt);
    const auto dir = run_directory(opt, cfg);
    json stages;

    const CheckOutcome checks = run_checks(cfg);
    write_json_file(dir / "check.json", stamped(check_json(checks), cfg));
    print_check(checks);
    stages["check"] = {{"pass", checks.pass}};
    int exit_code = kExitOk;
    std::string failed_stage;

    if (!checks.pass) {
      exit_code = kExitVerificationFailure;
      failed_stage = "check";
    } else {
      const LocalMatrixSet ms =
          realize_all(cfg.graph(), cfg.index_map(), cfg.partition(),
                      cfg.weight_vector(), cfg.beta_policy(),
                      cfg.permutation_spec());
      for (const auto& warning : ms.warnings()) logging::warn(warning);
      write_matrix_set(dir / "matrices", ms, opt.format, cfg.config_hash);
      std::printf("realize: wrote %zu local matrices\n", ms.matrices().size());
      stages["realize"] = {{"matrices", ms.matrices().size()},
                           {"warnings", ms.warnings()}};

      const VerifyOutcome verify = do_verify(cfg, ms);
      write_json_file(dir / "holonomy.json",
                      stamped(to_json(verify.report), cfg));
      print_verify(verify.report);
      stages["verify"] = {{"overall", verify.report.overall},
                          {"cycles", verify.report.cycles.size()}};
      if (!verify.report.overall) {
        exit_code = kExitVerificationFailure;
        failed_stage = "verify";
      } else {
        const SimulateOutcome sim = do_simulate(cfg, ms);
        write_trace_csv(dir / "trace.csv", sim.result.trace);
        write_json_file(dir / "convergence.json",
                        stamped(to_json(sim.report), cfg));
        print_simulate(sim);
        stages["simulate"] = {{"pass", sim.pass},
                              {"steps", sim.report.steps_used}};
        if (!sim.pass) {
          exit_code = kExitVerificationFailure;
          failed_stage = "simulate";
        }
      }
    }

    json bundle = {
        {"provenance",
         {{"tool_version", kToolVersion},
          {"config_hash", cfg.config_hash},
          {"seed", cfg.seed},
          {"generated_at", iso_timestamp()}}},
        {"stages", stages},
        {"files",
         {{"check", "check.json"},
          {"matrices_dir", "matrices"},
          {"holonomy", "holonomy.json"},
          {"convergence", "convergence.json"},
          {"trace", "trace.csv"}}}};
    if (!failed_stage.empty()) bundle["failed_stage"] = failed_stage;
    write_json_file(dir / "bundle.json", bundle);
    std::printf("bundle: %s\n", (dir / "bundle.json").string().c_str());
    return exit_code;
  });
}

}  // namespace gossip
