#include <CLI11.hpp>

#include "gossip/commands.hpp"
#include "gossip/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Realize, verify, and simulate gossip processes with "
               "prescribed consensus clusters and averaging weights"};
  app.set_version_flag("--version", gossip::kToolVersion);
  app.require_subcommand(1);

  gossip::CliOptions opt;

  auto add_common = [&](CLI::App* cmd, bool with_matrices) {
    cmd->add_option("--config", opt.config_path, "problem config (JSON)")
        ->required();
    cmd->add_option("--out", opt.out_dir, "output root directory")
        ->capture_default_str();
    cmd->add_option("--seed", opt.seed, "override the config seed");
    cmd->add_option("--max-steps", opt.max_steps,
                    "override the simulation step limit");
    cmd->add_option("--tol", opt.tol, "override the convergence tolerance");
    cmd->add_option("--scheduler", opt.scheduler,
                    "override the edge scheduler (uniform|roundrobin)");
    cmd->add_option("--format", opt.format,
                    "matrix file format (json|csv)")
        ->capture_default_str();
    if (with_matrices) {
      cmd->add_option("--matrices", opt.matrices_dir,
                      "directory of previously realized matrices "
                      "(default: realize in memory)");
    }
  };

  CLI::App* check =
      app.add_subcommand("check", "topology and partition admissibility");
  add_common(check, false);
  CLI::App* realize =
      app.add_subcommand("realize", "construct the local stochastic matrices");
  add_common(realize, false);
  CLI::App* verify =
      app.add_subcommand("verify", "verify w-holonomy over all cycles");
  add_common(verify, true);
  CLI::App* simulate =
      app.add_subcommand("simulate", "run the gossip process to consensus");
  add_common(simulate, true);
  CLI::App* all =
      app.add_subcommand("all", "check, realize, verify, and simulate");
  add_common(all, false);

  CLI11_PARSE(app, argc, argv);

  if (check->parsed()) return gossip::cmd_check(opt);
  if (realize->parsed()) return gossip::cmd_realize(opt);
  if (verify->parsed()) return gossip::cmd_verify(opt);
  if (simulate->parsed()) return gossip::cmd_simulate(opt);
  if (all->parsed()) return gossip::cmd_all(opt);
  return gossip::kExitConfigError;
}
