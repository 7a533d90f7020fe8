#ifndef GOSSIP_SIM_HPP
#define GOSSIP_SIM_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gossip/realization.hpp"
#include "gossip/tolerances.hpp"

namespace gossip {

struct SimState {
  long t = 0;
  std::vector<double> x;
};

// One gossip step: x <- A_e x. Throws UnknownEdge.
SimState step(const SimState& s, Edge e, const LocalMatrixSet& ms);

// Edge activation order. The uniform scheduler draws the edge index as
// rng() mod |E| from a std::mt19937_64 seeded with the run seed, which makes
// traces reproducible across platforms; round-robin sweeps the config's edge
// list cyclically.
class Scheduler {
 public:
  enum class Kind { uniform_random, round_robin };

  static Scheduler uniform(std::uint64_t seed);
  static Scheduler round_robin();

  Kind kind() const { return kind_; }
  Edge next(const std::vector<Edge>& edges);

 private:
  Kind kind_ = Kind::uniform_random;
  std::mt19937_64 rng_;
  std::size_t cursor_ = 0;
};

struct StopRule {
  long max_steps = 100'000;
  double spread_tol = tol::kSpreadDefault;
  // Convergence is declared once every cell's spread stays below spread_tol
  // for one full sweep of |E| consecutive steps.
};

struct TraceRow {
  long t = 0;
  Edge edge{-1, -1};  // {-1,-1} marks the initial row
  std::vector<double> x;
};

struct Trace {
  long snapshot_stride = 1;
  std::vector<TraceRow> rows;  // t = 0, then every stride steps, then final
};

struct RunResult {
  SimState final_state;
  Trace trace;
  long steps = 0;
  bool converged = false;  // the stop rule fired before max_steps
};

// Applies scheduler-chosen edges until the stop rule fires or max_steps is
// reached. snapshot_stride <= 0 picks the default of |E| steps.
RunResult run(const std::vector<double>& x0, const LocalMatrixSet& ms,
              Scheduler sched, const StopRule& stop, long snapshot_stride = 0);

// max - min of x over the cell's indices.
double cluster_spread(const std::vector<double>& x,
                      const std::vector<int>& cell);

struct CellConvergence {
  std::string name;
  std::vector<int> cell;
  bool converged = false;
  double final_spread = 0.0;
  double target = 0.0;    // weighted average of x0 over the cell
  double achieved = 0.0;  // weighted average of the final state
  // Largest deviation of the cell's conserved weighted sum across recorded
  // snapshots, relative to its initial value.
  double max_conservation_drift = 0.0;
};

struct Pi0Verdict {
  bool multiset_conserved = false;  // sorted pi0 values identical across all
                                    // recorded snapshots (exact)
  int observed_orbit_size = 0;      // distinct pi0 tuples in a trailing window
};

struct ConvergenceReport {
  std::vector<CellConvergence> cells;
  std::optional<Pi0Verdict> pi0;  // present when pi0 is non-empty
  long steps_used = 0;
  bool all_converged = false;
};

// Per-cell verdicts against the weighted-average targets computed from x0,
// plus the permutation-cell checks over the recorded trace.
ConvergenceReport detect_limit_behavior(const RunResult& result,
                                        const IndexPartition& p,
                                        const WeightVector& w,
                                        const std::vector<double>& x0,
                                        double tolerance);

}  // namespace gossip

#endif
