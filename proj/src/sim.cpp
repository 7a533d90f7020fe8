#include "gossip/sim.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "gossip/errors.hpp"

namespace gossip {

SimState step(const SimState& s, Edge e, const LocalMatrixSet& ms) {
  SimState next;
  next.t = s.t + 1;
  next.x = apply(ms.at(e), s.x);
  return next;
}

Scheduler Scheduler::uniform(std::uint64_t seed) {
  Scheduler s;
  s.kind_ = Kind::uniform_random;
  s.rng_.seed(seed);
  return s;
}

Scheduler Scheduler::round_robin() {
  Scheduler s;
  s.kind_ = Kind::round_robin;
  return s;
}

Edge Scheduler::next(const std::vector<Edge>& edges) {
  if (kind_ == Kind::uniform_random) {
    return edges[static_cast<std::size_t>(rng_() % edges.size())];
  }
  const Edge e = edges[cursor_ % edges.size()];
  ++cursor_;
  return e;
}

double cluster_spread(const std::vector<double>& x,
                      const std::vector<int>& cell) {
  double lo = x[cell.front()];
  double hi = lo;
  for (int idx : cell) {
    lo = std::min(lo, x[idx]);
    hi = std::max(hi, x[idx]);
  }
  return hi - lo;
}

RunResult run(const std::vector<double>& x0, const LocalMatrixSet& ms,
              Scheduler sched, const StopRule& stop, long snapshot_stride) {
  if (static_cast<int>(x0.size()) != ms.dim()) {
    throw ConfigError("initial state has length " +
                      std::to_string(x0.size()) + ", expected " +
                      std::to_string(ms.dim()));
  }
  const std::vector<Edge>& edge_list = ms.edge_order();
  if (edge_list.empty()) {
    throw ConfigError("cannot simulate: the matrix set has no edges");
  }

  RunResult result;
  result.trace.snapshot_stride =
      snapshot_stride > 0 ? snapshot_stride
                          : static_cast<long>(edge_list.size());
  result.final_state = SimState{0, x0};
  result.trace.rows.push_back({0, {-1, -1}, x0});

  const auto& cells = ms.partition().cells();
  long calm_steps = 0;  // consecutive steps with every spread below tol
  const long required_calm = static_cast<long>(edge_list.size());

  auto all_spreads_small = [&](const std::vector<double>& x) {
    return std::all_of(cells.begin(), cells.end(), [&](const auto& cell) {
      return cluster_spread(x, cell) < stop.spread_tol;
    });
  };

  for (long t = 1; t <= stop.max_steps; ++t) {
    const Edge e = sched.next(edge_list);
    result.final_state = step(result.final_state, e, ms);
    if (t % result.trace.snapshot_stride == 0 || t == stop.max_steps) {
      result.trace.rows.push_back({t, e, result.final_state.x});
    }
    result.steps = t;
    if (all_spreads_small(result.final_state.x)) {
      if (++calm_steps >= required_calm) {
        result.converged = true;
        if (result.trace.rows.back().t != t) {
          result.trace.rows.push_back({t, e, result.final_state.x});
        }
        break;
      }
    } else {
      calm_steps = 0;
    }
  }
  return result;
}

namespace {

double weighted_average(const std::vector<double>& x, const WeightVector& w,
                        const std::vector<int>& cell) {
  double num = 0.0, den = 0.0;
  for (int idx : cell) {
    num += w[idx] * x[idx];
    den += w[idx];
  }
  return num / den;
}

double weighted_sum(const std::vector<double>& x, const WeightVector& w,
                    const std::vector<int>& cell) {
  double sum = 0.0;
  for (int idx : cell) sum += w[idx] * x[idx];
  return sum;
}

}  // namespace

ConvergenceReport detect_limit_behavior(const RunResult& result,
                                        const IndexPartition& p,
                                        const WeightVector& w,
                                        const std::vector<double>& x0,
                                        double tolerance) {
  ConvergenceReport report;
  report.steps_used = result.steps;
  report.all_converged = true;

  const auto& final_x = result.final_state.x;
  for (std::size_t a = 0; a < p.cells().size(); ++a) {
    const auto& cell = p.cells()[a];
    CellConvergence verdict;
    verdict.name = "pi" + std::to_string(a + 1);
    verdict.cell = cell;
    verdict.final_spread = cluster_spread(final_x, cell);
    verdict.target = weighted_average(x0, w, cell);
    verdict.achieved = weighted_average(final_x, w, cell);
    verdict.converged = verdict.final_spread < tolerance &&
                        std::abs(verdict.achieved - verdict.target) < tolerance;
    const double initial_sum = weighted_sum(x0, w, cell);
    for (const TraceRow& row : result.trace.rows) {
      verdict.max_conservation_drift =
          std::max(verdict.max_conservation_drift,
                   std::abs(weighted_sum(row.x, w, cell) - initial_sum));
    }
    report.all_converged = report.all_converged && verdict.converged;
    report.cells.push_back(std::move(verdict));
  }

  if (!p.pi0().empty()) {
    Pi0Verdict verdict;
    std::vector<double> initial_sorted;
    for (int idx : p.pi0()) initial_sorted.push_back(x0[idx]);
    std::sort(initial_sorted.begin(), initial_sorted.end());

    verdict.multiset_conserved = true;
    for (const TraceRow& row : result.trace.rows) {
      std::vector<double> values;
      for (int idx : p.pi0()) values.push_back(row.x[idx]);
      std::sort(values.begin(), values.end());
      if (values != initial_sorted) {
        verdict.multiset_conserved = false;
        break;
      }
    }

    // Orbit size over a trailing window of snapshots: the number of distinct
    // pi0 tuples the permutation action cycles through.
    const std::size_t window =
        std::min<std::size_t>(result.trace.rows.size(), 16);
    std::set<std::vector<double>> distinct;
    for (std::size_t i = result.trace.rows.size() - window;
         i < result.trace.rows.size(); ++i) {
      std::vector<double> values;
      for (int idx : p.pi0()) values.push_back(result.trace.rows[i].x[idx]);
      distinct.insert(std::move(values));
    }
    verdict.observed_orbit_size = static_cast<int>(distinct.size());
    report.pi0 = verdict;
  }
  return report;
}

}  // namespace gossip
