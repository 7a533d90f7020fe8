#include "gossip/partition.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <string>

#include "gossip/errors.hpp"

namespace gossip {

int IndexMap::psi(int agent1, int entry1) const {
  if (agent1 < 1 || agent1 > num_agents) {
    throw ConfigError("agent id " + std::to_string(agent1) + " outside 1.." +
                      std::to_string(num_agents));
  }
  if (entry1 < 1 || entry1 > entries_per_agent) {
    throw ConfigError("entry index " + std::to_string(entry1) +
                      " outside 1.." + std::to_string(entries_per_agent));
  }
  return (agent1 - 1) * entries_per_agent + entry1;
}

int IndexMap::agent_of(int index1) const {
  if (index1 < 1 || index1 > size()) {
    throw ConfigError("global index " + std::to_string(index1) +
                      " outside 1.." + std::to_string(size()));
  }
  return (index1 + entries_per_agent - 1) / entries_per_agent;
}

IndexPartition::IndexPartition(std::vector<int> pi0,
                               std::vector<std::vector<int>> cells, int total)
    : pi0_(std::move(pi0)), cells_(std::move(cells)), total_(total) {
  if (total_ <= 0) {
    throw ConfigError("partition total must be positive");
  }
  cell_of_.assign(total_, -1);
  auto place = [&](const std::vector<int>& cell, int label,
                   const std::string& name) {
    for (int idx : cell) {
      if (idx < 0 || idx >= total_) {
        throw ConfigError("partition cell " + name + " holds index " +
                          std::to_string(idx + 1) + " outside 1.." +
                          std::to_string(total_));
      }
      if (cell_of_[idx] != -1) {
        throw ConfigError("partition cells overlap at index " +
                          std::to_string(idx + 1));
      }
      cell_of_[idx] = label;
    }
  };
  place(pi0_, 0, "pi0");
  for (std::size_t a = 0; a < cells_.size(); ++a) {
    if (cells_[a].empty()) {
      throw ConfigError("partition cell pi" + std::to_string(a + 1) +
                        " is empty");
    }
    place(cells_[a], static_cast<int>(a) + 1, "pi" + std::to_string(a + 1));
  }
  for (int idx = 0; idx < total_; ++idx) {
    if (cell_of_[idx] == -1) {
      throw ConfigError("partition misses index " + std::to_string(idx + 1));
    }
  }
  std::sort(pi0_.begin(), pi0_.end());
  for (auto& cell : cells_) std::sort(cell.begin(), cell.end());
  for (int idx = 0; idx < total_; ++idx) {
    if (cell_of_[idx] != 0) complement_.push_back(idx);
  }
}

namespace {

DerivedGraph build_derived(const Graph& g, const IndexMap& imap,
                           const std::vector<int>& cell, bool include_rule1) {
  DerivedGraph d;
  d.nodes = cell;
  std::sort(d.nodes.begin(), d.nodes.end());
  for (std::size_t a = 0; a < d.nodes.size(); ++a) {
    for (std::size_t b = a + 1; b < d.nodes.size(); ++b) {
      const int u = d.nodes[a];
      const int v = d.nodes[b];
      const int owner_u = imap.owner(u);
      const int owner_v = imap.owner(v);
      if (owner_u == owner_v) {
        if (include_rule1)
          d.edges.push_back({u, v, DerivedEdgeKind::same_agent});
      } else if (g.has_edge(owner_u, owner_v)) {
        d.edges.push_back({u, v, DerivedEdgeKind::network});
      }
    }
  }
  return d;
}

}  // namespace

DerivedGraph derived_graph(const Graph& g, const IndexMap& imap,
                           const std::vector<int>& cell) {
  return build_derived(g, imap, cell, /*include_rule1=*/true);
}

DerivedGraph realized_mixing_graph(const Graph& g, const IndexMap& imap,
                                   const std::vector<int>& cell) {
  return build_derived(g, imap, cell, /*include_rule1=*/false);
}

bool derived_connected(const DerivedGraph& d) {
  if (d.nodes.size() <= 1) return true;
  std::map<int, std::vector<int>> adj;
  for (int n : d.nodes) adj[n];
  for (const auto& e : d.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::set<int> visited;
  std::queue<int> frontier;
  frontier.push(d.nodes.front());
  visited.insert(d.nodes.front());
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop();
    for (int w : adj[v]) {
      if (visited.insert(w).second) frontier.push(w);
    }
  }
  return visited.size() == d.nodes.size();
}

std::vector<std::pair<int, int>> spanning_tree(const DerivedGraph& d) {
  if (d.nodes.size() <= 1) return {};
  std::map<int, std::vector<int>> adj;
  for (int n : d.nodes) adj[n];
  for (const auto& e : d.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& [_, nbrs] : adj) std::sort(nbrs.begin(), nbrs.end());
  std::set<int> visited{d.nodes.front()};
  std::queue<int> frontier;
  frontier.push(d.nodes.front());
  std::vector<std::pair<int, int>> tree;
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop();
    for (int w : adj[v]) {
      if (visited.insert(w).second) {
        tree.emplace_back(std::min(v, w), std::max(v, w));
        frontier.push(w);
      }
    }
  }
  if (visited.size() != d.nodes.size()) return {};
  return tree;
}

AdmissibilityReport is_admissible(const Graph& g, const IndexMap& imap,
                                  const IndexPartition& p) {
  AdmissibilityReport report;
  report.admissible = true;

  auto add_cell = [&](const std::string& name, const std::vector<int>& cell) {
    CellVerdict verdict;
    verdict.name = name;
    verdict.cell = cell;
    verdict.derived = derived_graph(g, imap, cell);
    verdict.derived_connected = derived_connected(verdict.derived);
    verdict.realized = realized_mixing_graph(g, imap, cell);
    verdict.realized_connected = derived_connected(verdict.realized);
    verdict.tree = spanning_tree(verdict.derived);
    report.admissible = report.admissible && verdict.derived_connected;
    if (verdict.derived_connected && !verdict.realized_connected) {
      report.warnings.push_back(
          "cell " + name +
          " is derived-graph connected but its realized mixing graph is "
          "disconnected: local matrices only couple entries across network "
          "edges, so the construction cannot mix this whole cell");
    }
    report.cells.push_back(std::move(verdict));
  };

  add_cell("pi0", p.pi0());
  for (std::size_t a = 0; a < p.cells().size(); ++a) {
    add_cell("pi" + std::to_string(a + 1), p.cells()[a]);
  }
  return report;
}

}  // namespace gossip
