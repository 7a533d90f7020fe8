#ifndef GOSSIP_PARTITION_HPP
#define GOSSIP_PARTITION_HPP

#include <string>
#include <utility>
#include <vector>

#include "gossip/graph.hpp"

namespace gossip {

// Layout of the nm state-vector indices over agents: agent a (0-based) owns
// the contiguous block [a*m, (a+1)*m).
struct IndexMap {
  int num_agents = 0;        // n
  int entries_per_agent = 0; // m

  int size() const { return num_agents * entries_per_agent; }
  int flat(int agent, int entry) const {
    return agent * entries_per_agent + entry;
  }
  int owner(int index) const { return index / entries_per_agent; }
  int entry_of(int index) const { return index % entries_per_agent; }

  // Range-checked 1-based forms of the same maps; throw ConfigError on
  // out-of-range coordinates.
  int psi(int agent1, int entry1) const;
  int agent_of(int index1) const;
};

// The index mapping in the 1-based notation used by config files and the
// usual presentation: psi(i, k) = (i-1)m + k, agent_of = ceil(index/m).
inline int psi(int agent1, int entry1, int entries_per_agent) {
  return (agent1 - 1) * entries_per_agent + entry1;
}
inline int agent_of(int index1, int entries_per_agent) {
  return (index1 + entries_per_agent - 1) / entries_per_agent;
}

// Partition of {0..nm-1} into a distinguished (possibly empty) permutation
// cell pi0 and non-empty consensus cells pi_1..pi_ell. Cells are stored
// sorted ascending. Immutable after construction.
class IndexPartition {
 public:
  // throws ConfigError unless the cells are disjoint, non-empty (pi0 may be
  // empty), and jointly cover {0..total-1}.
  IndexPartition(std::vector<int> pi0, std::vector<std::vector<int>> cells,
                 int total);

  const std::vector<int>& pi0() const { return pi0_; }
  const std::vector<std::vector<int>>& cells() const { return cells_; }
  int total() const { return total_; }

  // 0 for pi0 membership, a >= 1 for cells()[a-1].
  int cell_of(int index) const { return cell_of_[index]; }

  // All indices outside pi0, ascending.
  const std::vector<int>& complement_of_pi0() const { return complement_; }

 private:
  std::vector<int> pi0_;
  std::vector<std::vector<int>> cells_;
  std::vector<int> cell_of_;
  std::vector<int> complement_;
  int total_ = 0;
};

enum class DerivedEdgeKind { same_agent, network };

struct DerivedEdge {
  int u = 0;  // global indices, u < v
  int v = 0;
  DerivedEdgeKind kind = DerivedEdgeKind::same_agent;
  bool operator==(const DerivedEdge&) const = default;
};

// Graph on the indices of one cell. Edge multiset keeps the origin rule of
// every edge; connectivity questions collapse multiplicity.
struct DerivedGraph {
  std::vector<int> nodes;  // ascending
  std::vector<DerivedEdge> edges;
};

// Both rules: same-agent pairs and pairs whose owning agents share an edge.
DerivedGraph derived_graph(const Graph& g, const IndexMap& imap,
                           const std::vector<int>& cell);

// Network-rule edges only: exactly the index pairs the local-matrix
// construction can ever couple.
DerivedGraph realized_mixing_graph(const Graph& g, const IndexMap& imap,
                                   const std::vector<int>& cell);

// Multiplicity-blind connectivity. Empty and singleton node sets count as
// connected.
bool derived_connected(const DerivedGraph& d);

// Edges of a breadth-first spanning tree when connected, else empty.
std::vector<std::pair<int, int>> spanning_tree(const DerivedGraph& d);

struct CellVerdict {
  std::string name;  // "pi0", "pi1", ...
  std::vector<int> cell;
  DerivedGraph derived;
  bool derived_connected = false;
  DerivedGraph realized;
  bool realized_connected = false;
  std::vector<std::pair<int, int>> tree;  // spanning tree of the derived graph
};

struct AdmissibilityReport {
  std::vector<CellVerdict> cells;  // pi0 first, then pi1..pi_ell
  bool admissible = false;         // every derived graph connected
  // Cells that pass the derived-graph test but whose realized mixing graph is
  // disconnected: the construction never couples them fully.
  std::vector<std::string> warnings;
};

AdmissibilityReport is_admissible(const Graph& g, const IndexMap& imap,
                                  const IndexPartition& p);

}  // namespace gossip

#endif
