#ifndef GOSSIP_GRAPH_HPP
#define GOSSIP_GRAPH_HPP

#include <cstddef>
#include <utility>
#include <vector>

namespace gossip {

// Unordered agent pair, stored with first < second. Agents are 0-based
// internally; the JSON boundary converts from the 1-based file format.
using Edge = std::pair<int, int>;

inline Edge make_edge(int u, int v) {
  return u < v ? Edge{u, v} : Edge{v, u};
}

// Validates a raw edge list before Graph construction: endpoints in range,
// no self-loops, no duplicate edges.
bool check_simple(int num_agents, const std::vector<Edge>& edges);

class Graph;

// Construction already enforces simplicity, so this re-check is for callers
// validating ingested data through the same predicate.
bool check_simple(const Graph& g);

// Undirected simple network of agents. Immutable after construction; the
// edge list keeps its input order (the round-robin scheduler sweeps it).
class Graph {
 public:
  Graph(int num_agents, std::vector<Edge> edges);  // throws ConfigError

  int num_agents() const { return num_agents_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::vector<int>>& adjacency() const { return adjacency_; }
  bool has_edge(int u, int v) const;

 private:
  int num_agents_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
};

bool is_connected(const Graph& g);

// Bridges by depth-first low-link traversal.
std::vector<Edge> find_bridges(const Graph& g);

// Connected and bridge-free. A disconnected graph returns false.
bool check_two_edge_connected(const Graph& g);

// Directed simple cycle of length >= 3, stored in canonical rotation with the
// smallest agent first. A cycle and its reversal are distinct values.
class DirectedCycle {
 public:
  explicit DirectedCycle(std::vector<int> vertices);  // throws ConfigError

  const std::vector<int>& vertices() const { return vertices_; }
  int length() const { return static_cast<int>(vertices_.size()); }

  DirectedCycle reversed() const;

  // Rotation of the vertex list starting at position `offset`; same cycle
  // class, different basepoint.
  std::vector<int> rotated(int offset) const;

  // Consecutive pairs including the closing edge, as normalized Edge values,
  // in traversal order e_1 .. e_k.
  std::vector<Edge> edge_sequence() const;

  bool operator==(const DirectedCycle&) const = default;
  auto operator<=>(const DirectedCycle&) const = default;

 private:
  std::vector<int> vertices_;
};

// True when every consecutive pair (and last->first) is an edge of g.
bool cycle_respects_graph(const DirectedCycle& c, const Graph& g);

struct CycleEnumerationOptions {
  std::size_t cap = 1'000'000;
};

// Every directed simple cycle of length >= 3 in the bidirectionalized graph,
// one canonical representative per cyclic-rotation class. Both orientations
// of each undirected cycle appear; back-and-forth 2-cycles do not.
// Throws CycleExplosion past options.cap.
std::vector<DirectedCycle> enumerate_cycles(
    const Graph& g, const CycleEnumerationOptions& options = {});

// True when every agent of g appears in at least one of the cycles.
bool node_coverage(const std::vector<DirectedCycle>& cycles, const Graph& g);

}  // namespace gossip

#endif
