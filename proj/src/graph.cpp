#include "gossip/graph.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <string>

#include "gossip/errors.hpp"

namespace gossip {

bool check_simple(int num_agents, const std::vector<Edge>& edges) {
  std::set<Edge> seen;
  for (const auto& [u, v] : edges) {
    if (u == v) return false;
    if (u < 0 || v < 0 || u >= num_agents || v >= num_agents) return false;
    if (!seen.insert(make_edge(u, v)).second) return false;
  }
  return true;
}

bool check_simple(const Graph& g) {
  return check_simple(g.num_agents(), g.edges());
}

Graph::Graph(int num_agents, std::vector<Edge> edges) : num_agents_(num_agents) {
  if (num_agents <= 0) {
    throw ConfigError("num_agents must be positive, got " +
                      std::to_string(num_agents));
  }
  edges_.reserve(edges.size());
  for (const auto& [u, v] : edges) edges_.push_back(make_edge(u, v));
  if (!check_simple(num_agents_, edges_)) {
    throw ConfigError(
        "edge list is not simple: self-loop, duplicate edge, or agent id out "
        "of range");
  }
  adjacency_.assign(num_agents_, {});
  for (const auto& [u, v] : edges_) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= num_agents_ || v >= num_agents_) return false;
  const auto& nbrs = adjacency_[u];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

bool is_connected(const Graph& g) {
  const int n = g.num_agents();
  if (n == 0) return true;
  std::vector<bool> visited(n, false);
  std::vector<int> stack{0};
  visited[0] = true;
  int count = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : g.adjacency()[v]) {
      if (!visited[w]) {
        visited[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n;
}

std::vector<Edge> find_bridges(const Graph& g) {
  const int n = g.num_agents();
  std::vector<int> discovery(n, -1), low(n, -1);
  std::vector<Edge> bridges;
  int tick = 0;

  // Parent edge is excluded by id, so parallel-free simple graphs are fine.
  std::function<void(int, int)> dfs = [&](int v, int parent) {
    discovery[v] = low[v] = tick++;
    bool skipped_parent = false;
    for (int w : g.adjacency()[v]) {
      if (w == parent && !skipped_parent) {
        skipped_parent = true;
        continue;
      }
      if (discovery[w] == -1) {
        dfs(w, v);
        low[v] = std::min(low[v], low[w]);
        if (low[w] > discovery[v]) bridges.push_back(make_edge(v, w));
      } else {
        low[v] = std::min(low[v], discovery[w]);
      }
    }
  };

  for (int v = 0; v < n; ++v) {
    if (discovery[v] == -1) dfs(v, -1);
  }
  std::sort(bridges.begin(), bridges.end());
  return bridges;
}

bool check_two_edge_connected(const Graph& g) {
  return is_connected(g) && find_bridges(g).empty();
}

DirectedCycle::DirectedCycle(std::vector<int> vertices)
    : vertices_(std::move(vertices)) {
  if (vertices_.size() < 3) {
    throw ConfigError("cycle must have length >= 3, got " +
                      std::to_string(vertices_.size()));
  }
  std::set<int> distinct(vertices_.begin(), vertices_.end());
  if (distinct.size() != vertices_.size()) {
    throw ConfigError("cycle repeats a vertex");
  }
  // Canonical rotation: smallest agent id first.
  const auto lowest = std::min_element(vertices_.begin(), vertices_.end());
  std::rotate(vertices_.begin(), lowest, vertices_.end());
}

DirectedCycle DirectedCycle::reversed() const {
  std::vector<int> rev(vertices_.rbegin(), vertices_.rend());
  return DirectedCycle(std::move(rev));
}

std::vector<int> DirectedCycle::rotated(int offset) const {
  std::vector<int> out(vertices_);
  std::rotate(out.begin(), out.begin() + (offset % length()), out.end());
  return out;
}

std::vector<Edge> DirectedCycle::edge_sequence() const {
  std::vector<Edge> seq;
  seq.reserve(vertices_.size());
  for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
    seq.push_back(make_edge(vertices_[i], vertices_[i + 1]));
  }
  seq.push_back(make_edge(vertices_.back(), vertices_.front()));
  return seq;
}

bool cycle_respects_graph(const DirectedCycle& c, const Graph& g) {
  const auto& vs = c.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (!g.has_edge(vs[i], vs[(i + 1) % vs.size()])) return false;
  }
  return true;
}

namespace {

// Elementary circuit search in the bidirectionalized digraph, one start
// vertex at a time over the subgraph of vertices >= start. Each directed
// simple cycle is produced exactly once, smallest vertex first, which is
// already the canonical rotation. Length-2 circuits (edge back-and-forth)
// are counted as found for the blocking bookkeeping but not emitted.
class CircuitSearch {
 public:
  CircuitSearch(const Graph& g, std::size_t cap) : graph_(g), cap_(cap) {}

  std::vector<DirectedCycle> run() {
    const int n = graph_.num_agents();
    blocked_.assign(n, false);
    block_lists_.assign(n, {});
    for (start_ = 0; start_ < n; ++start_) {
      std::fill(blocked_.begin(), blocked_.end(), false);
      for (auto& lst : block_lists_) lst.clear();
      path_.clear();
      circuit(start_);
    }
    return std::move(found_);
  }

 private:
  bool circuit(int v) {
    bool found_through_v = false;
    path_.push_back(v);
    blocked_[v] = true;
    for (int w : graph_.adjacency()[v]) {
      if (w < start_) continue;  // subgraph on vertices >= start
      if (w == start_) {
        if (path_.size() >= 3) emit();
        found_through_v = true;
      } else if (!blocked_[w]) {
        if (circuit(w)) found_through_v = true;
      }
    }
    if (found_through_v) {
      unblock(v);
    } else {
      for (int w : graph_.adjacency()[v]) {
        if (w < start_) continue;
        auto& lst = block_lists_[w];
        if (std::find(lst.begin(), lst.end(), v) == lst.end())
          lst.push_back(v);
      }
    }
    path_.pop_back();
    return found_through_v;
  }

  void unblock(int v) {
    blocked_[v] = false;
    auto pending = std::move(block_lists_[v]);
    block_lists_[v].clear();
    for (int w : pending) {
      if (blocked_[w]) unblock(w);
    }
  }

  void emit() {
    if (found_.size() >= cap_) {
      throw CycleExplosion(cap_, found_.size() + 1);
    }
    found_.emplace_back(path_);
  }

  const Graph& graph_;
  std::size_t cap_;
  int start_ = 0;
  std::vector<int> path_;
  std::vector<bool> blocked_;
  std::vector<std::vector<int>> block_lists_;
  std::vector<DirectedCycle> found_;
};

}  // namespace

std::vector<DirectedCycle> enumerate_cycles(
    const Graph& g, const CycleEnumerationOptions& options) {
  auto cycles = CircuitSearch(g, options.cap).run();
  std::sort(cycles.begin(), cycles.end());
  return cycles;
}

bool node_coverage(const std::vector<DirectedCycle>& cycles, const Graph& g) {
  std::vector<bool> covered(g.num_agents(), false);
  for (const auto& c : cycles) {
    for (int v : c.vertices()) covered[v] = true;
  }
  return std::all_of(covered.begin(), covered.end(), [](bool b) { return b; });
}

}  // namespace gossip
