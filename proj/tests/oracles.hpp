#ifndef GOSSIP_TESTS_ORACLES_HPP
#define GOSSIP_TESTS_ORACLES_HPP

// Brute-force reference implementations, independent of the library's fast
// paths, plus the random instance generators the property tests share.

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "gossip/graph.hpp"
#include "gossip/partition.hpp"
#include "gossip/weights.hpp"

namespace oracles {

using gossip::Edge;
using gossip::Graph;

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  void unite(int a, int b) { parent_[find(a)] = find(b); }
  bool same(int a, int b) { return find(a) == find(b); }

 private:
  std::vector<int> parent_;
};

// Connectivity of an arbitrary node set under an edge list, by union-find.
inline bool connected_by_union_find(const std::vector<int>& nodes,
                                    const std::vector<std::pair<int, int>>& edges) {
  if (nodes.size() <= 1) return true;
  std::map<int, int> slot;
  for (int n : nodes) slot.emplace(n, static_cast<int>(slot.size()));
  UnionFind uf(static_cast<int>(nodes.size()));
  for (const auto& [u, v] : edges) uf.unite(slot.at(u), slot.at(v));
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (!uf.same(0, static_cast<int>(i))) return false;
  }
  return true;
}

// Standalone BFS connectivity over an explicit edge list (ignores `skip`).
inline bool connected_without_edge(int n, const std::vector<Edge>& edges,
                                   int skip) {
  if (n == 0) return true;
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    if (i == skip) continue;
    adj[edges[i].first].push_back(edges[i].second);
    adj[edges[i].second].push_back(edges[i].first);
  }
  std::vector<bool> seen(n, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n;
}

// Edge-deletion oracle: connected, and still connected after removing any
// single edge.
inline bool two_edge_connected_oracle(const Graph& g) {
  const auto& edges = g.edges();
  if (!connected_without_edge(g.num_agents(), edges, -1)) return false;
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    if (!connected_without_edge(g.num_agents(), edges, i)) return false;
  }
  return true;
}

// All directed simple cycles of length >= 3, canonical rotation (smallest
// vertex first), by trying every subset and every ordering of it.
inline std::set<std::vector<int>> enumerate_cycles_oracle(const Graph& g) {
  const int n = g.num_agents();
  std::set<std::vector<int>> found;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> members;
    for (int v = 0; v < n; ++v) {
      if (mask & (1 << v)) members.push_back(v);
    }
    if (members.size() < 3) continue;
    // Fix the smallest member first; permute the rest.
    std::vector<int> rest(members.begin() + 1, members.end());
    std::sort(rest.begin(), rest.end());
    do {
      std::vector<int> cycle{members.front()};
      cycle.insert(cycle.end(), rest.begin(), rest.end());
      bool ok = true;
      for (std::size_t i = 0; i < cycle.size() && ok; ++i) {
        ok = g.has_edge(cycle[i], cycle[(i + 1) % cycle.size()]);
      }
      if (ok) found.insert(cycle);
    } while (std::next_permutation(rest.begin(), rest.end()));
  }
  return found;
}

// Erdos-Renyi-style random graph; may be disconnected or have isolated nodes.
inline Graph random_graph(std::mt19937_64& rng, int n, double edge_prob) {
  std::vector<Edge> edges;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (coin(rng) < edge_prob) edges.emplace_back(u, v);
    }
  }
  return Graph(n, std::move(edges));
}

// Hamiltonian cycle through a random vertex order plus random chords: always
// simple and 2-edge connected for n >= 3.
inline Graph random_two_edge_connected_graph(std::mt19937_64& rng, int n,
                                             double chord_prob = 0.3) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::set<Edge> edges;
  for (int i = 0; i < n; ++i) {
    edges.insert(gossip::make_edge(order[i], order[(i + 1) % n]));
  }
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (coin(rng) < chord_prob) edges.insert({u, v});
    }
  }
  return Graph(n, std::vector<Edge>(edges.begin(), edges.end()));
}

inline gossip::WeightVector random_interior_weights(std::mt19937_64& rng,
                                                    int size) {
  std::uniform_real_distribution<double> entry(0.05, 1.0);
  std::vector<double> raw(size);
  double sum = 0.0;
  for (double& v : raw) sum += (v = entry(rng));
  for (double& v : raw) v /= sum;
  return gossip::WeightVector::normalized(std::move(raw));
}

// Random partition of {0..total-1} into up to max_cells cells (pi0 empty),
// retried until admissible; falls back to the single-cell partition, which is
// admissible whenever g is connected.
inline gossip::IndexPartition random_admissible_partition(
    std::mt19937_64& rng, const Graph& g, const gossip::IndexMap& imap,
    int max_cells = 3, int attempts = 40) {
  const int total = imap.size();
  std::uniform_int_distribution<int> cell_count(1, max_cells);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    const int cells = cell_count(rng);
    std::vector<std::vector<int>> assignment(cells);
    std::uniform_int_distribution<int> pick(0, cells - 1);
    for (int idx = 0; idx < total; ++idx) {
      assignment[pick(rng)].push_back(idx);
    }
    std::erase_if(assignment, [](const auto& c) { return c.empty(); });
    gossip::IndexPartition p({}, assignment, total);
    if (gossip::is_admissible(g, imap, p).admissible) return p;
  }
  std::vector<int> all(total);
  std::iota(all.begin(), all.end(), 0);
  return gossip::IndexPartition({}, {all}, total);
}

}  // namespace oracles

#endif
