#ifndef GOSSIP_REALIZATION_HPP
#define GOSSIP_REALIZATION_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gossip/graph.hpp"
#include "gossip/matrix.hpp"
#include "gossip/partition.hpp"
#include "gossip/tolerances.hpp"
#include "gossip/weights.hpp"

namespace gossip {

struct BetaPair {
  double beta1 = 0.0;  // applies to the first index's row
  double beta2 = 0.0;
};

// beta2 = theta*min(1, 1/r), beta1 = r*beta2: both land in (0,1) with
// beta1/beta2 = r for any r > 0 and theta in (0,1).
BetaPair default_betas(double r, double theta);

// How betas are chosen for each coupled pair: the theta rule by default,
// exact per-pair overrides when the config pins them.
struct BetaPolicy {
  double theta = 0.5;
  double ratio_tol = tol::kRatioDefault;
  // Keyed by ordered pair of global indices (p, q); beta1 acts on p's row.
  // A lookup for (q, p) matches with the betas swapped.
  std::map<std::pair<int, int>, BetaPair> overrides;

  BetaPair select(int p, int q, double alpha_p, double alpha_q) const;
};

// The nm x nm matrix equal to identity except the 2x2 principal block on
// rows/columns {p, q}:
//   [ 1-beta1  beta1  ]
//   [ beta2    1-beta2 ]
// Throws IndexCollision when p == q and RatioViolation when
// |alpha_p*beta1 - alpha_q*beta2| exceeds ratio_tol.
Matrix rate_matrix(const IndexMap& imap, const WeightVector& w, int p, int q,
                   BetaPair betas, double ratio_tol = tol::kRatioDefault);

// Permutation of pi0 indices attached to one edge, as index -> image.
using IndexPermutation = std::map<int, int>;

// Where permutation blocks go. Default policy: on every edge whose two agents
// both own pi0 indices, swap the two lowest pi0 indices they own, skipping
// edges where the swapped weights are equal (the swap would fix the induced
// subvector). Explicit placements come from the config in cycle notation.
struct PermutationSpec {
  bool use_default = true;
  std::map<Edge, IndexPermutation> per_edge;  // used when !use_default

  static PermutationSpec defaults() { return {}; }
  static PermutationSpec explicit_spec(std::map<Edge, IndexPermutation> m) {
    return {false, std::move(m)};
  }
};

// Per-edge permutations after applying the policy. Validates explicit specs
// (indices must lie in pi0 and belong to the edge's agents; the placed
// permutation must move the induced weights). Throws PermutationFixesWeight
// when pi0 is non-empty and no valid non-identity placement results.
std::map<Edge, IndexPermutation> resolve_permutations(
    const Graph& g, const IndexMap& imap, const IndexPartition& p,
    const WeightVector& w, const PermutationSpec& spec);

struct LocalBuild {
  Matrix matrix;
  std::vector<Matrix> factors;      // the rate matrices, in loop order
  int coupled_pairs = 0;            // pairs passing the cell-membership test
  bool permutation_placed = false;
  std::vector<int> permuted_indices;
  double ratio_residual = 0.0;      // sum of |alpha_p*b1 - alpha_q*b2|
  bool no_coupling = false;         // identity matrix, flagged not fatal
};

// One local matrix for `edge`: the ordered product of rate matrices over all
// (cell, entry-of-i, entry-of-j) triples whose two indices share a cell,
// then the optional permutation block on pi0 indices of the edge's agents.
LocalBuild build_local_matrix(const Graph& g, const IndexMap& imap,
                              const IndexPartition& p, const WeightVector& w,
                              Edge edge, const BetaPolicy& betas,
                              const IndexPermutation* perm);

// One matrix per undirected edge plus the inputs it was built from.
// Immutable after construction; reconstructable from files for verification.
class LocalMatrixSet {
 public:
  // edge_order fixes the sweep order for round-robin scheduling (the config's
  // edge list); when empty it defaults to the map's key order.
  LocalMatrixSet(IndexMap imap, IndexPartition partition, WeightVector w,
                 std::map<Edge, Matrix> matrices,
                 std::vector<std::string> warnings = {},
                 std::vector<Edge> edge_order = {});

  const Matrix& at(Edge e) const;  // throws UnknownEdge; at(u,v) == at(v,u)
  bool contains(Edge e) const;
  const std::map<Edge, Matrix>& matrices() const { return matrices_; }
  const std::vector<Edge>& edge_order() const { return edge_order_; }
  const IndexMap& index_map() const { return imap_; }
  const IndexPartition& partition() const { return partition_; }
  const WeightVector& weights() const { return w_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  int dim() const { return imap_.size(); }

  // A copy with one matrix swapped out (negative-control experiments).
  LocalMatrixSet with_replaced(Edge e, Matrix m) const;

 private:
  IndexMap imap_;
  IndexPartition partition_;
  WeightVector w_;
  std::map<Edge, Matrix> matrices_;
  std::vector<std::string> warnings_;
  std::vector<Edge> edge_order_;
};

// Full realization over every edge of g. Preconditions checked here: g must
// be simple (structural) and 2-edge connected, the partition admissible, and
// w strictly interior (structural). Throws RealizationError or
// PermutationFixesWeight.
LocalMatrixSet realize_all(const Graph& g, const IndexMap& imap,
                           const IndexPartition& p, const WeightVector& w,
                           const BetaPolicy& betas,
                           const PermutationSpec& perms);

}  // namespace gossip

#endif
